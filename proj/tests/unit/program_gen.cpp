#include "program_gen.hpp"

#include <random>
#include <sstream>
#include <vector>

namespace absint::testing {

namespace {

class Gen {
 public:
  explicit Gen(std::uint32_t seed, int budget) : rng_(seed), budget_(budget) {}

  std::string program() {
    std::ostringstream out;
    const bool helper = pick(3) == 0;
    if (helper) {
      out << "int twice(int a) {\n  if (a > 1000) {\n    return a;\n  }\n  return a + a;\n}\n\n";
      helper_ = true;
      budget_ -= 3;
    }
    out << "int main() {\n";
    scopes_.push_back({});
    block(out, 1, true, 0);
    out << "}\n";
    return out.str();
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::vector<std::string> visible() const {
    std::vector<std::string> v;
    for (const auto& s : scopes_) v.insert(v.end(), s.begin(), s.end());
    return v;
  }

  std::string literal() {
    static const char* small[] = {"0", "1", "2", "3", "-1", "7"};
    static const char* large[] = {"1000", "65536", "2147483647", "-2147483647"};
    return pick(7) == 0 ? large[pick(4)] : small[pick(6)];
  }

  std::string atom(bool straight) {
    auto vars = visible();
    int r = pick(10);
    if (straight && rands_ < 3 && r == 0) {
      ++rands_;
      int lo = pick(5);
      int hi = lo + pick(5 - lo);
      return "rand(" + std::to_string(lo) + ", " + std::to_string(hi) + ")";
    }
    if (!vars.empty() && r < 6) return vars[static_cast<std::size_t>(pick(static_cast<int>(vars.size())))];
    return literal();
  }

  std::string arith(int depth, bool straight) {
    if (depth == 0 || pick(3) == 0) return atom(straight);
    static const char* ops[] = {"+", "+", "+", "-", "-", "-", "*", "*", "/", "%"};
    return "(" + arith(depth - 1, straight) + " " + ops[pick(10)] + " " + arith(depth - 1, straight) + ")";
  }

  std::string cond(bool straight) {
    static const char* cmps[] = {"<", "<=", "==", "!=", ">", ">="};
    std::string c = arith(1, straight) + " " + cmps[pick(6)] + " " + arith(1, straight);
    if (pick(5) == 0) c = "(" + c + ") && (" + arith(1, straight) + " " + cmps[pick(6)] + " " + atom(straight) + ")";
    return c;
  }

  std::string fresh() { return "v" + std::to_string(next_var_++); }

  void block(std::ostringstream& out, int indent, bool straight, int depth) {
    int n = depth == 0 ? budget_ : 1 + pick(4);
    for (int i = 0; i < n && budget_ > 0; ++i) stmt(out, indent, straight, depth);
  }

  void stmt(std::ostringstream& out, int indent, bool straight, int depth) {
    --budget_;
    std::string pad(static_cast<std::size_t>(2 * indent), ' ');
    auto vars = visible();
    int r = pick(12);
    if (vars.empty() || r < 3) {
      std::string v = fresh();
      out << pad << "int " << v << " = " << arith(2, straight) << ";\n";
      scopes_.back().push_back(v);
      return;
    }
    std::string target = vars[static_cast<std::size_t>(pick(static_cast<int>(vars.size())))];
    if (r < 6) {
      out << pad << target << " = " << arith(2, straight) << ";\n";
    } else if (r < 8 && depth < 2) {
      out << pad << "if (" << cond(straight) << ") {\n";
      scopes_.push_back({});
      block(out, indent + 1, straight, depth + 1);
      scopes_.pop_back();
      out << pad << "}";
      if (pick(2) == 0 && budget_ > 0) {
        out << " else {\n";
        scopes_.push_back({});
        block(out, indent + 1, straight, depth + 1);
        scopes_.pop_back();
        out << pad << "}";
      }
      out << "\n";
    } else if (r < 10 && depth < 2 && budget_ >= 2) {
      budget_ -= 2;  // counter declaration and increment
      std::string i = "i" + std::to_string(next_var_++);
      out << pad << "int " << i << " = 0;\n";
      out << pad << "while (" << i << " < " << pick(4) << ") {\n";
      scopes_.push_back({});
      block(out, indent + 1, false, depth + 1);
      scopes_.pop_back();
      out << pad << "  " << i << " = " << i << " + 1;\n";
      out << pad << "}\n";
    } else if (r == 10) {
      out << pad << "assert(" << cond(straight) << ");\n";
    } else if (helper_) {
      out << pad << target << " = twice(" << arith(1, straight) << ");\n";
    } else {
      out << pad << target << " = " << target << " + " << atom(straight) << ";\n";
    }
  }

  std::mt19937 rng_;
  int budget_;
  int rands_ = 0;
  int next_var_ = 0;
  bool helper_ = false;
  std::vector<std::vector<std::string>> scopes_;
};

}  // namespace

std::string random_program(std::uint32_t seed, int max_statements) {
  return Gen(seed, max_statements).program();
}

}  // namespace absint::testing
