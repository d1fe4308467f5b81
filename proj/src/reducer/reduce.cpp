#include "absint/reducer/reduce.hpp"

#include <atomic>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>

#include "absint/frontend/parser.hpp"
#include "absint/frontend/printer.hpp"

namespace absint::reducer {

using frontend::Block;
using frontend::Program;

const char* to_string(Granularity g) {
  switch (g) {
    case Granularity::functions: return "functions";
    case Granularity::statements: return "statements";
    case Granularity::tokens: return "tokens";
  }
  return "?";
}

double ReductionResult::reduction_percent() const {
  if (original_lines == 0) return 0;
  return 100.0 * (1.0 - static_cast<double>(reduced_lines) / static_cast<double>(original_lines));
}

namespace {

class Reducer {
 public:
  Reducer(std::string file, const TextOracle& oracle, const ReduceOptions& opts)
      : file_(std::move(file)), oracle_(oracle), opts_(opts) {}

  // Parsed and pretty-printed form, or nullopt when the text does not parse.
  std::optional<std::string> normalize(const std::string& text) const {
    try {
      Program p = frontend::parse(text, file_);
      return print(p);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  std::string print(const Program& p) const {
    frontend::PrintOptions po;
    po.line_markers = opts_.preserve_lines;
    return frontend::print_program(p, po);
  }

  bool interesting(const std::string& raw) {
    auto text = normalize(raw);
    if (!text) {
      ++rejects_;
      return false;
    }
    {
      std::lock_guard lk(mu_);
      if (auto it = seen_.find(*text); it != seen_.end()) return it->second;
    }
    ++calls_;
    bool r = oracle_(*text);
    std::lock_guard lk(mu_);
    seen_.emplace(*text, r);
    return r;
  }

  // One ddmin pass; returns the reduced normalized text.
  std::string pass(const std::string& text, Granularity g, PassRecord& rec) {
    std::function<std::string(const Subset&)> build;
    std::size_t n = 0;
    Program prog = frontend::parse(text, file_);
    std::vector<frontend::Token> toks;

    switch (g) {
      case Granularity::functions:
        n = prog.functions.size();
        build = [&](const Subset& keep) {
          Program p;
          p.entry = prog.entry;
          for (std::size_t i : keep) p.functions.push_back(prog.functions[i]);
          return print(p);
        };
        break;
      case Granularity::statements: {
        std::vector<std::size_t> ids;
        for (const auto& f : prog.functions)
          frontend::for_each_stmt(f.body, [&](const frontend::Stmt& s) { ids.push_back(s.id); });
        n = ids.size();
        build = [&, ids](const Subset& keep) {
          std::set<std::size_t> kept;
          for (std::size_t i : keep) kept.insert(ids[i]);
          Program p = prog;
          for (auto& f : p.functions) f.body = filter(f.body, kept);
          return print(p);
        };
        break;
      }
      case Granularity::tokens: {
        for (auto& t : frontend::tokenize(text, file_))
          if (t.kind != frontend::Token::Kind::end) toks.push_back(t);
        std::vector<std::size_t> unit_tok;
        for (std::size_t i = 0; i < toks.size(); ++i)
          if (toks[i].kind != frontend::Token::Kind::line_directive) unit_tok.push_back(i);
        n = unit_tok.size();
        build = [&, unit_tok](const Subset& keep) {
          std::vector<char> on(toks.size(), 0);
          for (std::size_t i = 0; i < toks.size(); ++i)
            if (toks[i].kind == frontend::Token::Kind::line_directive) on[i] = 1;
          for (std::size_t k : keep) on[unit_tok[k]] = 1;
          return join_tokens(toks, on);
        };
        break;
      }
    }
    rec.granularity = g;
    rec.units_before = n;
    DdminOptions dopts;
    dopts.parallel = opts_.parallel;
    DdminResult r;
    try {
      r = ddmin(n, [&](const Subset& s) { return interesting(build(s)); }, dopts);
    } catch (const ReductionError&) {
      // The unit split does not round-trip to an interesting text; skip.
      rec.units_after = n;
      rec.lines_after = frontend::count_lines(text);
      return text;
    }
    rec.units_after = r.units.size();
    std::string out = *normalize(build(r.units));
    rec.lines_after = frontend::count_lines(out);
    return out;
  }

  std::size_t calls() const { return calls_; }
  std::size_t rejects() const { return rejects_; }

 private:
  static Block filter(const Block& b, const std::set<std::size_t>& kept) {
    Block out;
    for (const auto& s : b) {
      if (!kept.count(s->id)) continue;
      auto c = std::make_shared<frontend::Stmt>(*s);
      c->then_block = filter(s->then_block, kept);
      c->else_block = filter(s->else_block, kept);
      out.push_back(std::move(c));
    }
    return out;
  }

  // Tokens keep their relative line structure; directives sit on their own line.
  static std::string join_tokens(const std::vector<frontend::Token>& toks,
                                 const std::vector<char>& on) {
    std::string out;
    int line = -1;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (!on[i]) continue;
      const auto& t = toks[i];
      if (t.kind == frontend::Token::Kind::line_directive) {
        if (!out.empty() && out.back() != '\n') out += "\n";
        out += t.text + "\n";
        line = -1;
        continue;
      }
      if (line != -1 && t.loc.line != line) out += "\n";
      else if (!out.empty() && out.back() != '\n') out += " ";
      out += t.text;
      line = t.loc.line;
    }
    return out + "\n";
  }

  std::string file_;
  const TextOracle& oracle_;
  const ReduceOptions& opts_;
  std::mutex mu_;
  std::map<std::string, bool> seen_;
  std::atomic<std::size_t> calls_{0}, rejects_{0};
};

}  // namespace

ReductionResult reduce_source(const std::string& text, const std::string& file,
                              const TextOracle& oracle, const ReduceOptions& opts) {
  ReductionResult res;
  res.original_lines = frontend::count_lines(text);
  try {
    frontend::parse(text, file);
  } catch (const std::exception& e) {
    throw ReductionError(std::string("input does not parse: ") + e.what());
  }
  Reducer red(file, oracle, opts);
  std::string cur = *red.normalize(text);
  // With line markers the original is judged in marked form, which is the
  // only form that carries its file name into the candidate.
  if (!oracle(opts.preserve_lines ? cur : text)) throw ReductionError("initial input not interesting");
  res.oracle_calls = 1;
  if (!red.interesting(cur))
    throw ReductionError("initial input not interesting once pretty-printed");

  for (bool changed = true; changed;) {
    changed = false;
    for (Granularity g : opts.schedule) {
      PassRecord rec;
      std::string next = red.pass(cur, g, rec);
      // Accepted passes never grow the program.
      if (frontend::count_lines(next) > frontend::count_lines(cur) ||
          (frontend::count_lines(next) == frontend::count_lines(cur) && next.size() >= cur.size())) {
        res.passes.push_back(rec);
        continue;
      }
      res.passes.push_back(rec);
      cur = std::move(next);
      changed = true;
    }
  }
  res.text = cur;
  res.reduced_lines = frontend::count_lines(cur);
  res.oracle_calls += red.calls();
  res.precheck_rejects = red.rejects();
  return res;
}

std::string result_table(const std::string& program, const ReductionResult& r) {
  std::ostringstream out;
  out << std::left << std::setw(28) << "program" << std::right << std::setw(14) << "original LoC"
      << std::setw(13) << "reduced LoC" << std::setw(11) << "reduction" << "\n";
  out << std::left << std::setw(28) << program << std::right << std::setw(14) << r.original_lines
      << std::setw(13) << r.reduced_lines << std::setw(10) << std::fixed << std::setprecision(1)
      << r.reduction_percent() << "%\n";
  return out.str();
}

}  // namespace absint::reducer
