#include "absint/domains/zone.hpp"

#include <algorithm>
#include <map>

namespace absint::domains {

namespace {

using frontend::IntType;

// sum(coef * var) + constant, over math-typed nodes only: an i32-typed node
// clamps its result and is not linear.
struct Linear {
  std::map<Var, std::int64_t> coef;
  std::int64_t constant = 0;

  void add(const Linear& o, std::int64_t k) {
    for (const auto& [v, a] : o.coef) {
      std::int64_t& c = coef[v];
      c += k * a;
      if (c == 0) coef.erase(v);
    }
    constant += k * o.constant;
  }
};

constexpr std::int64_t linear_limit = std::int64_t{1} << 40;

std::optional<Linear> linearize(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::int_lit: return Linear{{}, e.value};
    case Expr::Kind::var: return Linear{{{var_of(e), 1}}, 0};
    case Expr::Kind::neg: {
      if (e.type != IntType::math) return std::nullopt;
      auto a = linearize(*e.lhs);
      if (!a) return std::nullopt;
      Linear r;
      r.add(*a, -1);
      return r;
    }
    case Expr::Kind::binop: break;
    default: return std::nullopt;
  }
  if (e.type != IntType::math) return std::nullopt;
  if (e.op != BinOp::add && e.op != BinOp::sub && e.op != BinOp::mul) return std::nullopt;
  auto a = linearize(*e.lhs);
  auto b = linearize(*e.rhs);
  if (!a || !b) return std::nullopt;
  Linear r;
  if (e.op == BinOp::mul) {
    if (a->coef.empty()) std::swap(a, b);
    if (!b->coef.empty()) return std::nullopt;
    r.add(*a, b->constant);
  } else {
    r.add(*a, 1);
    r.add(*b, e.op == BinOp::add ? 1 : -1);
  }
  if (r.constant > linear_limit || r.constant < -linear_limit) return std::nullopt;
  for (const auto& [v, c] : r.coef)
    if (c > linear_limit || c < -linear_limit) return std::nullopt;
  return r;
}

}  // namespace

std::string render_difference(const std::string& a, const std::string& b, const Bound& c) {
  return a + " - " + b + " ≤ " + c.to_string();
}

Zone Zone::bottom() {
  Zone z;
  z.dbm_ = Dbm::bottom(1);
  return z;
}

bool Zone::is_bottom() const { return dbm_.is_bottom() || dbm_.close().is_bottom(); }

std::optional<std::size_t> Zone::index(Var v) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - vars_.begin()) + 1;
}

bool Zone::has_var(Var v) const { return index(v).has_value(); }

Zone Zone::closed() const {
  Zone r = *this;
  r.dbm_ = dbm_.close();
  if (r.dbm_.is_bottom()) return bottom();
  return r;
}

Zone Zone::reshape(const std::vector<Var>& target) const {
  if (target == vars_) return *this;
  Zone src = closed();
  if (src.dbm_.is_bottom()) return bottom();
  Zone r;
  r.vars_ = target;
  r.dbm_ = Dbm(target.size() + 1);
  std::vector<std::optional<std::size_t>> map(target.size() + 1);
  map[0] = 0;
  for (std::size_t i = 0; i < target.size(); ++i) map[i + 1] = src.index(target[i]);
  for (std::size_t i = 0; i <= target.size(); ++i) {
    if (!map[i]) continue;
    for (std::size_t j = 0; j <= target.size(); ++j)
      if (map[j] && i != j) r.dbm_.set(i, j, src.dbm_.at(*map[i], *map[j]));
  }
  r.dbm_ = r.dbm_.close();
  return r;
}

Zone Zone::add_var(Var v) const {
  if (is_bottom() || has_var(v)) return *this;
  std::vector<Var> t = vars_;
  t.insert(std::lower_bound(t.begin(), t.end(), v), v);
  return reshape(t);
}

Zone Zone::remove_var(Var v) const {
  if (!has_var(v)) return *this;
  if (is_bottom()) return bottom();
  std::vector<Var> t = vars_;
  t.erase(std::lower_bound(t.begin(), t.end(), v));
  return reshape(t);
}

Zone Zone::forget(Var v) const {
  if (is_bottom()) return bottom();
  auto i = index(v);
  if (!i) return add_var(v);
  Zone r = *this;
  r.dbm_ = dbm_.forget(*i);
  return r;
}

Interval Zone::project(Var v) const {
  Dbm c = dbm_.close();
  if (c.is_bottom()) return {};
  auto i = index(v);
  if (!i) return Interval::top();
  return {-c.at(0, *i), c.at(*i, 0)};
}

Bound Zone::diff_upper(Var v, Var w) const {
  auto i = index(v), j = index(w);
  if (!i || !j) return Bound::plus_infinity();
  return dbm_.close().at(*i, *j);
}

Interval Zone::eval(const Expr& e) const {
  Zone c = closed();
  if (c.dbm_.is_bottom()) return {};
  auto lookup = [&c](Var v) { return c.project(v); };
  Interval r = eval_interval(e, lookup);
  if (e.kind == Expr::Kind::binop && e.op == BinOp::sub && e.lhs->kind == Expr::Kind::var &&
      e.rhs->kind == Expr::Kind::var) {
    Var a = var_of(*e.lhs), b = var_of(*e.rhs);
    Interval d(-c.diff_upper(b, a), c.diff_upper(a, b));
    if (e.type == IntType::i32) d = d.meet(Interval::i32_range());
    r = r.meet(d);
  }
  return r;
}

Zone Zone::join(const Zone& o) const {
  if (is_bottom()) return o.closed();
  if (o.is_bottom()) return closed();
  std::vector<Var> common;
  std::set_intersection(vars_.begin(), vars_.end(), o.vars_.begin(), o.vars_.end(),
                        std::back_inserter(common));
  Zone a = reshape(common).closed(), b = o.reshape(common).closed();
  a.dbm_ = a.dbm_.join(b.dbm_);
  return a;
}

Zone Zone::meet(const Zone& o) const {
  if (is_bottom() || o.is_bottom()) return bottom();
  std::vector<Var> all;
  std::set_union(vars_.begin(), vars_.end(), o.vars_.begin(), o.vars_.end(),
                 std::back_inserter(all));
  Zone a = reshape(all), b = o.reshape(all);
  a.dbm_ = a.dbm_.meet(b.dbm_);
  if (a.dbm_.is_bottom()) return bottom();
  return a;
}

Zone Zone::widen(const Zone& o, const ThresholdSet& th) const {
  if (is_bottom()) return o;
  if (o.is_bottom()) return *this;
  std::vector<Var> common;
  std::set_intersection(vars_.begin(), vars_.end(), o.vars_.begin(), o.vars_.end(),
                        std::back_inserter(common));
  Zone a = reshape(common), b = o.reshape(common).closed();
  Dbm w = a.dbm_.widen(b.dbm_);
  const std::size_t n = w.dim();
  for (std::size_t i = 1; i < n; ++i) {
    // Upper bound v_i <= m[i][0], lower bound -v_i <= m[0][i].
    if (a.dbm_.at(i, 0).is_finite() && w.at(i, 0).is_plus_infinity())
      w.set(i, 0, th.above(b.dbm_.at(i, 0)));
    if (a.dbm_.at(0, i).is_finite() && w.at(0, i).is_plus_infinity())
      w.set(0, i, -th.below(-b.dbm_.at(0, i)));
  }
  a.dbm_ = w;
  return a;
}

bool Zone::leq(const Zone& o) const {
  if (is_bottom()) return true;
  if (o.is_bottom()) return false;
  // Variables o lacks are unconstrained there; extra ones in o must be too.
  return reshape(o.vars_).dbm_.leq(o.dbm_);
}

std::optional<Zone> Zone::assign(Var v, const Expr& e) const {
  Zone z = closed();
  if (z.dbm_.is_bottom()) return bottom();
  if (!z.has_var(v)) z = z.add_var(v);
  const std::size_t i = *z.index(v);
  auto lin = linearize(e);
  if (lin && lin->coef.size() <= 1) {
    const std::int64_t c = lin->constant;
    if (lin->coef.empty()) {
      z.dbm_ = z.dbm_.forget(i);
      z.dbm_.set(i, 0, c);
      z.dbm_.set(0, i, -c);
      z.dbm_ = z.dbm_.close();
      return z;
    }
    auto [w, a] = *lin->coef.begin();
    if (a == 1 && w == v) {
      // Shift: v' = v + c keeps closure.
      Dbm d = z.dbm_;
      for (std::size_t j = 0; j < d.dim(); ++j) {
        if (j == i) continue;
        d.set(i, j, d.at(i, j) + c);
        d.set(j, i, d.at(j, i) - c);
      }
      z.dbm_ = d.close();
      return z;
    }
    if (a == 1 && z.has_var(w)) {
      const std::size_t k = *z.index(w);
      z.dbm_ = z.dbm_.forget(i);
      z.dbm_.set(i, k, c);
      z.dbm_.set(k, i, -c);
      z.dbm_ = z.dbm_.close();
      if (z.dbm_.is_bottom()) return bottom();
      return z;
    }
  }
  Interval value = z.eval(e);
  if (value.is_bottom()) return bottom();
  z.dbm_ = z.dbm_.forget(i);
  z.dbm_.set(i, 0, value.hi());
  z.dbm_.set(0, i, -value.lo());
  z.dbm_ = z.dbm_.close();
  if (z.dbm_.is_bottom()) return bottom();
  return z;
}

Zone Zone::assume_atom(BinOp cmp, const Expr& l, const Expr& r) const {
  Zone z = closed();
  if (z.dbm_.is_bottom()) return bottom();
  auto ll = linearize(l), lr = linearize(r);
  if (ll && lr && cmp != BinOp::ne) {
    Linear d = *ll;
    d.add(*lr, -1);  // l - r cmp 0
    // Each entry: sign applied to d, and its upper bound k, meaning sign*d <= k.
    std::vector<std::pair<std::int64_t, std::int64_t>> forms;
    switch (cmp) {
      case BinOp::lt: forms = {{1, -1}}; break;
      case BinOp::le: forms = {{1, 0}}; break;
      case BinOp::gt: forms = {{-1, -1}}; break;
      case BinOp::ge: forms = {{-1, 0}}; break;
      case BinOp::eq: forms = {{1, 0}, {-1, 0}}; break;
      default: break;
    }
    bool exact = !forms.empty();
    for (const auto& [v, a] : d.coef)
      if ((a != 1 && a != -1) || !z.has_var(v)) exact = false;
    if (d.coef.size() == 2 && d.coef.begin()->second == std::next(d.coef.begin())->second)
      exact = false;
    if (d.coef.size() > 2) exact = false;
    if (exact) {
      for (const auto& [sign, k] : forms) {
        // sum(sign*a*x) <= k - sign*constant
        Bound bound = k - sign * d.constant;
        std::size_t pos = 0, neg = 0;
        for (const auto& [v, a] : d.coef) (sign * a > 0 ? pos : neg) = *z.index(v);
        if (pos == 0 && neg == 0) {
          if (bound < 0) return bottom();
          continue;
        }
        z.dbm_.add_constraint(pos, neg, bound);
      }
      z.dbm_ = z.dbm_.close();
      if (z.dbm_.is_bottom()) return bottom();
      return z;
    }
  }
  // Interval fallback: refine projections, then install them as unary bounds.
  std::map<Var, Interval> refined;
  IntervalStore store{
      [&](Var v) {
        auto it = refined.find(v);
        return it != refined.end() ? it->second : z.project(v);
      },
      [&](Var v, const Interval& i) {
        auto it = refined.find(v);
        Interval cur = it != refined.end() ? it->second : z.project(v);
        Interval m = cur.meet(i);
        if (m.is_bottom()) return false;
        refined[v] = m;
        return true;
      }};
  if (!refine_compare(cmp, l, r, store)) return bottom();
  for (const auto& [v, i] : refined) z = z.constrain(v, i);
  return z;
}

Zone Zone::constrain(Var v, const Interval& iv) const {
  if (iv.is_bottom()) return bottom();
  Zone z = closed();
  if (z.dbm_.is_bottom()) return bottom();
  if (!z.has_var(v)) z = z.add_var(v);
  const std::size_t i = *z.index(v);
  z.dbm_.add_constraint(i, 0, iv.hi());
  z.dbm_.add_constraint(0, i, -iv.lo());
  z.dbm_ = z.dbm_.close();
  if (z.dbm_.is_bottom()) return bottom();
  return z;
}

std::string Zone::print(const Namer& namer) const {
  Zone z = closed();
  if (z.dbm_.is_bottom()) return "_|_";
  std::string out;
  auto line = [&out](const std::string& s) {
    if (!out.empty()) out += "\n";
    out += s;
  };
  std::vector<std::string> names;
  for (Var v : z.vars_) names.push_back(namer(v));
  for (std::size_t i = 0; i < z.vars_.size(); ++i)
    if (!names[i].empty()) line(render_interval(names[i], z.project(z.vars_[i])));
  for (std::size_t i = 0; i < z.vars_.size(); ++i) {
    for (std::size_t j = 0; j < z.vars_.size(); ++j) {
      if (i == j || names[i].empty() || names[j].empty()) continue;
      const Bound& c = z.dbm_.at(i + 1, j + 1);
      if (c.is_finite()) line(render_difference(names[i], names[j], c));
    }
  }
  return out;
}

std::vector<std::string> Zone::describe(Var v, const Namer& namer) const {
  Zone z = closed();
  if (z.dbm_.is_bottom()) return {"_|_"};
  const std::string vn = namer(v);
  std::vector<std::string> out{render_interval(vn, z.project(v))};
  auto i = z.index(v);
  if (!i) return out;
  for (std::size_t j = 0; j < z.vars_.size(); ++j) {
    if (j + 1 == *i) continue;
    const std::string wn = namer(z.vars_[j]);
    if (wn.empty()) continue;
    const Bound& up = z.dbm_.at(*i, j + 1);
    const Bound& down = z.dbm_.at(j + 1, *i);
    if (up.is_finite()) out.push_back(render_difference(vn, wn, up));
    if (down.is_finite()) out.push_back(render_difference(wn, vn, down));
  }
  return out;
}

}  // namespace absint::domains
