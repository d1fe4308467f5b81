#include "absint/domains/product.hpp"

namespace absint::domains {

ProductState ProductState::reduce() const {
  if (is_bottom()) {
    ProductState b = bottom();
    b.reduced_ = true;
    return b;
  }
  // The zone absorbs every interval bound first, so its closed projections
  // are final and copying them back makes both components agree.
  Zone zone = zone_;
  for (Var v : itv_.vars()) {
    zone = zone.has_var(v) ? zone.constrain(v, itv_.project(v)) : zone;
    if (zone.is_bottom()) return bottom().reduce();
  }
  IntervalEnv itv = itv_;
  for (Var v : zone.vars()) {
    if (!itv.has_var(v)) itv = itv.add_var(v);
    itv = itv.constrain(v, zone.project(v));
    if (itv.is_bottom()) return bottom().reduce();
  }
  ProductState r(std::move(itv), std::move(zone));
  r.reduced_ = true;
  return r;
}

ProductState ProductState::add_var(Var v) const {
  return ProductState(itv_.add_var(v), zone_.add_var(v)).reduce();
}

ProductState ProductState::remove_var(Var v) const {
  ProductState r(itv_.remove_var(v), zone_.remove_var(v));
  r.reduced_ = reduced_;
  return r;
}

ProductState ProductState::forget(Var v) const {
  return ProductState(itv_.forget(v), zone_.forget(v)).reduce();
}

Interval ProductState::project(Var v) const {
  if (is_bottom()) return {};
  return itv_.project(v).meet(zone_.project(v));
}

Interval ProductState::eval(const Expr& e) const {
  if (is_bottom()) return {};
  return itv_.eval(e).meet(zone_.eval(e));
}

ProductState ProductState::join(const ProductState& o) const {
  if (is_bottom()) return o;
  if (o.is_bottom()) return *this;
  ProductState a = reduce(), b = o.reduce();
  return ProductState(a.itv_.join(b.itv_), a.zone_.join(b.zone_)).reduce();
}

ProductState ProductState::meet(const ProductState& o) const {
  return ProductState(itv_.meet(o.itv_), zone_.meet(o.zone_)).reduce();
}

ProductState ProductState::widen(const ProductState& o, const ThresholdSet& th) const {
  if (is_bottom()) return o;
  if (o.is_bottom()) return *this;
  return {itv_.widen(o.itv_, th), zone_.widen(o.zone_, th)};
}

bool ProductState::leq(const ProductState& o) const {
  if (is_bottom()) return true;
  if (o.is_bottom()) return false;
  return itv_.leq(o.itv_) && zone_.leq(o.zone_);
}

std::optional<ProductState> ProductState::assign(Var v, const Expr& e) const {
  if (is_bottom()) return *this;
  // Evaluate with the sharper of both components before either changes.
  Interval value = eval(e);
  auto z = zone_.assign(v, e);
  auto i = itv_.assign(v, e);
  if (!z || !i) return std::nullopt;
  return ProductState(i->constrain(v, value), *z).reduce();
}

ProductState ProductState::assume_atom(BinOp cmp, const Expr& l, const Expr& r) const {
  if (is_bottom()) return *this;
  ProductState s = reduce();
  return ProductState(s.itv_.assume_atom(cmp, l, r), s.zone_.assume_atom(cmp, l, r)).reduce();
}

ProductState ProductState::constrain(Var v, const Interval& i) const {
  return ProductState(itv_.constrain(v, i), zone_.constrain(v, i)).reduce();
}

std::string ProductState::print(const Namer& namer) const {
  if (is_bottom()) return "_|_";
  ProductState s = reduce();
  std::string out = s.itv_.print(namer);
  const Zone& z = s.zone_;
  const auto& vs = z.vars();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = 0; j < vs.size(); ++j) {
      if (i == j) continue;
      std::string a = namer(vs[i]), b = namer(vs[j]);
      if (a.empty() || b.empty()) continue;
      Bound c = z.diff_upper(vs[i], vs[j]);
      if (!c.is_finite()) continue;
      if (!out.empty()) out += "\n";
      out += render_difference(a, b, c);
    }
  }
  return out;
}

std::vector<std::string> ProductState::describe(Var v, const Namer& namer) const {
  if (is_bottom()) return {"_|_"};
  ProductState s = reduce();
  std::vector<std::string> out = s.itv_.describe(v, namer);
  std::vector<std::string> rel = s.zone_.describe(v, namer);
  out.insert(out.end(), rel.begin() + 1, rel.end());
  return out;
}

}  // namespace absint::domains
