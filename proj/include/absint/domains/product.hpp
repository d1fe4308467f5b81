#pragma once

#include "absint/domains/interval_env.hpp"
#include "absint/domains/zone.hpp"

namespace absint::domains {

// Reduced product of intervals and zones. After reduce(), every interval is
// at least as tight as the zone projection, the zone carries the interval
// bounds as unary constraints, and bottom in either side is bottom in both.
class ProductState {
 public:
  static constexpr const char* name = "product";

  static ProductState top() { return {IntervalEnv::top(), Zone::top()}; }
  static ProductState bottom() { return {IntervalEnv::bottom(), Zone::bottom()}; }
  ProductState(IntervalEnv i, Zone z) : itv_(std::move(i)), zone_(std::move(z)) {}

  const IntervalEnv& intervals() const { return itv_; }
  const Zone& zones() const { return zone_; }
  bool reduced() const { return reduced_; }

  ProductState reduce() const;

  bool is_bottom() const { return itv_.is_bottom() || zone_.is_bottom(); }
  bool has_var(Var v) const { return itv_.has_var(v); }

  ProductState add_var(Var v) const;
  ProductState remove_var(Var v) const;
  ProductState forget(Var v) const;

  Interval project(Var v) const;
  Interval eval(const Expr& e) const;

  ProductState join(const ProductState& o) const;
  ProductState meet(const ProductState& o) const;
  // Component-wise and not reduced: reduction would undo the extrapolation.
  ProductState widen(const ProductState& o, const ThresholdSet& th) const;
  bool leq(const ProductState& o) const;

  std::optional<ProductState> assign(Var v, const Expr& e) const;
  ProductState assume_atom(BinOp cmp, const Expr& l, const Expr& r) const;
  ProductState assume(const Expr& cond, bool truth) const {
    return assume_condition(*this, cond, truth);
  }
  ProductState constrain(Var v, const Interval& i) const;

  std::string print(const Namer& namer) const;
  std::vector<std::string> describe(Var v, const Namer& namer) const;

  friend bool operator==(const ProductState&, const ProductState&) = default;

 private:
  IntervalEnv itv_;
  Zone zone_;
  bool reduced_ = false;
};

}  // namespace absint::domains
