#pragma once

// Unified signature every numeric domain implements. The engine is
// instantiated once per model of this concept.

#include <concepts>
#include <optional>
#include <string>
#include <vector>

#include "absint/domains/interval_env.hpp"
#include "absint/domains/product.hpp"
#include "absint/domains/zone.hpp"

namespace absint::domains {

template <class D>
concept NumericDomain = requires(const D d, Var v, const Expr& e, BinOp op,
                                 const ThresholdSet& th, const Interval& i, const Namer& n) {
  { D::top() } -> std::same_as<D>;
  { D::bottom() } -> std::same_as<D>;
  { d.is_bottom() } -> std::same_as<bool>;
  { d.has_var(v) } -> std::same_as<bool>;
  { d.add_var(v) } -> std::same_as<D>;
  { d.remove_var(v) } -> std::same_as<D>;
  { d.forget(v) } -> std::same_as<D>;
  { d.project(v) } -> std::same_as<Interval>;
  { d.eval(e) } -> std::same_as<Interval>;
  { d.join(d) } -> std::same_as<D>;
  { d.meet(d) } -> std::same_as<D>;
  { d.widen(d, th) } -> std::same_as<D>;
  { d.leq(d) } -> std::same_as<bool>;
  // nullopt: the domain declines and the next handler is consulted.
  { d.assign(v, e) } -> std::same_as<std::optional<D>>;
  { d.assume(e, true) } -> std::same_as<D>;
  { d.assume_atom(op, e, e) } -> std::same_as<D>;
  { d.constrain(v, i) } -> std::same_as<D>;
  { d.print(n) } -> std::same_as<std::string>;
  { d.describe(v, n) } -> std::same_as<std::vector<std::string>>;
};

static_assert(NumericDomain<IntervalEnv>);
static_assert(NumericDomain<Zone>);
static_assert(NumericDomain<ProductState>);

}  // namespace absint::domains
