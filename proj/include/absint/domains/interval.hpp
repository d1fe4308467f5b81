#pragma once

#include <optional>
#include <string>
#include <vector>

#include "absint/domains/bound.hpp"
#include "absint/frontend/ast.hpp"

namespace absint::domains {

using frontend::BinOp;
using frontend::IntType;

// Widening landmarks. Always contains the i32 range endpoints.
class ThresholdSet {
 public:
  ThresholdSet();  // {i32 min, -1, 0, 1, i32 max}
  explicit ThresholdSet(const std::vector<std::int64_t>& extra);

  static ThresholdSet i32_endpoints();

  void insert(std::int64_t v);
  const std::vector<std::int64_t>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  // Largest threshold <= b, else -oo; smallest threshold >= b, else +oo.
  Bound below(const Bound& b) const;
  Bound above(const Bound& b) const;

  friend bool operator==(const ThresholdSet&, const ThresholdSet&) = default;

 private:
  std::vector<std::int64_t> values_;  // sorted, unique
};

class Interval {
 public:
  Interval() = default;  // bottom
  Interval(Bound lo, Bound hi);  // bottom when lo > hi
  static Interval top() { return {Bound::minus_infinity(), Bound::plus_infinity()}; }
  static Interval bottom() { return {}; }
  static Interval constant(std::int64_t v) { return {v, v}; }
  static Interval i32_range() { return {frontend::i32_min, frontend::i32_max}; }

  bool is_bottom() const { return bottom_; }
  bool is_top() const { return !bottom_ && lo_.is_minus_infinity() && hi_.is_plus_infinity(); }
  // Precondition: !is_bottom().
  const Bound& lo() const { return lo_; }
  const Bound& hi() const { return hi_; }
  std::optional<std::int64_t> singleton() const;

  bool contains(std::int64_t v) const { return !bottom_ && lo_ <= v && v <= hi_; }
  bool leq(const Interval& o) const;

  Interval join(const Interval& o) const;
  Interval meet(const Interval& o) const;
  Interval widen(const Interval& next, const ThresholdSet& th) const;
  Interval narrow(const Interval& next) const;

  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval operator*(const Interval& o) const;
  Interval operator-() const;
  // Divisor values 0 are ignored; bottom when the divisor is exactly 0.
  Interval div(const Interval& o) const;
  Interval mod(const Interval& o) const;

  // Removes v when it is one of the endpoints.
  Interval exclude(std::int64_t v) const;

  std::string to_string() const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  Bound lo_, hi_;
  bool bottom_ = true;
};

struct BinopResult {
  Interval value;     // mathematical result (divisor 0 excluded)
  bool may_overflow = false;
  bool may_div_zero = false;
  bool must_div_zero = false;
};

// Arithmetic ops in mathematical integers with the i32 overflow and
// division-by-zero flags; comparison and logical ops yield subsets of [0,1].
BinopResult interval_binop(BinOp op, const Interval& a, const Interval& b, IntType ty);

// Interval of `op` applied to a and b.
Interval apply_binop(BinOp op, const Interval& a, const Interval& b);

}  // namespace absint::domains
