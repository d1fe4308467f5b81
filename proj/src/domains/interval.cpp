#include "absint/domains/interval.hpp"

#include <algorithm>
#include <array>

namespace absint::domains {

using frontend::i32_max;
using frontend::i32_min;

ThresholdSet::ThresholdSet() : values_{i32_min, -1, 0, 1, i32_max} {}

ThresholdSet::ThresholdSet(const std::vector<std::int64_t>& extra) : ThresholdSet() {
  for (auto v : extra) insert(v);
}

ThresholdSet ThresholdSet::i32_endpoints() {
  ThresholdSet t;
  t.values_ = {i32_min, i32_max};
  return t;
}

void ThresholdSet::insert(std::int64_t v) {
  auto it = std::lower_bound(values_.begin(), values_.end(), v);
  if (it == values_.end() || *it != v) values_.insert(it, v);
}

Bound ThresholdSet::below(const Bound& b) const {
  if (b.is_minus_infinity()) return b;
  if (b.is_plus_infinity()) return values_.back();
  auto it = std::upper_bound(values_.begin(), values_.end(), b.value());
  if (it == values_.begin()) return Bound::minus_infinity();
  return *std::prev(it);
}

Bound ThresholdSet::above(const Bound& b) const {
  if (b.is_plus_infinity()) return b;
  if (b.is_minus_infinity()) return values_.front();
  auto it = std::lower_bound(values_.begin(), values_.end(), b.value());
  if (it == values_.end()) return Bound::plus_infinity();
  return *it;
}

Interval::Interval(Bound lo, Bound hi) {
  if (lo <= hi && !lo.is_plus_infinity() && !hi.is_minus_infinity()) {
    lo_ = lo;
    hi_ = hi;
    bottom_ = false;
  }
}

std::optional<std::int64_t> Interval::singleton() const {
  if (bottom_ || !lo_.is_finite() || lo_ != hi_) return std::nullopt;
  return lo_.value();
}

bool Interval::leq(const Interval& o) const {
  if (bottom_) return true;
  if (o.bottom_) return false;
  return o.lo_ <= lo_ && hi_ <= o.hi_;
}

Interval Interval::join(const Interval& o) const {
  if (bottom_) return o;
  if (o.bottom_) return *this;
  return {min(lo_, o.lo_), max(hi_, o.hi_)};
}

Interval Interval::meet(const Interval& o) const {
  if (bottom_ || o.bottom_) return {};
  return {max(lo_, o.lo_), min(hi_, o.hi_)};
}

Interval Interval::widen(const Interval& next, const ThresholdSet& th) const {
  if (bottom_) return next;
  if (next.bottom_) return *this;
  Bound lo = next.lo_ < lo_ ? th.below(next.lo_) : lo_;
  Bound hi = next.hi_ > hi_ ? th.above(next.hi_) : hi_;
  return {lo, hi};
}

Interval Interval::narrow(const Interval& next) const {
  if (bottom_ || next.bottom_) return {};
  return {lo_.is_minus_infinity() ? next.lo_ : lo_, hi_.is_plus_infinity() ? next.hi_ : hi_};
}

Interval Interval::operator+(const Interval& o) const {
  if (bottom_ || o.bottom_) return {};
  return {lo_ + o.lo_, hi_ + o.hi_};
}

Interval Interval::operator-(const Interval& o) const {
  if (bottom_ || o.bottom_) return {};
  return {lo_ - o.hi_, hi_ - o.lo_};
}

Interval Interval::operator-() const {
  if (bottom_) return {};
  return {-hi_, -lo_};
}

Interval Interval::operator*(const Interval& o) const {
  if (bottom_ || o.bottom_) return {};
  std::array<Bound, 4> c = {lo_ * o.lo_, lo_ * o.hi_, hi_ * o.lo_, hi_ * o.hi_};
  return {*std::min_element(c.begin(), c.end()), *std::max_element(c.begin(), c.end())};
}

namespace {

// Quotient range for a divisor of constant sign: truncated division is
// monotone in each argument there, so the extremes are at the corners.
Interval div_same_sign(const Interval& a, const Interval& b) {
  std::array<Bound, 4> c = {truncated_div(a.lo(), b.lo()), truncated_div(a.lo(), b.hi()),
                            truncated_div(a.hi(), b.lo()), truncated_div(a.hi(), b.hi())};
  return {*std::min_element(c.begin(), c.end()), *std::max_element(c.begin(), c.end())};
}

}  // namespace

Interval Interval::div(const Interval& o) const {
  if (bottom_ || o.bottom_) return {};
  Interval neg = o.meet({Bound::minus_infinity(), -1});
  Interval pos = o.meet({1, Bound::plus_infinity()});
  Interval r;
  if (!neg.is_bottom()) r = r.join(div_same_sign(*this, neg));
  if (!pos.is_bottom()) r = r.join(div_same_sign(*this, pos));
  return r;
}

Interval Interval::mod(const Interval& o) const {
  if (bottom_ || o.bottom_) return {};
  Interval d = o.exclude(0);
  if (d.is_bottom() || (d.singleton() && *d.singleton() == 0)) return {};
  if (auto a = singleton()) {
    if (auto b = d.singleton()) return constant(*a % *b);
  }
  // |r| < max |divisor|, sign of r follows the dividend.
  Bound m = max(-d.lo_, d.hi_);
  Bound lim = m - 1;
  Bound min_abs =
      d.lo_ > 0 ? d.lo_ : d.hi_ < 0 ? -d.hi_ : Bound(1);
  if (lo_ >= 0 && hi_ < min_abs) return *this;
  if (hi_ <= 0 && -lo_ < min_abs) return *this;
  Bound lo = lo_ >= 0 ? Bound(0) : max(-lim, lo_);
  Bound hi = hi_ <= 0 ? Bound(0) : min(lim, hi_);
  return {lo, hi};
}

Interval Interval::exclude(std::int64_t v) const {
  if (bottom_) return {};
  if (lo_ == v) return {lo_ + 1, hi_};
  if (hi_ == v) return {lo_, hi_ - 1};
  return *this;
}

std::string Interval::to_string() const {
  if (bottom_) return "_|_";
  return "[" + lo_.to_string() + ", " + hi_.to_string() + "]";
}

namespace {

Interval truth(bool can_be_true, bool can_be_false) {
  if (can_be_true && can_be_false) return {0, 1};
  if (can_be_true) return Interval::constant(1);
  if (can_be_false) return Interval::constant(0);
  return {};
}

Interval compare(BinOp op, const Interval& a, const Interval& b) {
  if (a.is_bottom() || b.is_bottom()) return {};
  switch (op) {
    case BinOp::lt: return truth(a.lo() < b.hi(), a.hi() >= b.lo());
    case BinOp::le: return truth(a.lo() <= b.hi(), a.hi() > b.lo());
    case BinOp::gt: return truth(a.hi() > b.lo(), a.lo() <= b.hi());
    case BinOp::ge: return truth(a.hi() >= b.lo(), a.lo() < b.hi());
    case BinOp::eq: {
      bool may_eq = !a.meet(b).is_bottom();
      bool must_eq = a.singleton() && b.singleton() && *a.singleton() == *b.singleton();
      return truth(may_eq, !must_eq);
    }
    case BinOp::ne: {
      bool may_eq = !a.meet(b).is_bottom();
      bool must_eq = a.singleton() && b.singleton() && *a.singleton() == *b.singleton();
      return truth(!must_eq, may_eq);
    }
    default: return {0, 1};
  }
}

}  // namespace

Interval apply_binop(BinOp op, const Interval& a, const Interval& b) {
  switch (op) {
    case BinOp::add: return a + b;
    case BinOp::sub: return a - b;
    case BinOp::mul: return a * b;
    case BinOp::div: return a.div(b);
    case BinOp::mod: return a.mod(b);
    case BinOp::land: {
      if (a.is_bottom() || b.is_bottom()) return {};
      bool a_true = !a.singleton() || *a.singleton() != 0;
      bool a_false = a.contains(0);
      bool b_true = !b.singleton() || *b.singleton() != 0;
      bool b_false = b.contains(0);
      return truth(a_true && b_true, a_false || b_false);
    }
    case BinOp::lor: {
      if (a.is_bottom() || b.is_bottom()) return {};
      bool a_true = !a.singleton() || *a.singleton() != 0;
      bool a_false = a.contains(0);
      bool b_true = !b.singleton() || *b.singleton() != 0;
      bool b_false = b.contains(0);
      return truth(a_true || b_true, a_false && b_false);
    }
    default: return compare(op, a, b);
  }
}

BinopResult interval_binop(BinOp op, const Interval& a, const Interval& b, IntType ty) {
  BinopResult r;
  if (op == BinOp::div || op == BinOp::mod) {
    r.may_div_zero = b.contains(0);
    r.must_div_zero = b.singleton() && *b.singleton() == 0;
  }
  r.value = apply_binop(op, a, b);
  if (ty == IntType::i32 && frontend::is_arithmetic(op) && !r.value.is_bottom())
    r.may_overflow = !r.value.leq(Interval::i32_range());
  return r;
}

}  // namespace absint::domains
