#include "absint/domains/bound.hpp"

namespace absint::domains {

Bound operator+(const Bound& a, const Bound& b) {
  if (a.is_plus_infinity() || b.is_plus_infinity()) return Bound::plus_infinity();
  if (a.is_minus_infinity() || b.is_minus_infinity()) return Bound::minus_infinity();
  std::int64_t r;
  if (__builtin_add_overflow(a.v_, b.v_, &r))
    return a.v_ > 0 ? Bound::plus_infinity() : Bound::minus_infinity();
  return r;
}

Bound Bound::operator-() const {
  switch (kind_) {
    case Kind::neg_inf: return plus_infinity();
    case Kind::pos_inf: return minus_infinity();
    case Kind::finite:
      if (v_ == INT64_MIN) return plus_infinity();
      return -v_;
  }
  return *this;
}

namespace {
int sign(const Bound& b) {
  if (b.is_plus_infinity()) return 1;
  if (b.is_minus_infinity()) return -1;
  return b.value() > 0 ? 1 : b.value() < 0 ? -1 : 0;
}
}  // namespace

Bound operator*(const Bound& a, const Bound& b) {
  int s = sign(a) * sign(b);
  if (s == 0) return 0;
  if (!a.is_finite() || !b.is_finite())
    return s > 0 ? Bound::plus_infinity() : Bound::minus_infinity();
  std::int64_t r;
  if (__builtin_mul_overflow(a.v_, b.v_, &r))
    return s > 0 ? Bound::plus_infinity() : Bound::minus_infinity();
  return r;
}

Bound truncated_div(const Bound& a, const Bound& b) {
  if (!b.is_finite()) {
    if (a.is_finite()) return 0;
    // oo / oo: only reached as a corner of an unbounded interval.
    return sign(a) * sign(b) > 0 ? Bound::plus_infinity() : Bound::minus_infinity();
  }
  if (!a.is_finite()) return sign(a) * sign(b) > 0 ? Bound::plus_infinity() : Bound::minus_infinity();
  if (a.v_ == INT64_MIN && b.v_ == -1) return Bound::plus_infinity();
  return a.v_ / b.v_;
}

std::string Bound::to_string() const {
  switch (kind_) {
    case Kind::neg_inf: return "-oo";
    case Kind::pos_inf: return "+oo";
    case Kind::finite: return std::to_string(v_);
  }
  return "?";
}

}  // namespace absint::domains
