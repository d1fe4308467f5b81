#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace absint::domains {

// Integer extended with -oo and +oo. Finite arithmetic that leaves the
// int64 range saturates to the matching infinity; all values the analyzer
// manipulates are far inside that range.
class Bound {
 public:
  constexpr Bound() = default;
  constexpr Bound(std::int64_t v) : kind_(Kind::finite), v_(v) {}  // NOLINT(implicit)

  static constexpr Bound minus_infinity() { return Bound(Kind::neg_inf); }
  static constexpr Bound plus_infinity() { return Bound(Kind::pos_inf); }

  constexpr bool is_finite() const { return kind_ == Kind::finite; }
  constexpr bool is_plus_infinity() const { return kind_ == Kind::pos_inf; }
  constexpr bool is_minus_infinity() const { return kind_ == Kind::neg_inf; }
  // Precondition: is_finite().
  constexpr std::int64_t value() const { return v_; }

  friend constexpr bool operator==(const Bound& a, const Bound& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::finite || a.v_ == b.v_);
  }
  friend constexpr std::strong_ordering operator<=>(const Bound& a, const Bound& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    if (a.kind_ != Kind::finite) return std::strong_ordering::equal;
    return a.v_ <=> b.v_;
  }

  // +oo + -oo is not needed by any caller and yields +oo.
  friend Bound operator+(const Bound& a, const Bound& b);
  friend Bound operator-(const Bound& a, const Bound& b) { return a + (-b); }
  friend Bound operator*(const Bound& a, const Bound& b);
  Bound operator-() const;

  // Division truncating toward zero; precondition b != 0. x / +-oo = 0.
  friend Bound truncated_div(const Bound& a, const Bound& b);

  std::string to_string() const;

 private:
  enum class Kind { neg_inf = 0, finite = 1, pos_inf = 2 };
  constexpr explicit Bound(Kind k) : kind_(k) {}

  Kind kind_ = Kind::finite;
  std::int64_t v_ = 0;
};

inline Bound min(const Bound& a, const Bound& b) { return a < b ? a : b; }
inline Bound max(const Bound& a, const Bound& b) { return a < b ? b : a; }

}  // namespace absint::domains
