#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "absint/domains/bound.hpp"

namespace absint::domains {

// Difference-bound matrix over v0 (the constant zero) and dim-1 variables.
// at(i, j) bounds v_i - v_j. A DBM is bottom when its constraints are
// unsatisfiable; close() decides that.
class Dbm {
 public:
  Dbm() : Dbm(1) {}
  explicit Dbm(std::size_t dim);  // unconstrained
  static Dbm bottom(std::size_t dim);

  std::size_t dim() const { return dim_; }
  bool is_bottom() const { return bottom_; }
  bool is_closed() const { return closed_; }

  const Bound& at(std::size_t i, std::size_t j) const { return m_[i * dim_ + j]; }
  // Tightens v_i - v_j <= c.
  void add_constraint(std::size_t i, std::size_t j, const Bound& c);
  void set(std::size_t i, std::size_t j, const Bound& c);

  // Floyd-Warshall tightening; bottom iff a negative cycle exists.
  Dbm close() const;

  // Pointwise on closed operands.
  Dbm join(const Dbm& o) const;
  Dbm meet(const Dbm& o) const;
  // Keeps this's bound where o's is no larger, else +oo. Not re-closed.
  Dbm widen(const Dbm& o) const;
  bool leq(const Dbm& o) const;

  Dbm add_dimension() const;
  Dbm remove_dimension(std::size_t i) const;
  // Drops every constraint on v_i (closing first to keep implied ones).
  Dbm forget(std::size_t i) const;

  friend bool operator==(const Dbm&, const Dbm&) = default;

 private:
  std::size_t dim_ = 1;
  std::vector<Bound> m_;
  bool bottom_ = false;
  bool closed_ = true;
};

}  // namespace absint::domains
