#pragma once

#include <optional>
#include <string>
#include <vector>

#include "absint/domains/dbm.hpp"
#include "absint/domains/interval_env.hpp"

namespace absint::domains {

// Relational domain of constraints x - y <= c and +-x <= c. Variable i of
// vars_ (sorted) is DBM index i+1; index 0 is the constant zero. The DBM is
// kept closed by every operation except widen, whose result is closed only
// lazily when queried.
class Zone {
 public:
  static constexpr const char* name = "zones";

  static Zone top() { return Zone(); }
  static Zone bottom();

  bool is_bottom() const;
  bool has_var(Var v) const;
  const std::vector<Var>& vars() const { return vars_; }

  Zone add_var(Var v) const;
  Zone remove_var(Var v) const;
  Zone forget(Var v) const;

  Interval project(Var v) const;
  // Interval evaluation sharpened by difference bounds for `x - y`.
  Interval eval(const Expr& e) const;

  Zone join(const Zone& o) const;
  Zone meet(const Zone& o) const;
  // Unstable unary bounds jump to thresholds, unstable differences to +oo.
  Zone widen(const Zone& o, const ThresholdSet& th) const;
  bool leq(const Zone& o) const;

  std::optional<Zone> assign(Var v, const Expr& e) const;
  Zone assume_atom(BinOp cmp, const Expr& l, const Expr& r) const;
  Zone assume(const Expr& cond, bool truth) const { return assume_condition(*this, cond, truth); }
  Zone constrain(Var v, const Interval& i) const;

  // Bounds on v - w, read from the closed matrix.
  Bound diff_upper(Var v, Var w) const;

  std::string print(const Namer& namer) const;
  std::vector<std::string> describe(Var v, const Namer& namer) const;

  const Dbm& dbm() const { return dbm_; }

  friend bool operator==(const Zone&, const Zone&) = default;

 private:
  std::optional<std::size_t> index(Var v) const;
  // Same constraints over the given sorted variable list; variables not in
  // vars_ are unconstrained.
  Zone reshape(const std::vector<Var>& target) const;
  Zone closed() const;

  std::vector<Var> vars_;
  Dbm dbm_;
};

// Constraint line as printed by the debugger: "y - x ≤ -1".
std::string render_difference(const std::string& a, const std::string& b, const Bound& c);

}  // namespace absint::domains
