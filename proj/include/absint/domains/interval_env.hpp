#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absint/domains/expr_eval.hpp"

namespace absint::domains {

// Display name of a variable; empty for variables that should not be shown.
using Namer = std::function<std::string(Var)>;

// "y ∈ [-1, 2147483647]"
std::string render_interval(const std::string& name, const Interval& i);

// Non-relational environment: one interval per variable plus reachability.
class IntervalEnv {
 public:
  static constexpr const char* name = "intervals";

  static IntervalEnv top() { return IntervalEnv(true); }
  static IntervalEnv bottom() { return IntervalEnv(false); }

  bool is_bottom() const { return !reachable_; }
  bool has_var(Var v) const { return env_.count(v) != 0; }
  std::vector<Var> vars() const;

  IntervalEnv add_var(Var v) const;
  IntervalEnv remove_var(Var v) const;
  IntervalEnv forget(Var v) const;

  Interval project(Var v) const;
  Interval eval(const Expr& e) const;

  IntervalEnv join(const IntervalEnv& o) const;
  IntervalEnv meet(const IntervalEnv& o) const;
  IntervalEnv widen(const IntervalEnv& o, const ThresholdSet& th) const;
  bool leq(const IntervalEnv& o) const;

  std::optional<IntervalEnv> assign(Var v, const Expr& e) const;
  IntervalEnv assume_atom(BinOp cmp, const Expr& l, const Expr& r) const;
  IntervalEnv assume(const Expr& cond, bool truth) const {
    return assume_condition(*this, cond, truth);
  }
  // Meets v with i.
  IntervalEnv constrain(Var v, const Interval& i) const;

  std::string print(const Namer& namer) const;
  std::vector<std::string> describe(Var v, const Namer& namer) const;

  friend bool operator==(const IntervalEnv&, const IntervalEnv&) = default;

 private:
  explicit IntervalEnv(bool reachable) : reachable_(reachable) {}
  IntervalStore store();

  std::map<Var, Interval> env_;
  bool reachable_ = true;
};

}  // namespace absint::domains
