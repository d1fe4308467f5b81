#include "absint/domains/interval_env.hpp"

namespace absint::domains {

std::string render_interval(const std::string& name, const Interval& i) {
  return name + " ∈ " + i.to_string();
}

std::vector<Var> IntervalEnv::vars() const {
  std::vector<Var> out;
  for (const auto& [v, _] : env_) out.push_back(v);
  return out;
}

IntervalEnv IntervalEnv::add_var(Var v) const {
  IntervalEnv r = *this;
  if (reachable_) r.env_[v] = Interval::top();
  return r;
}

IntervalEnv IntervalEnv::remove_var(Var v) const {
  IntervalEnv r = *this;
  r.env_.erase(v);
  return r;
}

IntervalEnv IntervalEnv::forget(Var v) const {
  IntervalEnv r = *this;
  if (reachable_) r.env_[v] = Interval::top();
  return r;
}

Interval IntervalEnv::project(Var v) const {
  if (!reachable_) return {};
  auto it = env_.find(v);
  return it == env_.end() ? Interval::top() : it->second;
}

Interval IntervalEnv::eval(const Expr& e) const {
  if (!reachable_) return {};
  return eval_interval(e, [this](Var v) { return project(v); });
}

IntervalEnv IntervalEnv::join(const IntervalEnv& o) const {
  if (!reachable_) return o;
  if (!o.reachable_) return *this;
  IntervalEnv r = top();
  for (const auto& [v, i] : env_) {
    auto it = o.env_.find(v);
    if (it != o.env_.end()) r.env_[v] = i.join(it->second);
  }
  return r;
}

IntervalEnv IntervalEnv::meet(const IntervalEnv& o) const {
  if (!reachable_ || !o.reachable_) return bottom();
  IntervalEnv r = *this;
  for (const auto& [v, i] : o.env_) {
    Interval m = r.project(v).meet(i);
    if (m.is_bottom()) return bottom();
    r.env_[v] = m;
  }
  return r;
}

IntervalEnv IntervalEnv::widen(const IntervalEnv& o, const ThresholdSet& th) const {
  if (!reachable_) return o;
  if (!o.reachable_) return *this;
  IntervalEnv r = top();
  for (const auto& [v, i] : env_) {
    auto it = o.env_.find(v);
    if (it != o.env_.end()) r.env_[v] = i.widen(it->second, th);
  }
  return r;
}

bool IntervalEnv::leq(const IntervalEnv& o) const {
  if (!reachable_) return true;
  if (!o.reachable_) return false;
  for (const auto& [v, i] : o.env_)
    if (!project(v).leq(i)) return false;
  return true;
}

IntervalStore IntervalEnv::store() {
  return {[this](Var v) { return project(v); },
          [this](Var v, const Interval& i) {
            Interval m = project(v).meet(i);
            if (m.is_bottom()) return false;
            env_[v] = m;
            return true;
          }};
}

std::optional<IntervalEnv> IntervalEnv::assign(Var v, const Expr& e) const {
  if (!reachable_) return *this;
  Interval value = eval(e);
  if (value.is_bottom()) return bottom();
  IntervalEnv r = *this;
  r.env_[v] = value;
  return r;
}

IntervalEnv IntervalEnv::assume_atom(BinOp cmp, const Expr& l, const Expr& r) const {
  if (!reachable_) return *this;
  IntervalEnv out = *this;
  if (!refine_compare(cmp, l, r, out.store())) return bottom();
  return out;
}

IntervalEnv IntervalEnv::constrain(Var v, const Interval& i) const {
  if (!reachable_) return *this;
  Interval m = project(v).meet(i);
  if (m.is_bottom()) return bottom();
  IntervalEnv r = *this;
  r.env_[v] = m;
  return r;
}

std::string IntervalEnv::print(const Namer& namer) const {
  if (!reachable_) return "_|_";
  std::string out;
  for (const auto& [v, i] : env_) {
    std::string n = namer(v);
    if (n.empty()) continue;
    if (!out.empty()) out += "\n";
    out += render_interval(n, i);
  }
  return out;
}

std::vector<std::string> IntervalEnv::describe(Var v, const Namer& namer) const {
  if (!reachable_) return {"_|_"};
  return {render_interval(namer(v), project(v))};
}

}  // namespace absint::domains
