#include "soundness_check.hpp"

#include <functional>
#include <memory>
#include <set>
#include <stdexcept>

#include "absint/frontend/concrete.hpp"
#include "absint/hooks/coverage.hpp"
#include "absint/hooks/hook.hpp"
#include "support.hpp"

namespace absint::testing {

namespace {

using frontend::Expr;
using frontend::Program;

void collect_rands(const Expr& e, std::vector<const Expr*>& out) {
  if (e.kind == Expr::Kind::rand) out.push_back(&e);
  if (e.lhs) collect_rands(*e.lhs, out);
  if (e.rhs) collect_rands(*e.rhs, out);
}

std::vector<const Expr*> collect_sites(const Program& p) {
  std::vector<const Expr*> out;
  for (const auto& f : p.functions)
    frontend::for_each_stmt(f.body, [&](const frontend::Stmt& s) {
      if (s.expr) collect_rands(*s.expr, out);
      for (const auto& a : s.args) collect_rands(*a, out);
    });
  return out;
}

engine::CheckKind kind_of(frontend::RuntimeErrorKind k) {
  switch (k) {
    case frontend::RuntimeErrorKind::overflow: return engine::CheckKind::integer_overflow;
    case frontend::RuntimeErrorKind::div_by_zero: return engine::CheckKind::division_by_zero;
    case frontend::RuntimeErrorKind::mod_by_zero: return engine::CheckKind::modulo_by_zero;
    case frontend::RuntimeErrorKind::assert_failure: return engine::CheckKind::assert_failure;
  }
  return engine::CheckKind::assert_failure;
}

}  // namespace

std::vector<const Expr*> rand_sites(const Program& p) { return collect_sites(p); }

void check_soundness(const std::string& text, const std::string& cfg_name, SoundnessStats& v) {
  Program prog = parse_text(text);
  auto sites = rand_sites(prog);

  hooks::HookBus bus;
  auto cov = std::make_shared<hooks::CoverageHook>();
  bus.add(cov);
  engine::AnalysisOptions opts;
  opts.program_id = "t.mini";
  opts.hooks = &bus;
  engine::Report rep = engine::analyze(prog, config(cfg_name), opts);
  if (rep.crash) throw std::runtime_error("analysis crashed: " + rep.crash->message + "\n" + text);
  std::set<frontend::SourceLoc> uncovered;
  for (const auto& f : cov->summary().functions)
    uncovered.insert(f.uncovered.begin(), f.uncovered.end());

  std::vector<std::int64_t> values(sites.size());
  std::function<void(std::size_t)> enumerate = [&](std::size_t i) {
    if (i < sites.size()) {
      for (std::int64_t x = sites[i]->lo; x <= sites[i]->hi; ++x) {
        values[i] = x;
        enumerate(i + 1);
      }
      return;
    }
    frontend::InputResolver in;
    in.rand = [&](const Expr& site, std::size_t) {
      for (std::size_t k = 0; k < sites.size(); ++k)
        if (sites[k] == &site) return values[k];
      return site.lo;
    };
    frontend::ConcreteOptions copts;
    copts.observer = [&](const frontend::FuncDef&, const frontend::Stmt& s,
                         const std::vector<std::pair<int, std::int64_t>>&) {
      if (uncovered.count(s.loc)) {
        ++v.unreached;
        if (v.samples.size() < 5)
          v.samples.push_back(cfg_name + ": concretely reached " + s.loc.to_string() +
                              " is abstractly unreachable\n" + text);
      }
    };
    auto out = frontend::interpret_concrete(prog, in, copts);
    ++v.concrete_runs;
    if (out.status != frontend::ConcreteOutcome::Status::runtime_error) return;
    ++v.concrete_errors;
    const auto kind = kind_of(*out.error);
    bool alarmed = false;
    for (const auto& c : rep.checks)
      if (c.loc == *out.error_loc && c.kind == kind && c.status == engine::CheckStatus::alarm)
        alarmed = true;
    if (!alarmed) {
      ++v.errors_missed;
      if (v.samples.size() < 5)
        v.samples.push_back(cfg_name + ": " + frontend::to_string(*out.error) + " at " +
                            out.error_loc->to_string() + " not alarmed\n" + text);
    }
  };
  enumerate(0);
}

}  // namespace absint::testing
