// Lattice laws, widening termination, and model preservation checked by
// exhaustive enumeration of small boxes.
#include <gtest/gtest.h>

#include <array>
#include <random>

#include "absint/domains/dbm.hpp"
#include "absint/domains/dbm_kernels.hpp"
#include "absint/domains/domain.hpp"

namespace absint::domains {
namespace {

using frontend::Expr;
using frontend::IntType;

constexpr int box = 8;  // points range over [-box, box]

Interval random_interval(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-6, 6), k(0, 9);
  int c = k(rng);
  if (c == 0) return Interval::bottom();
  Bound lo = c == 1 ? Bound::minus_infinity() : Bound(d(rng));
  Bound hi = c == 2 ? Bound::plus_infinity() : Bound(d(rng));
  if (c == 3) return Interval::top();
  if (lo.is_finite() && hi.is_finite() && lo > hi) std::swap(lo, hi);
  return {lo, hi};
}

TEST(IntervalLattice, Laws) {
  std::mt19937 rng(7);
  for (int n = 0; n < 4000; ++n) {
    Interval a = random_interval(rng), b = random_interval(rng), c = random_interval(rng);
    EXPECT_EQ(a.join(b), b.join(a));
    EXPECT_EQ(a.meet(b), b.meet(a));
    EXPECT_EQ(a.join(b).join(c), a.join(b.join(c)));
    EXPECT_EQ(a.meet(b).meet(c), a.meet(b.meet(c)));
    EXPECT_EQ(a.join(a), a);
    EXPECT_EQ(a.meet(a), a);
    EXPECT_EQ(a.join(a.meet(b)), a);
    EXPECT_EQ(a.meet(a.join(b)), a);
    EXPECT_EQ(a.leq(b), a.join(b) == b);
    EXPECT_EQ(a.leq(b), a.meet(b) == a);
    EXPECT_TRUE(Interval::bottom().leq(a));
    EXPECT_TRUE(a.leq(Interval::top()));
    ThresholdSet th({-3, 2, 5});
    Interval w = a.widen(b, th);
    EXPECT_TRUE(a.leq(w));
    EXPECT_TRUE(b.leq(w));
    Interval nr = w.narrow(a.join(b));
    EXPECT_TRUE(a.join(b).leq(nr));
    EXPECT_TRUE(nr.leq(w));
  }
}

TEST(IntervalArithmetic, SoundByEnumeration) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-6, 6);
  using frontend::BinOp;
  const BinOp ops[] = {BinOp::add, BinOp::sub, BinOp::mul, BinOp::div, BinOp::mod,
                       BinOp::lt,  BinOp::le,  BinOp::eq,  BinOp::ne,  BinOp::gt, BinOp::ge};
  for (int n = 0; n < 1500; ++n) {
    int a0 = d(rng), a1 = d(rng), b0 = d(rng), b1 = d(rng);
    if (a0 > a1) std::swap(a0, a1);
    if (b0 > b1) std::swap(b0, b1);
    Interval A(a0, a1), B(b0, b1);
    for (BinOp op : ops) {
      Interval r = apply_binop(op, A, B);
      for (int x = a0; x <= a1; ++x)
        for (int y = b0; y <= b1; ++y) {
          std::int64_t v;
          switch (op) {
            case BinOp::add: v = x + y; break;
            case BinOp::sub: v = x - y; break;
            case BinOp::mul: v = x * y; break;
            case BinOp::div: if (y == 0) continue; v = x / y; break;
            case BinOp::mod: if (y == 0) continue; v = x % y; break;
            case BinOp::lt: v = x < y; break;
            case BinOp::le: v = x <= y; break;
            case BinOp::eq: v = x == y; break;
            case BinOp::ne: v = x != y; break;
            case BinOp::gt: v = x > y; break;
            default: v = x >= y; break;
          }
          ASSERT_TRUE(r.contains(v)) << A.to_string() << " " << frontend::to_string(op) << " "
                                     << B.to_string() << " = " << r.to_string() << " misses " << v;
        }
    }
    Interval neg = -A;
    for (int x = a0; x <= a1; ++x) ASSERT_TRUE(neg.contains(-x));
  }
}

// Widening an increasing chain changes each bound at most |thresholds|+2
// times: every unstable bound moves to the next landmark or to infinity.
TEST(IntervalWidening, StabilizesWithinThresholdCount) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> step(0, 40), pick(-100, 100), count(0, 8);
  for (int n = 0; n < 500; ++n) {
    std::vector<std::int64_t> extra;
    for (int k = count(rng); k > 0; --k) extra.push_back(pick(rng));
    ThresholdSet th(extra);
    int lo = pick(rng), hi = lo;
    Interval w = Interval::constant(lo);
    int lo_changes = 0, hi_changes = 0;
    for (int k = 0; k < 200; ++k) {
      lo -= step(rng);
      hi += step(rng);
      Interval x(lo, hi);
      Interval next = w.widen(w.join(x), th);
      if (next.lo() != w.lo()) ++lo_changes;
      if (next.hi() != w.hi()) ++hi_changes;
      EXPECT_TRUE(x.leq(next));
      w = next;
    }
    EXPECT_LE(lo_changes, static_cast<int>(th.size()) + 2);
    EXPECT_LE(hi_changes, static_cast<int>(th.size()) + 2);
  }
}

// ---- DBM ------------------------------------------------------------------

using Point = std::array<int, 4>;  // index 0 is the constant zero

bool satisfies(const Dbm& m, const Point& p) {
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) {
      const Bound& c = m.at(i, j);
      if (c.is_finite() && p[i] - p[j] > c.value()) return false;
    }
  return true;
}

template <class F>
void for_each_point(std::size_t vars, F&& f) {
  Point p{0, 0, 0, 0};
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i > vars) {
      f(p);
      return;
    }
    for (int v = -box; v <= box; ++v) {
      p[i] = v;
      rec(i + 1);
    }
  };
  rec(1);
}

Dbm random_dbm(std::mt19937& rng, std::size_t dim) {
  std::uniform_int_distribution<int> c(-box, box), keep(0, 2);
  Dbm m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (i != j && keep(rng) == 0) m.add_constraint(i, j, c(rng));
  return m;
}

TEST(DbmClosure, PreservesModelsExhaustively) {
  std::mt19937 rng(5);
  for (int n = 0; n < 300; ++n) {
    const std::size_t vars = 1 + static_cast<std::size_t>(n % 3);
    Dbm m = random_dbm(rng, vars + 1);
    Dbm c = m.close();
    bool any = false;
    for_each_point(vars, [&](const Point& p) {
      bool in = satisfies(m, p);
      any = any || in;
      if (!c.is_bottom()) ASSERT_EQ(in, satisfies(c, p));
    });
    if (c.is_bottom()) EXPECT_FALSE(any);
    if (!c.is_bottom()) {
      // Closure is a fixpoint and every entry is tight on the box models.
      EXPECT_EQ(c.close(), c);
      for (std::size_t i = 0; i < c.dim(); ++i)
        for (std::size_t j = 0; j < c.dim(); ++j) EXPECT_LE(c.at(i, j), m.at(i, j));
    }
  }
}

TEST(DbmClosure, ParallelKernelMatchesSerial) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> c(-50, 200), keep(0, 3);
  for (std::size_t n : {2u, 17u, 64u, 97u, 130u}) {
    std::vector<Bound> a(n * n, Bound::plus_infinity());
    for (std::size_t i = 0; i < n; ++i) a[i * n + i] = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && keep(rng) == 0) a[i * n + j] = c(rng);
    auto b = a;
    bool ra = dbm_kernels::close_serial(a, n);
    bool rb = dbm_kernels::close_parallel(b, n);
    EXPECT_EQ(ra, rb);
    EXPECT_EQ(a, b);
  }
}

// ---- zones ---------------------------------------------------------------

constexpr Var X = 1, Y = 2;

frontend::ExprPtr var(Var v) {
  auto e = std::make_shared<Expr>(*Expr::var(v == X ? "x" : "y", static_cast<int>(v), {}));
  e->type = IntType::math;
  return e;
}
frontend::ExprPtr lit(std::int64_t c) { return Expr::int_lit(c, {}, IntType::math); }
frontend::ExprPtr sub(frontend::ExprPtr a, frontend::ExprPtr b) {
  return Expr::binop(frontend::BinOp::sub, std::move(a), std::move(b), {}, IntType::math);
}
frontend::ExprPtr add(frontend::ExprPtr a, frontend::ExprPtr b) {
  return Expr::binop(frontend::BinOp::add, std::move(a), std::move(b), {}, IntType::math);
}

template <class D>
D random_state(std::mt19937& rng) {
  std::uniform_int_distribution<int> c(-box, box), kind(0, 5), n(0, 4);
  D d = D::top().add_var(X).add_var(Y);
  for (int k = n(rng); k > 0; --k) {
    switch (kind(rng)) {
      case 0: d = d.constrain(X, Interval(c(rng), c(rng) + box)); break;
      case 1: d = d.constrain(Y, Interval(c(rng) - box, c(rng))); break;
      case 2: d = d.assume_atom(frontend::BinOp::le, *sub(var(X), var(Y)), *lit(c(rng))); break;
      case 3: d = d.assume_atom(frontend::BinOp::ge, *sub(var(Y), var(X)), *lit(c(rng))); break;
      case 4: d = d.assume_atom(frontend::BinOp::lt, *var(X), *add(var(Y), lit(c(rng)))); break;
      default: d = d.constrain(X, Interval(-box, box)).constrain(Y, Interval(-box, box)); break;
    }
  }
  return d;
}

template <class D>
bool model(const D& d, int x, int y) {
  if (d.is_bottom()) return false;
  // The point is a model when pinning both variables keeps the state alive.
  return !d.constrain(X, Interval::constant(x)).constrain(Y, Interval::constant(y)).is_bottom();
}

template <class D>
void lattice_laws(std::uint32_t seed) {
  std::mt19937 rng(seed);
  ThresholdSet th({-4, 0, 4});
  for (int n = 0; n < 150; ++n) {
    D a = random_state<D>(rng), b = random_state<D>(rng);
    D j = a.join(b), m = a.meet(b), w = a.widen(b, th);
    EXPECT_TRUE(a.leq(j));
    EXPECT_TRUE(b.leq(j));
    EXPECT_TRUE(m.leq(a));
    EXPECT_TRUE(m.leq(b));
    EXPECT_TRUE(a.leq(a));
    EXPECT_TRUE(a.leq(w));
    EXPECT_TRUE(b.leq(w));
    EXPECT_TRUE(D::bottom().leq(a));
    for (int x = -box; x <= box; ++x)
      for (int y = -box; y <= box; ++y) {
        const bool ma = model(a, x, y), mb = model(b, x, y);
        if (ma || mb) ASSERT_TRUE(model(j, x, y));
        ASSERT_EQ(ma && mb, model(m, x, y)) << "meet";
        if (a.leq(b) && ma) ASSERT_TRUE(mb) << "leq";
      }
  }
}

TEST(ZoneLattice, Laws) { lattice_laws<Zone>(21); }
TEST(IntervalEnvLattice, Laws) { lattice_laws<IntervalEnv>(22); }
TEST(ProductLattice, Laws) { lattice_laws<ProductState>(23); }

// Transfer functions keep every concrete successor.
template <class D>
void transfer_soundness(std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int n = 0; n < 120; ++n) {
    D d = random_state<D>(rng);
    const int k = c(rng);
    auto assigned = d.assign(X, *add(var(Y), lit(k)));
    ASSERT_TRUE(assigned.has_value());
    auto shifted = d.assign(X, *add(var(X), lit(k)));
    ASSERT_TRUE(shifted.has_value());
    D pos = d.assume_atom(frontend::BinOp::le, *sub(var(X), var(Y)), *lit(k));
    D neg = d.assume_atom(frontend::BinOp::gt, *sub(var(X), var(Y)), *lit(k));
    for (int x = -box; x <= box; ++x)
      for (int y = -box; y <= box; ++y) {
        if (!model(d, x, y)) continue;
        if (std::abs(y + k) <= box) ASSERT_TRUE(model(*assigned, y + k, y));
        if (std::abs(x + k) <= box) ASSERT_TRUE(model(*shifted, x + k, y));
        ASSERT_TRUE(x - y <= k ? model(pos, x, y) : model(neg, x, y));
      }
  }
}

TEST(ZoneTransfer, Sound) { transfer_soundness<Zone>(31); }
TEST(IntervalEnvTransfer, Sound) { transfer_soundness<IntervalEnv>(32); }
TEST(ProductTransfer, Sound) { transfer_soundness<ProductState>(33); }

TEST(ProductReduction, PreservesModelsAndTightensIntervals) {
  std::mt19937 rng(41);
  for (int n = 0; n < 300; ++n) {
    IntervalEnv i = random_state<IntervalEnv>(rng);
    Zone z = random_state<Zone>(rng);
    ProductState raw(i, z);
    ProductState red = raw.reduce();
    for (int x = -box; x <= box; ++x)
      for (int y = -box; y <= box; ++y) {
        const bool before = model(i, x, y) && model(z, x, y);
        const bool after = model(red.intervals(), x, y) && model(red.zones(), x, y);
        ASSERT_EQ(before, after);
      }
    if (red.is_bottom()) {
      EXPECT_TRUE(red.intervals().is_bottom());
      EXPECT_TRUE(red.zones().is_bottom());
      continue;
    }
    for (Var v : {X, Y}) EXPECT_TRUE(red.intervals().project(v).leq(red.zones().project(v)));
  }
}

TEST(ZoneRendering, DifferenceLines) {
  Zone z = Zone::top().add_var(X).add_var(Y).assume_atom(frontend::BinOp::le, *sub(var(Y), var(X)),
                                                         *lit(-1));
  auto lines = z.describe(Y, [](Var v) { return v == X ? std::string("x") : std::string("y"); });
  EXPECT_EQ(lines.front(), "y ∈ [-oo, +oo]");
  EXPECT_NE(std::find(lines.begin(), lines.end(), "y - x ≤ -1"), lines.end());
}

}  // namespace
}  // namespace absint::domains
