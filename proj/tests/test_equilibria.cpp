#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "patchdyn/equilibria.hpp"
#include "patchdyn/error.hpp"
#include "test_util.hpp"

using namespace patchdyn;
using cd = std::complex<double>;

namespace {

const Equilibrium* find_kind(const std::vector<Equilibrium>& eqs, EquilibriumKind k) {
  for (const auto& e : eqs)
    if (e.kind == k) return &e;
  return nullptr;
}

double dist(const State4& a, const State4& b) {
  double m = 0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(Boundary, BothPredatorsUnviable) {
  ModelParams p = testutil::fig1(0.3, 0.2);
  p.a1 = 0.21;
  p.a2 = 0.12;
  const auto eqs = boundary_equilibria(p);
  ASSERT_EQ(eqs.size(), 4u);
  const auto* bk = find_kind(eqs, EquilibriumKind::BothK);
  ASSERT_NE(bk, nullptr);
  EXPECT_EQ(bk->stability, Stability::Sink);
}

TEST(Boundary, Fig1Inventory) {
  const ModelParams p = testutil::fig1(0.1, 0.025);
  const auto eqs = boundary_equilibria(p);
  ASSERT_EQ(eqs.size(), 8u);
  const auto* bk = find_kind(eqs, EquilibriumKind::BothK);
  ASSERT_NE(bk, nullptr);
  std::array<cd, 4> want = {cd(-1), cd(0.25 * 5 / 6 - 0.2), cd(-1.5), cd(0.15 * 3 / 4 - 0.1)};
  EXPECT_LT(oracle::multiset_distance(bk->eigenvalues, want), 1e-12);
  EXPECT_EQ(bk->stability, Stability::Saddle);
  const auto* e1 = find_kind(eqs, EquilibriumKind::PredatorIn1PreyIn2);
  ASSERT_NE(e1, nullptr);
  EXPECT_LT(dist(e1->state, {4, 4, 3, 0}), 1e-13);
  const auto* e2 = find_kind(eqs, EquilibriumKind::PreyIn1PredatorIn2);
  ASSERT_NE(e2, nullptr);
  EXPECT_LT(dist(e2->state, {5, 0, 2, 10}), 1e-12);
  for (const auto& e : eqs) EXPECT_LT(e.residual, 1e-9);
}

TEST(Boundary, NeverTwoSinkPredatorBoundaries) {
  std::mt19937_64 g(31);
  for (int k = 0; k < 500; ++k) {
    const ModelParams p = oracle::random_coexisting(g);
    const auto eqs = boundary_equilibria(p);
    const auto* a = find_kind(eqs, EquilibriumKind::PredatorIn1PreyIn2);
    const auto* b = find_kind(eqs, EquilibriumKind::PreyIn1PredatorIn2);
    ASSERT_TRUE(a && b);
    EXPECT_FALSE(a->stability == Stability::Sink && b->stability == Stability::Sink);
  }
}

TEST(Boundary, ResidualsSmall) {
  std::mt19937_64 g(32);
  for (int k = 0; k < 300; ++k) {
    const ModelParams p = oracle::random_params(g);
    for (const auto& e : boundary_equilibria(p)) EXPECT_LT(e.residual, 1e-9);
  }
}

TEST(Nullclines, EndpointValues) {
  std::mt19937_64 g(33);
  for (int k = 0; k < 300; ++k) {
    const ModelParams p = oracle::random_coexisting(g);
    const NullclineFns nf = nullclines(p);
    const auto dq = derived(p);
    EXPECT_NEAR(eval_F(nf, p.K2), dq.mu[0], 1e-10 * dq.mu[0]);
    EXPECT_NEAR(eval_G(nf, p.K1), dq.mu[1], 1e-10 * dq.mu[1]);
    const double F0 = p.a2 * p.d1 / (p.a1 * p.r * p.rho1 + p.a1 * p.a2 - p.a2 * p.d1);
    EXPECT_NEAR(eval_F(nf, 0.0), F0, 1e-12 * std::fabs(F0));
    for (int s = 0; s <= 20; ++s) {
      EXPECT_GE(nf.ft(p.K2 * s / 20.0), p.a2 * p.K2 * p.d1 * (1 - 1e-14));
      EXPECT_GE(nf.gt(p.K1 * s / 20.0), p.a1 * p.K1 * p.d2 * (1 - 1e-14));
    }
  }
}

TEST(Nullclines, SymmetricFixedPoint) {
  const ModelParams p = testutil::symmetric(5, 0.27, 0.2, 0.4, 0.15);
  const NullclineFns nf = nullclines(p);
  const double mu = 0.2 / 0.07;
  EXPECT_NEAR(eval_F(nf, mu), mu, 1e-12);
  EXPECT_NEAR(eval_G(nf, mu), mu, 1e-12);
}

TEST(Nullclines, PoleThrows) {
  ModelParams p = testutil::fig1(0.3, 0.2);
  const NullclineFns nf = nullclines(p);
  // root of fb: for a1 != a2 the quadratic has a real root somewhere
  const auto roots = scan_real_roots(nf.fb.poly(), -100, 100);
  if (roots.empty()) GTEST_SKIP();
  try {
    eval_F(nf, roots[0]);
    FAIL() << "no pole error";
  } catch (const PoleError& e) {
    EXPECT_NEAR(e.location(), roots[0], 1e-12);
  }
}

TEST(CriticalPoint, StationaryAndMatchesGoldenSection) {
  std::mt19937_64 g(34);
  int checked = 0;
  for (int k = 0; k < 400; ++k) {
    const ModelParams p = oracle::random_coexisting(g);
    const NullclineFns nf = nullclines(p);
    for (int patch = 0; patch < 2; ++patch) {
      const auto xc = critical_point(p, patch);
      if (!xc) continue;
      const double K = patch == 0 ? p.K1 : p.K2;
      auto f = [&](double x) { return patch == 0 ? eval_G(nf, x) : eval_F(nf, x); };
      ASSERT_GT(*xc, 0.0);
      ASSERT_LT(*xc, K);
      double fx = 0;
      try {
        const double h = 1e-6 * (1 + *xc);
        fx = (f(*xc + h) - f(*xc - h)) / (2 * h);
      } catch (const PoleError&) {
        continue;
      }
      const double scale = std::max(1.0, std::fabs(f(*xc)));
      EXPECT_LT(std::fabs(fx), 1e-6 * scale);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(CriticalPoint, SmallDispersalLimit) {
  // equal attack rates: the stationary point of F tends to (K + mu) / 2 as rho -> 0
  const ModelParams p = testutil::symmetric(5, 0.27, 0.2, 1e-6, 1e-6);
  const NullclineFns nf = nullclines(p);
  const auto xc = critical_point(p, 1);
  ASSERT_TRUE(xc.has_value());
  const double mu = 0.2 / 0.07;
  EXPECT_NEAR(*xc, 0.5 * (5 + mu), 1e-4);
  auto F = [&](double x) { return eval_F(nf, x); };
  const double fmax = oracle::golden_max(F, 0.0, p.K2);
  const double fmin = oracle::golden_max([&](double x) { return -F(x); }, 0.0, p.K2);
  const bool interior_max = fmax > 1e-6 && fmax < p.K2 - 1e-6;
  EXPECT_NEAR(*xc, interior_max ? fmax : fmin, 1e-4);
}

TEST(CriticalPoint, SymmetricAboveMu) {
  const ModelParams p = testutil::symmetric(5, 0.27, 0.2, 0.4, 0.4);
  const auto xc = critical_point(p, 1);
  ASSERT_TRUE(xc.has_value());
  EXPECT_GT(*xc, 0.2 / 0.07);
  EXPECT_LT(*xc, 5.0);
}

TEST(CriticalPoint, UndefinedWithoutDispersal) {
  EXPECT_FALSE(critical_point(testutil::fig1(), 0).has_value());
  EXPECT_FALSE(critical_point(testutil::fig1(), 1).has_value());
}

TEST(Interior, NoneWhenPredatorsUnviable) {
  std::mt19937_64 g(35);
  for (int k = 0; k < 100; ++k) {
    ModelParams p = oracle::random_params(g);
    p.a1 = oracle::a_for_mu(p.d1, p.K1 * oracle::u(g, 1.05, 5));
    p.a2 = oracle::a_for_mu(p.d2, p.K2 * oracle::u(g, 1.05, 5));
    EXPECT_TRUE(interior_equilibria(p).empty());
  }
}

TEST(Interior, EqualDeathRatesContainCoexistencePoint) {
  std::mt19937_64 g(36);
  for (int k = 0; k < 200; ++k) {
    ModelParams p = oracle::random_coexisting(g);
    p.d2 = p.d1;
    p.a2 = oracle::a_for_mu(p.d2, oracle::u(g, 0.05, 0.95) * p.K2);
    const auto dq = derived(p);
    const State4 want = {dq.mu[0], dq.nu[0], dq.mu[1], dq.nu[1]};
    double best = INFINITY;
    for (const auto& e : interior_equilibria(p)) best = std::min(best, dist(e.state, want) / (1 + dq.nu[0] + dq.nu[1]));
    EXPECT_LT(best, 1e-9);
  }
}

TEST(Interior, FullySymmetricUnique) {
  for (double rho : {0.0, 0.05, 0.3, 2.0}) {
    const ModelParams p = testutil::symmetric(5, 0.27, 0.2, rho, 0.7 * rho);
    const auto eqs = interior_equilibria(p);
    ASSERT_EQ(eqs.size(), 1u) << rho;
    const double mu = 0.2 / 0.07;
    EXPECT_LT(dist(eqs[0].state, {mu, prey_nullcline(1, 5, 0.27, mu), mu, prey_nullcline(1, 5, 0.27, mu)}), 1e-9);
  }
}

TEST(Interior, ZeroDispersalIsUncoupledPoint) {
  const auto eqs = interior_equilibria(testutil::fig1());
  ASSERT_EQ(eqs.size(), 1u);
  EXPECT_LT(dist(eqs[0].state, {4, 4, 2, 10}), 1e-9);
}

TEST(Interior, Fig1Point) {
  const auto eqs = interior_equilibria(testutil::fig1(0.1, 0.025));
  ASSERT_GE(eqs.size(), 1u);
  for (const auto& e : eqs) {
    EXPECT_LT(e.residual, 1e-9);
    for (double v : e.state) EXPECT_GT(v, 0.0);
  }
}

TEST(Interior, MatchesBruteForceOracle) {
  std::mt19937_64 g(37);
  int compared = 0, nonzero = 0;
  for (int k = 0; k < 300; ++k) {
    const ModelParams p = oracle::random_params(g);
    const auto eqs = interior_equilibria(p);
    if (std::any_of(eqs.begin(), eqs.end(), [](const Equilibrium& e) { return e.degenerate; })) continue;
    const auto ref = oracle::brute_force_interior_x1(p);
    ++compared;
    nonzero += !ref.empty();
    ASSERT_EQ(eqs.size(), ref.size()) << k;
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(eqs[i].state[0], ref[i], 1e-6);
  }
  EXPECT_GT(compared, 250);
  EXPECT_GT(nonzero, 30);
}

TEST(Existence, PredicatesConsistentWithRootFinder) {
  std::mt19937_64 g(38);
  int exist = 0, none = 0;
  for (int k = 0; k < 2000; ++k) {
    ModelParams p = oracle::random_params(g);
    if (k % 3 == 0) p.a2 = p.a1;
    const auto rep = theorem6_existence_report(p);
    const auto eqs = interior_equilibria(p);
    if (rep.flag("interior_exists_sufficient") == Verdict::True) {
      ++exist;
      EXPECT_GE(eqs.size(), 1u) << k;
    }
    if (rep.flag("no_interior_sufficient") == Verdict::True) {
      ++none;
      EXPECT_TRUE(eqs.empty()) << k;
    }
  }
  EXPECT_GT(exist, 20);
  EXPECT_GT(none, 20);
}

TEST(Existence, SameUptakeNonexistence) {
  ModelParams p = testutil::symmetric(5, 0.27, 0.2, 0.1, 0.1);
  p.K2 = 3;
  p.d1 = 0.27 + p.r * p.rho1 + 0.1;
  const auto rep = theorem6_existence_report(p);
  const auto* e = rep.find("Th6", "case2_nonexist");
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->fired, Verdict::True);
  EXPECT_TRUE(interior_equilibria(p).empty());
}

TEST(Existence, LowerBoundBracketsInterior) {
  std::mt19937_64 g(39);
  for (int k = 0; k < 2000; ++k) {
    const ModelParams p = oracle::random_params(g);
    const auto rep = theorem6_existence_report(p);
    for (int i = 0; i < 2; ++i) {
      const std::string tag = i == 0 ? "(i=1,j=2)" : "(i=2,j=1)";
      const auto* ex = rep.find("Th6", "case1_exist" + tag);
      if (!ex || ex->fired != Verdict::True) continue;
      const auto* lb = rep.find("Th6", "case1_lower_bound_x_j" + tag);
      ASSERT_NE(lb, nullptr);
      double lower = 0;
      for (const auto& [n, v] : lb->values)
        if (n == "lower") lower = v;
      const std::size_t xj = i == 0 ? kX2 : kX1;
      // at rho_j = 0 the bound is mu_j and predator j pins x_j there
      const double rho_j = i == 0 ? p.rho2 : p.rho1;
      for (const auto& e : interior_equilibria(p)) {
        if (rho_j == 0.0)
          EXPECT_GE(e.state[xj], lower * (1 - 1e-12));
        else
          EXPECT_GT(e.state[xj], lower);
      }
    }
  }
}

TEST(AllEquilibria, CanonicalOrderAndResiduals) {
  const auto eqs = all_equilibria(testutil::fig1(0.1, 0.025));
  EXPECT_EQ(eqs.size(), 9u);
  for (std::size_t i = 1; i < eqs.size(); ++i) EXPECT_LE(static_cast<int>(eqs[i - 1].kind), static_cast<int>(eqs[i].kind));
}
