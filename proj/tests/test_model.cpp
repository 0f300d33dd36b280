#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "patchdyn/dynamics.hpp"
#include "patchdyn/error.hpp"
#include "patchdyn/model.hpp"
#include "patchdyn/params_io.hpp"
#include "test_util.hpp"

using namespace patchdyn;

TEST(Holling, Values) {
  EXPECT_EQ(holling(0.3, 0.0), 0.0);
  EXPECT_NEAR(holling(0.25, 4.0), 0.2, 1e-15);
  EXPECT_NEAR(holling(0.7, 1e9), 0.7, 1e-8);
}

TEST(Holling, MonotoneBelowAsymptote) {
  double prev = -1.0;
  for (double x = 0.0; x < 100.0; x += 0.37) {
    const double v = holling(0.4, x);
    EXPECT_GT(v, prev);
    EXPECT_LT(v, 0.4);
    prev = v;
  }
}

TEST(PreyNullcline, Values) {
  EXPECT_EQ(prey_nullcline(1.3, 4.0, 0.2, 4.0), 0.0);
  EXPECT_NEAR(prey_nullcline(1, 5, 0.25, 4), 4.0, 1e-14);
  EXPECT_NEAR(prey_nullcline(1.5, 3, 0.15, 2), 10.0, 1e-13);
}

TEST(PreyNullcline, MaximumIdentity) {
  std::mt19937_64 g(3);
  for (int k = 0; k < 100; ++k) {
    const double r = oracle::u(g, 0.5, 2), K = oracle::u(g, 1.1, 10), a = oracle::u(g, 0.1, 1);
    const double xm = oracle::golden_max([&](double x) { return prey_nullcline(r, K, a, x); }, 0.0, K);
    EXPECT_NEAR(xm, (K - 1) / 2, 1e-5);
    EXPECT_NEAR(prey_nullcline(r, K, a, xm), r * (K + 1) * (K + 1) / (4 * a * K), 1e-9);
  }
}

TEST(Derived, MuNuHopf) {
  const auto q = derived(testutil::fig1());
  EXPECT_NEAR(q.mu[0], 4.0, 1e-14);
  EXPECT_NEAR(q.mu[1], 2.0, 1e-14);
  EXPECT_NEAR(q.nu[0], 4.0, 1e-13);
  EXPECT_NEAR(q.nu[1], 10.0, 1e-13);
  EXPECT_EQ(q.hopf[0], 2.0);
  EXPECT_EQ(q.hopf[1], 1.0);
}

TEST(Derived, MuSentinel) {
  ModelParams p = testutil::fig1();
  p.a1 = 0.2;
  p.a2 = 0.05;
  const auto q = derived(p);
  EXPECT_TRUE(std::isinf(q.mu[0]) && q.mu[0] > 0);
  EXPECT_TRUE(std::isinf(q.mu[1]) && q.mu[1] > 0);
}

TEST(HatQuantities, Examples) {
  ModelParams p = testutil::fig1(1.0, 1.0);
  p.variant = Variant::DensityDriven;
  const auto h = hat_quantities(p);
  EXPECT_NEAR(h.dhat[0], 0.2 + 0.1 / 1.1, 1e-15);
  EXPECT_NEAR(h.dhat[0], 0.290909090909, 1e-11);

  const auto h0 = hat_quantities(testutil::fig1());
  const auto q = derived(testutil::fig1());
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(h0.dhat[i], i == 0 ? 0.2 : 0.1);
    EXPECT_DOUBLE_EQ(h0.muhat[i], q.mu[i]);
  }
}

TEST(Rhs, UncoupledEquilibriumIsZero) {
  const State4 f = rhs(testutil::fig1(), {4, 4, 2, 10});
  for (double v : f) EXPECT_NEAR(v, 0.0, 1e-14);
}

TEST(Rhs, ZeroDispersalMatchesSinglePatch) {
  std::mt19937_64 g(11);
  for (int k = 0; k < 200; ++k) {
    ModelParams p = oracle::random_params(g, k % 2 ? Variant::DensityDriven : Variant::StrengthDriven);
    p.rho1 = p.rho2 = 0;
    const State4 s = oracle::random_state(g, p);
    const State4 f = rhs(p, s);
    const auto f1 = single_patch_rhs(1.0, p.K1, p.a1, p.d1, s[0], s[1]);
    const auto f2 = single_patch_rhs(p.r, p.K2, p.a2, p.d2, s[2], s[3]);
    const std::array<double, 4> ref = {f1[0], f1[1], f2[0], f2[1]};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(f[i], ref[i], 1e-15 * (1 + std::fabs(ref[i])));
  }
}

TEST(Rhs, SymmetricStateHasNoFlux) {
  ModelParams p = testutil::fig1(0.7, 0.3);
  p.a2 = p.a1;
  const State4 s = {1.7, 2.3, 1.7, 2.3};
  ModelParams p0 = p;
  p0.rho1 = p0.rho2 = 0;
  const State4 f = rhs(p, s), f0 = rhs(p0, s);
  EXPECT_EQ(f[kY1], f0[kY1]);
  EXPECT_EQ(f[kY2], f0[kY2]);
}

TEST(Rhs, InvariantAxes) {
  std::mt19937_64 g(5);
  for (int k = 0; k < 100; ++k) {
    const ModelParams p = oracle::random_params(g, k % 2 ? Variant::DensityDriven : Variant::StrengthDriven);
    State4 s = oracle::random_state(g, p);
    s[kX1] = 0;
    s[kX2] = 0;
    const State4 f = rhs(p, s);
    EXPECT_EQ(f[kX1], 0.0);
    EXPECT_EQ(f[kX2], 0.0);
    if (p.variant == Variant::StrengthDriven) {
      State4 t = oracle::random_state(g, p);
      t[kY1] = 0;
      t[kY2] = 0;
      const State4 h = rhs(p, t);
      EXPECT_EQ(h[kY1], 0.0);
      EXPECT_EQ(h[kY2], 0.0);
    }
  }
}

TEST(Rhs, RejectsNonFinite) {
  EXPECT_THROW(rhs(testutil::fig1(), {1, NAN, 1, 1}), InvalidInput);
  EXPECT_THROW(rhs(testutil::fig1(), {1, 1, INFINITY, 1}), InvalidInput);
}

TEST(Validate, Rejects) {
  ModelParams p = testutil::fig1();
  EXPECT_NO_THROW(validate(p));
  p.K1 = 0;
  EXPECT_THROW(validate(p), InvalidInput);
  p = testutil::fig1();
  p.rho2 = -0.1;
  EXPECT_THROW(validate(p), InvalidInput);
  p = testutil::fig1();
  p.a1 = NAN;
  EXPECT_THROW(validate(p), InvalidInput);
}

TEST(Dissipativity, UndefinedWithoutDispersal) {
  EXPECT_THROW(dissipativity_bound(testutil::fig1()), BoundUndefined);
}

TEST(Dissipativity, Fig1Vertex) {
  const ModelParams p = testutil::fig1(1, 1);
  // vertex maxima of x(1 - x/5 + 0.2) on [0,5] and x(1.5(1 - x/3) + 0.1) on [0,3]
  const double m1 = oracle::golden_max([](double x) { return x * (1 - x / 5 + 0.2); }, 0, 5);
  const double m2 = oracle::golden_max([](double x) { return x * (1.5 * (1 - x / 3) + 0.1); }, 0, 3);
  const double M = m1 * (1 - m1 / 5 + 0.2) + m2 * (1.5 * (1 - m2 / 3) + 0.1);
  EXPECT_NEAR(dissipativity_bound(p), M / 0.1, 1e-9);
}

TEST(Dissipativity, AbovePreyCap) {
  std::mt19937_64 g(8);
  for (int k = 0; k < 200; ++k) {
    ModelParams p = oracle::random_params(g);
    if (p.rho1 + p.rho2 == 0) continue;
    EXPECT_GE(dissipativity_bound(p), p.rho2 * p.K1 + p.rho1 * p.K2);
  }
}

TEST(Dissipativity, TrajectoriesStayBelowBound) {
  std::mt19937_64 g(9);
  for (int k = 0; k < 100; ++k) {
    ModelParams p = oracle::random_params(g);
    p.rho1 = std::max(p.rho1, 0.01);
    p.rho2 = std::max(p.rho2, 0.01);
    const double bound = dissipativity_bound(p);
    IntegratorOptions o;
    o.sample_dt = 1.0;
    const Trajectory tr = integrate(p, oracle::random_state(g, p), 600, o);
    double late = 0;
    for (std::size_t s = 0; s < tr.t.size(); ++s)
      if (tr.t[s] >= 300) late = std::max(late, dissipativity_function(p, tr.states[s]));
    EXPECT_LE(late, bound + 1e-3);
  }
}

TEST(ParamsIo, RoundTrip) {
  ModelParams p = testutil::fig1(0.1, 0.025);
  p.variant = Variant::DensityDriven;
  EXPECT_EQ(parse_params_json(params_to_json(p)), p);
}

TEST(ParamsIo, RejectsUnknownKey) {
  EXPECT_THROW(parse_params_json(R"({"r":1.5,"K1":5,"K2":3,"a1":0.25,"a2":0.15,"d1":0.2,"d2":0.1,
      "rho1":0,"rho2":0,"variant":"strength","gamma":1})"),
               InvalidInput);
}

TEST(ParamsIo, RejectsBadJsonAndVariant) {
  EXPECT_THROW(parse_params_json("{"), InvalidInput);
  EXPECT_THROW(parse_params_json(R"({"r":1.5,"K1":5,"K2":3,"a1":0.25,"a2":0.15,"d1":0.2,"d2":0.1,
      "rho1":0,"rho2":0,"variant":"mixed"})"),
               InvalidInput);
}

TEST(ParamsIo, ShippedFilesLoad) {
  for (const char* f : {"fig1.json", "fig2.json", "fig3.json", "fig4a.json", "fig4b.json", "extinct.json",
                        "symmetric_density.json"})
    EXPECT_NO_THROW(load_params_file(testutil::data(f))) << f;
  EXPECT_EQ(load_params_file(testutil::data("fig1.json")), testutil::fig1(0.1, 0.025));
}
