#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "patchdyn/kernels.hpp"
#include "patchdyn/model.hpp"
#include "patchdyn/polynomial.hpp"

using namespace patchdyn;
namespace k = patchdyn::kernels;

namespace {

std::vector<k::Isa> simd_isas() {
  std::vector<k::Isa> out;
  for (k::Isa isa : {k::Isa::Avx2, k::Isa::Neon})
    if (k::supported(isa)) out.push_back(isa);
  return out;
}

}  // namespace

TEST(Kernels, ScalarAlwaysAvailable) {
  EXPECT_TRUE(k::supported(k::Isa::Scalar));
  EXPECT_NO_THROW(k::table(k::Isa::Scalar));
  EXPECT_NO_THROW(k::active());
}

TEST(Kernels, ScalarHornerMatchesPolynomial) {
  const Polynomial P{0.5, -1.25, 3.0, 0.0, -0.75, 0.125};
  std::vector<double> xs, out;
  for (int i = 0; i < 37; ++i) xs.push_back(-2.0 + 0.13 * i);
  out.resize(xs.size());
  k::table(k::Isa::Scalar).horner(P.coeffs(), xs, out);
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_NEAR(out[i], P(xs[i]), 1e-13);
}

TEST(Kernels, ScalarRhsMatchesModel) {
  std::mt19937_64 g(2);
  for (int v = 0; v < 2; ++v) {
    const ModelParams p = oracle::random_params(g, v ? Variant::DensityDriven : Variant::StrengthDriven);
    std::vector<double> x1, y1, x2, y2;
    for (int i = 0; i < 19; ++i) {
      const State4 s = oracle::random_state(g, p);
      x1.push_back(s[0]);
      y1.push_back(s[1]);
      x2.push_back(s[2]);
      y2.push_back(s[3]);
    }
    std::vector<double> o1(19), o2(19), o3(19), o4(19);
    k::table(k::Isa::Scalar).rhs(p, {x1, y1, x2, y2}, {o1, o2, o3, o4});
    for (int i = 0; i < 19; ++i) {
      const State4 f = rhs(p, {x1[i], y1[i], x2[i], y2[i]});
      EXPECT_NEAR(o1[i], f[0], 1e-15 * (1 + std::fabs(f[0])));
      EXPECT_NEAR(o2[i], f[1], 1e-15 * (1 + std::fabs(f[1])));
      EXPECT_NEAR(o3[i], f[2], 1e-15 * (1 + std::fabs(f[2])));
      EXPECT_NEAR(o4[i], f[3], 1e-15 * (1 + std::fabs(f[3])));
    }
  }
}

TEST(Kernels, SimdHornerEquivalence) {
  const auto isas = simd_isas();
  if (isas.empty()) GTEST_SKIP() << "no SIMD ISA on this CPU";
  std::mt19937_64 g(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> c(1 + trial % 7);
    for (double& v : c) v = oracle::u(g, -3, 3);
    std::vector<double> xs(1 + trial * 3);
    for (double& v : xs) v = oracle::u(g, -2, 6);
    std::vector<double> ref(xs.size()), got(xs.size());
    k::table(k::Isa::Scalar).horner(c, xs, ref);
    for (k::Isa isa : isas) {
      k::table(isa).horner(c, xs, got);
      for (std::size_t i = 0; i < xs.size(); ++i)
        EXPECT_NEAR(got[i], ref[i], 1e-12 * (1 + std::fabs(ref[i]))) << k::to_string(isa);
    }
  }
}

TEST(Kernels, SimdRhsEquivalence) {
  const auto isas = simd_isas();
  if (isas.empty()) GTEST_SKIP() << "no SIMD ISA on this CPU";
  std::mt19937_64 g(6);
  for (int trial = 0; trial < 100; ++trial) {
    const ModelParams p = oracle::random_params(g, trial % 2 ? Variant::DensityDriven : Variant::StrengthDriven);
    const std::size_t n = 1 + trial % 23;
    std::vector<double> x1(n), y1(n), x2(n), y2(n);
    for (std::size_t i = 0; i < n; ++i) {
      const State4 s = oracle::random_state(g, p);
      x1[i] = s[0];
      y1[i] = s[1];
      x2[i] = s[2];
      y2[i] = s[3];
    }
    std::vector<double> r1(n), r2(n), r3(n), r4(n), g1(n), g2(n), g3(n), g4(n);
    k::table(k::Isa::Scalar).rhs(p, {x1, y1, x2, y2}, {r1, r2, r3, r4});
    for (k::Isa isa : isas) {
      k::table(isa).rhs(p, {x1, y1, x2, y2}, {g1, g2, g3, g4});
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(g1[i], r1[i], 1e-13 * (1 + std::fabs(r1[i])));
        EXPECT_NEAR(g2[i], r2[i], 1e-13 * (1 + std::fabs(r2[i])));
        EXPECT_NEAR(g3[i], r3[i], 1e-13 * (1 + std::fabs(r3[i])));
        EXPECT_NEAR(g4[i], r4[i], 1e-13 * (1 + std::fabs(r4[i])));
      }
    }
  }
}
