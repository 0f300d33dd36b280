#pragma once

#include <array>
#include <complex>
#include <span>

#include "patchdyn/model.hpp"
#include "patchdyn/predicate.hpp"

namespace patchdyn {

// Row order (x1, y1, x2, y2).
using Jacobian4 = std::array<std::array<double, 4>, 4>;
using Eigenvalues = std::array<std::complex<double>, 4>;

inline constexpr double kMarginalBand = 1e-9;

enum class Stability { Sink, Saddle, Source, Marginal };

const char* to_string(Stability s);

Jacobian4 jacobian(const ModelParams& p, const State4& s);

// lambda^4 + c[3] lambda^3 + c[2] lambda^2 + c[1] lambda + c[0]; returned as
// {c0, c1, c2, c3}.
std::array<double, 4> characteristic_polynomial(const Jacobian4& J);

// Roots of the monic quartic with coefficients {c0, c1, c2, c3}, by
// simultaneous (Durand-Kerner) iteration. Sorted by (re, im). Throws
// NumericalFailure if the iteration cap is hit.
Eigenvalues quartic_roots(const std::array<double, 4>& c);

Eigenvalues eigenvalues(const Jacobian4& J);

Stability classify(std::span<const std::complex<double>> eigs);

// Symmetric-death-rate quartic H(lambda) of the two-patch strength model at
// (mu1, nu1, mu2, nu2).
struct CharQuartic {
  double c3, c2, c1, c0;
  std::array<double, 2> alpha, beta, gamma;
  std::array<double, 4> coeffs() const { return {c0, c1, c2, c3}; }
};

// Throws NotApplicable unless d1 == d2 and 0 < mu_i < K_i for both patches.
CharQuartic theorem7_quartic(const ModelParams& p);

// Displayed lower bound on rho_i beyond which large dispersal stabilises
// (max of the two printed expressions). Informational only.
double theorem7_rho_threshold(const ModelParams& p, int i);

// Routh-Hurwitz for a monic quartic: all roots in the open left half plane.
Verdict routh_hurwitz(const CharQuartic& q);

// Conditions on the boundary equilibrium with the predator only in patch i
// and prey at capacity in the other patch.
struct BoundaryPredicateReport {
  ConditionReport report;
  Verdict stable_predicted = Verdict::False;  // hopf window AND any of sa..sd
  Verdict saddle_predicted = Verdict::False;  // mu_i < hopf OR any of ua..uc
  Stability eigen_class = Stability::Marginal;
  Eigenvalues eigenvalues{};
  // Only meaningful when exactly one prediction is True.
  bool agrees = true;
};

// Throws NotApplicable unless 0 < mu_i < K_i.
BoundaryPredicateReport theorem2_boundary_predicates(const ModelParams& p, int i);

}  // namespace patchdyn
