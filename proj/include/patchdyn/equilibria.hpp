#pragma once

#include <optional>
#include <vector>

#include "patchdyn/model.hpp"
#include "patchdyn/polynomial.hpp"
#include "patchdyn/predicate.hpp"
#include "patchdyn/stability.hpp"

namespace patchdyn {

enum class EquilibriumKind {
  Origin,
  K1Only,
  K2Only,
  BothK,
  PredatorIn1,         // (mu1, nu1, 0, 0)
  PredatorIn1PreyIn2,  // (mu1, nu1, K2, 0)
  PredatorIn2,         // (0, 0, mu2, nu2)
  PreyIn1PredatorIn2,  // (K1, 0, mu2, nu2)
  Interior,
  ClassicBoundary,     // prey extinct in one patch, predators in both
};

const char* to_string(EquilibriumKind k);

struct Equilibrium {
  State4 state{};
  EquilibriumKind kind = EquilibriumKind::Interior;
  Eigenvalues eigenvalues{};
  Stability stability = Stability::Marginal;
  double residual = 0.0;
  // Root clustered with another, or |P'| tiny at the root (close to a fold).
  bool degenerate = false;
};

// Jacobian, eigenvalues, class and residual at a given state.
Equilibrium make_equilibrium(const ModelParams& p, const State4& s, EquilibriumKind kind);

double residual_norm(const ModelParams& p, const State4& s);

// Sort by kind, then state.
void sort_canonical(std::vector<Equilibrium>& eqs);

std::vector<Equilibrium> boundary_equilibria(const ModelParams& p);

// c0 + c1 x + c2 x^2
struct Quadratic {
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;
  double operator()(double x) const { return c0 + x * (c1 + x * c2); }
  double derivative(double x) const { return c1 + 2.0 * c2 * x; }
  Polynomial poly() const { return Polynomial{c0, c1, c2}; }
};

// Interior equilibria satisfy x1 = F(x2) = ft(x2)/fb(x2), x2 = G(x1) = gt(x1)/gb(x1).
struct NullclineFns {
  Quadratic ft, fb, gt, gb;
};

NullclineFns nullclines(const ModelParams& p);

// Throw PoleError at a root of the denominator.
double eval_F(const NullclineFns& nf, double x2);
double eval_G(const NullclineFns& nf, double x1);

// P(x1) = x1 Den(x1) - Num(x1) with F(G(x1)) = Num/Den, degree <= 5.
Polynomial interior_polynomial(const NullclineFns& nf);

// Stationary point of G on (0, K1) for patch 0, of F on (0, K2) for patch 1.
// Empty when the dispersal rate in the formula is zero or no stationary point
// lies inside the domain.
std::optional<double> critical_point(const ModelParams& p, int patch);

// The closed form as printed alongside the existence theorem. It is not a
// stationary point in general; kept for comparison only.
std::optional<double> critical_point_displayed(const ModelParams& p, int patch);

std::vector<Equilibrium> interior_equilibria(const ModelParams& p);

ConditionReport theorem6_existence_report(const ModelParams& p);

// Boundary and interior equilibria of either variant, canonical order.
std::vector<Equilibrium> all_equilibria(const ModelParams& p);

}  // namespace patchdyn
