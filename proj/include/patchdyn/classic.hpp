#pragma once

#include <cstdint>
#include <vector>

#include "patchdyn/dynamics.hpp"
#include "patchdyn/equilibria.hpp"
#include "patchdyn/predicate.hpp"

namespace patchdyn {

// Universal four, plus (muhat_i, nuhat_i, 0, nuhat_j^i) style equilibria when
// 0 < muhat_i < K_i. With rho_j = 0 the point (muhat_i, nuhat_i, K_j, 0) also
// exists. Density-driven variant only.
std::vector<Equilibrium> classic_boundary_equilibria(const ModelParams& p);

// 2-D Newton on the predator equations along y_i = q_i(x_i), multistart.
std::vector<Equilibrium> classic_interior_equilibria(const ModelParams& p);

ConditionReport classic_condition_report(const ModelParams& p);

struct SymmetricCheck {
  double mu = 0.0, nu = 0.0;
  double residual = 0.0;
  Stability stability = Stability::Marginal;
  Stability single_patch_stability = Stability::Marginal;
  LyapunovReport lyapunov;  // accumulated over all starts
  int starts = 0;
  int converged = 0;
  double max_distance = 0.0;
};

struct SymmetricOptions {
  int starts = 20;
  std::uint64_t seed = 1;
  double t_end = 5000.0;
  double tol = 1e-6;
};

// Throws NotApplicable unless r = 1, a1 = a2, d1 = d2, K1 = K2.
SymmetricCheck symmetric_global_check(const ModelParams& p, const SymmetricOptions& opt = {});

struct VariantSummary {
  ModelParams params;
  std::vector<Equilibrium> equilibria;
  int n_boundary = 0;
  int n_interior = 0;
  ConditionReport report;
  std::vector<AttractorLabel> outcomes;
};

struct ComparisonRecord {
  VariantSummary strength;
  VariantSummary density;
  std::uint64_t seed = 0;
};

struct CompareOptions {
  int probes = 5;
  std::uint64_t seed = 1;
  ClassifyOptions classify;
};

ComparisonRecord compare_models(const ModelParams& p, const CompareOptions& opt = {});

}  // namespace patchdyn
