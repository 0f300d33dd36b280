#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "patchdyn/model.hpp"

namespace patchdyn {

struct IntegratorOptions {
  double abs_tol = 1e-9;
  double rel_tol = 1e-7;
  double max_step = 1.0;
  double initial_step = 1e-3;
  // 0 records every accepted step; otherwise states are recorded on the grid
  // k * sample_dt (steps are shortened to land on it). Must be <= max_step.
  double sample_dt = 0.0;
  std::size_t max_steps = 100'000'000;
};

enum class IntegratorStatus { Completed, StepLimit };

const char* to_string(IntegratorStatus s);

struct Trajectory {
  std::vector<double> t;
  std::vector<State4> states;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  IntegratorStatus status = IntegratorStatus::Completed;
};

// Dormand-Prince 5(4). Throws StiffnessError if the step falls below 1e-14
// and DivergenceError on a non-finite state.
Trajectory integrate(const ModelParams& p, const State4& s0, double t_end, const IntegratorOptions& opt = {});

// Same tableau with a fixed step, for order checks.
State4 integrate_fixed(const ModelParams& p, const State4& s0, double t_end, double h);

enum class AttractorLabel {
  InteriorEquilibrium,
  InteriorCycle,
  BoundaryY1Extinct,
  BoundaryY2Extinct,
  BothPredatorsExtinct,
  Undetermined,
};

const char* to_string(AttractorLabel l);

struct ClassifyOptions {
  double transient = 2000.0;
  double window = 3000.0;
  double equilibrium_tol = 1e-6;
  // and no component drifts more than this over the window
  double stationary_tol = 1e-5;
  double cycle_amplitude = 1e-4;
  int min_sign_changes = 3;
  double extinct = 1e-6;
  // Undetermined results are re-examined on up to this many further windows
  // (simulate_and_classify only).
  int max_extensions = 3;
};

struct WindowStats {
  State4 min{}, max{};
  double max_rhs_norm = 0.0;
  std::array<int, 4> sign_changes{};
  std::size_t samples = 0;
};

struct AttractorClassification {
  AttractorLabel label = AttractorLabel::Undetermined;
  WindowStats witness;
};

WindowStats window_stats(const ModelParams& p, const Trajectory& traj, double t_from);

// Requires traj to reach transient + window.
AttractorClassification classify_attractor(const ModelParams& p, const Trajectory& traj,
                                           const ClassifyOptions& opt = {});

// Integrate to transient + window with sampling and classify; while the label
// is Undetermined, continue for another window and classify that.
AttractorClassification simulate_and_classify(const ModelParams& p, const State4& s0,
                                              const ClassifyOptions& opt = {},
                                              IntegratorOptions iopt = {});

enum class LyapunovKind {
  BothKExtinction,        // strength model, both mu_i > K_i
  ClassicSubsystem,       // density model on x_j = 0, hopf window for muhat_i
  ClassicPreyExtinction,  // density model, prey in patch i dies out
  ClassicSymmetric,       // symmetric density model
};

const char* to_string(LyapunovKind k);

struct LyapunovReport {
  bool applicable = false;
  std::string reason;
  std::size_t samples = 0;
  std::size_t skipped = 0;
  // V_{k+1} > V_k + 1e-9
  std::size_t violations = 0;
  double max_increase = 0.0;
  // chain-rule grad V . f
  double max_dVdt = 0.0;
  // the closed form written in the proof
  double max_dVdt_display = 0.0;
  double max_display_gap = 0.0;
  double v_first = 0.0;
  double v_last = 0.0;
};

// `patch` is i in the theorem statement (ignored for BothKExtinction and
// ClassicSymmetric).
LyapunovReport lyapunov_check(const ModelParams& p, LyapunovKind which, int patch, const Trajectory& traj);

// V, grad-V.f and the displayed derivative at one state. Returns false when V
// is undefined there.
bool lyapunov_eval(const ModelParams& p, LyapunovKind which, int patch, const State4& s, double& V,
                   double& dVdt, double& dVdt_display);

// Hypotheses of the cited result, as a Verdict-free boolean.
bool lyapunov_applicable(const ModelParams& p, LyapunovKind which, int patch, std::string* reason = nullptr);

}  // namespace patchdyn
