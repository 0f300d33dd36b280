#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "patchdyn/dynamics.hpp"
#include "patchdyn/equilibria.hpp"

namespace patchdyn {

// Integer values are what the sweep CSV carries.
enum class RegionCode {
  ThreeInterior = 3,
  TwoInterior = 2,
  OneInterior = 1,
  NoneY2Extinct = 0,
  NoneBothExtinct = -1,
  NoneOther = -2,
};

const char* to_string(RegionCode c);

enum class SweepParam { Rho1, Rho2, A1, A2 };

const char* to_string(SweepParam s);
SweepParam parse_sweep_param(const std::string& s);

struct AxisSpec {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;
  double at(int k) const;
};

// "min:max:steps"
AxisSpec parse_axis(const std::string& s);

ModelParams with_param(ModelParams p, SweepParam which, double v);

struct SweepOptions {
  int probes_zero = 3;      // probe simulations in zero-count cells
  int probes_interior = 1;  // and elsewhere
  std::uint64_t seed = 1;
  int threads = 0;  // 0: PATCHDYN_THREADS, else hardware concurrency
  ClassifyOptions classify;
};

struct SweepRecord {
  double value1 = 0.0;
  double value2 = 0.0;
  std::vector<Equilibrium> interior;
  std::vector<int> branch;  // sweep1d only, parallel to interior
  RegionCode region = RegionCode::NoneOther;
  AttractorLabel outcome = AttractorLabel::Undetermined;
  std::vector<AttractorLabel> probes;
  bool degenerate = false;
};

struct Sweep1D {
  SweepParam param = SweepParam::Rho1;
  AxisSpec axis;
  std::vector<SweepRecord> records;
};

struct Sweep2DGrid {
  SweepParam param1 = SweepParam::Rho1, param2 = SweepParam::Rho2;
  AxisSpec axis1, axis2;
  // row-major: row = index on axis1, column = index on axis2
  std::vector<SweepRecord> records;
  const SweepRecord& at(int row, int col) const { return records[static_cast<std::size_t>(row) * axis2.steps + col]; }
};

// Region from the interior count, refined by probe outcomes when it is zero.
RegionCode region_from(std::size_t n_interior, const std::vector<AttractorLabel>& probes);

// Most frequent label, first seen wins ties.
AttractorLabel majority(const std::vector<AttractorLabel>& labels);

SweepRecord evaluate_cell(const ModelParams& p, int probes, std::uint64_t seed, std::uint64_t cell,
                          const ClassifyOptions& copt);

Sweep1D sweep1d(const ModelParams& p, SweepParam which, const AxisSpec& axis, const SweepOptions& opt = {});

Sweep2DGrid sweep2d(const ModelParams& p, const AxisSpec& axis1, const AxisSpec& axis2, const SweepOptions& opt = {},
                    SweepParam param1 = SweepParam::Rho1, SweepParam param2 = SweepParam::Rho2);

int resolve_threads(int requested);

// Single patch dx = r x (1 - x/K) - p(x) y, dy = p(x) y - d y, classified from
// the equilibrium eigenvalues.
enum class SinglePatchRegime { PreyOnly, StableEquilibrium, LimitCycle };

const char* to_string(SinglePatchRegime s);

SinglePatchRegime single_patch_regime(double r, double K, double a, double d);

struct RegimeTransition {
  double a = 0.0;
  SinglePatchRegime below, above;
};

// Scan a over [a_lo, a_hi] and bisect each regime change to tol.
std::vector<RegimeTransition> locate_single_patch_transitions(double r, double K, double d, double a_lo, double a_hi,
                                                              int scan = 200, double tol = 1e-10);

}  // namespace patchdyn
