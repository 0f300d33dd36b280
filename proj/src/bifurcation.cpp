#include "patchdyn/bifurcation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "patchdyn/classic.hpp"
#include "patchdyn/error.hpp"
#include "patchdyn/rng.hpp"

namespace patchdyn {

const char* to_string(RegionCode c) {
  switch (c) {
    case RegionCode::ThreeInterior: return "ThreeInterior";
    case RegionCode::TwoInterior: return "TwoInterior";
    case RegionCode::OneInterior: return "OneInterior";
    case RegionCode::NoneY2Extinct: return "NoneY2Extinct";
    case RegionCode::NoneBothExtinct: return "NoneBothExtinct";
    case RegionCode::NoneOther: return "NoneOther";
  }
  return "NoneOther";
}

const char* to_string(SweepParam s) {
  switch (s) {
    case SweepParam::Rho1: return "rho1";
    case SweepParam::Rho2: return "rho2";
    case SweepParam::A1: return "a1";
    case SweepParam::A2: return "a2";
  }
  return "rho1";
}

SweepParam parse_sweep_param(const std::string& s) {
  if (s == "rho1") return SweepParam::Rho1;
  if (s == "rho2") return SweepParam::Rho2;
  if (s == "a1") return SweepParam::A1;
  if (s == "a2") return SweepParam::A2;
  throw InvalidInput("unknown sweep parameter '" + s + "' (rho1, rho2, a1, a2)");
}

double AxisSpec::at(int k) const {
  if (steps <= 1) return min;
  if (k == steps - 1) return max;
  return min + (max - min) * static_cast<double>(k) / static_cast<double>(steps - 1);
}

AxisSpec parse_axis(const std::string& s) {
  const auto c1 = s.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : s.find(':', c1 + 1);
  if (c2 == std::string::npos) throw InvalidInput("axis '" + s + "': expected min:max:steps");
  AxisSpec a;
  try {
    std::size_t used = 0;
    a.min = std::stod(s.substr(0, c1), &used);
    if (used != c1) throw std::invalid_argument("min");
    const std::string mx = s.substr(c1 + 1, c2 - c1 - 1);
    a.max = std::stod(mx, &used);
    if (used != mx.size()) throw std::invalid_argument("max");
    const std::string st = s.substr(c2 + 1);
    a.steps = std::stoi(st, &used);
    if (used != st.size()) throw std::invalid_argument("steps");
  } catch (const std::logic_error&) {
    throw InvalidInput("axis '" + s + "': expected min:max:steps");
  }
  if (!std::isfinite(a.min) || !std::isfinite(a.max)) throw InvalidInput("axis '" + s + "': non-finite bound");
  if (a.steps < 1) throw InvalidInput("axis '" + s + "': steps must be >= 1");
  if (a.max < a.min) throw InvalidInput("axis '" + s + "': max < min");
  if (a.max == a.min) {
    a.steps = 1;
  } else if (a.steps < 2) {
    throw InvalidInput("axis '" + s + "': steps must be >= 2 when max > min");
  }
  return a;
}

ModelParams with_param(ModelParams p, SweepParam which, double v) {
  switch (which) {
    case SweepParam::Rho1: p.rho1 = v; break;
    case SweepParam::Rho2: p.rho2 = v; break;
    case SweepParam::A1: p.a1 = v; break;
    case SweepParam::A2: p.a2 = v; break;
  }
  validate(p);
  return p;
}

AttractorLabel majority(const std::vector<AttractorLabel>& labels) {
  if (labels.empty()) return AttractorLabel::Undetermined;
  AttractorLabel best = labels.front();
  long best_n = 0;
  for (AttractorLabel l : labels) {
    const long n = std::count(labels.begin(), labels.end(), l);
    if (n > best_n) {
      best = l;
      best_n = n;
    }
  }
  return best;
}

RegionCode region_from(std::size_t n, const std::vector<AttractorLabel>& probes) {
  if (n >= 3) return RegionCode::ThreeInterior;
  if (n == 2) return RegionCode::TwoInterior;
  if (n == 1) return RegionCode::OneInterior;
  if (probes.empty()) return RegionCode::NoneOther;
  const bool all_both = std::all_of(probes.begin(), probes.end(),
                                    [](AttractorLabel l) { return l == AttractorLabel::BothPredatorsExtinct; });
  if (all_both) return RegionCode::NoneBothExtinct;
  const bool all_y2 = std::all_of(probes.begin(), probes.end(), [](AttractorLabel l) {
    return l == AttractorLabel::BoundaryY2Extinct || l == AttractorLabel::BothPredatorsExtinct;
  });
  return all_y2 ? RegionCode::NoneY2Extinct : RegionCode::NoneOther;
}

SweepRecord evaluate_cell(const ModelParams& p, int probes, std::uint64_t seed, std::uint64_t cell,
                          const ClassifyOptions& copt) {
  SweepRecord rec;
  rec.interior = p.variant == Variant::StrengthDriven ? interior_equilibria(p) : classic_interior_equilibria(p);
  for (const auto& e : rec.interior) rec.degenerate = rec.degenerate || e.degenerate;
  for (int k = 0; k < probes; ++k) {
    CounterRng rng = CounterRng::split(seed, cell, static_cast<std::uint64_t>(k));
    const State4 s0 = random_interior_start(p, rng);
    AttractorLabel l = AttractorLabel::Undetermined;
    try {
      l = simulate_and_classify(p, s0, copt).label;
    } catch (const NumericalFailure&) {
      // stays Undetermined
    }
    rec.probes.push_back(l);
  }
  rec.outcome = majority(rec.probes);
  rec.region = region_from(rec.interior.size(), rec.probes);
  return rec;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PATCHDYN_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

Sweep1D sweep1d(const ModelParams& p, SweepParam which, const AxisSpec& axis, const SweepOptions& opt) {
  Sweep1D out;
  out.param = which;
  out.axis = axis;
  const double radius = 0.05 * std::hypot(p.K1, p.K2);
  std::vector<State4> prev_states;
  std::vector<int> prev_ids;
  int next_id = 0;
  for (int k = 0; k < axis.steps; ++k) {
    const double v = axis.at(k);
    const ModelParams q = with_param(p, which, v);
    // interior probes only for zero-count points unless asked otherwise
    SweepRecord rec = evaluate_cell(q, 0, opt.seed, static_cast<std::uint64_t>(k), opt.classify);
    const int probes = rec.interior.empty() ? opt.probes_zero : opt.probes_interior;
    if (probes > 0) rec = evaluate_cell(q, probes, opt.seed, static_cast<std::uint64_t>(k), opt.classify);
    rec.value1 = v;
    std::vector<bool> taken(prev_states.size(), false);
    for (const auto& e : rec.interior) {
      int best = -1;
      double best_d = radius;
      for (std::size_t m = 0; m < prev_states.size(); ++m) {
        if (taken[m]) continue;
        double d2 = 0.0;
        for (int c = 0; c < 4; ++c) d2 += (e.state[c] - prev_states[m][c]) * (e.state[c] - prev_states[m][c]);
        const double d = std::sqrt(d2);
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(m);
        }
      }
      if (best >= 0) {
        taken[best] = true;
        rec.branch.push_back(prev_ids[best]);
      } else {
        rec.branch.push_back(next_id++);
      }
    }
    prev_states.clear();
    for (const auto& e : rec.interior) prev_states.push_back(e.state);
    prev_ids = rec.branch;
    out.records.push_back(std::move(rec));
  }
  return out;
}

Sweep2DGrid sweep2d(const ModelParams& p, const AxisSpec& axis1, const AxisSpec& axis2, const SweepOptions& opt,
                    SweepParam param1, SweepParam param2) {
  if (axis1.steps < 1 || axis2.steps < 1) throw InvalidInput("sweep2d: steps must be >= 1");
  if (param1 == param2) throw InvalidInput("sweep2d: the two axes must vary different parameters");
  Sweep2DGrid g;
  g.param1 = param1;
  g.param2 = param2;
  g.axis1 = axis1;
  g.axis2 = axis2;
  const int rows = axis1.steps, cols = axis2.steps;
  g.records.resize(static_cast<std::size_t>(rows) * cols);
  // validate every parameter point up front so workers never throw on input
  with_param(with_param(p, param1, axis1.min), param2, axis2.min);
  with_param(with_param(p, param1, axis1.max), param2, axis2.max);

  std::atomic<int> next_row{0};
  auto work = [&]() {
    for (int row = next_row++; row < rows; row = next_row++) {
      for (int col = 0; col < cols; ++col) {
        const double v1 = axis1.at(row), v2 = axis2.at(col);
        const ModelParams q = with_param(with_param(p, param1, v1), param2, v2);
        const std::uint64_t cell = static_cast<std::uint64_t>(row) * static_cast<std::uint64_t>(cols) + col;
        SweepRecord rec = evaluate_cell(q, 0, opt.seed, cell, opt.classify);
        const int probes = rec.interior.empty() ? opt.probes_zero : opt.probes_interior;
        if (probes > 0) rec = evaluate_cell(q, probes, opt.seed, cell, opt.classify);
        rec.value1 = v1;
        rec.value2 = v2;
        g.records[cell] = std::move(rec);
      }
    }
  };
  const int n = std::min(resolve_threads(opt.threads), rows);
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return g;
}

const char* to_string(SinglePatchRegime s) {
  switch (s) {
    case SinglePatchRegime::PreyOnly: return "PreyOnly";
    case SinglePatchRegime::StableEquilibrium: return "StableEquilibrium";
    case SinglePatchRegime::LimitCycle: return "LimitCycle";
  }
  return "PreyOnly";
}

SinglePatchRegime single_patch_regime(double r, double K, double a, double d) {
  const double mu = mu_of(a, d);
  // (K, 0) has eigenvalues -r and p(K) - d.
  if (!(holling(a, K) - d > 0.0)) return SinglePatchRegime::PreyOnly;
  // The interior equilibrium has a zero (2,2) entry and positive determinant,
  // so its stability is the sign of the (1,1) entry.
  const double nu = prey_nullcline(r, K, a, mu);
  const double j11 = r * (1.0 - 2.0 * mu / K) - a / ((1.0 + mu) * (1.0 + mu)) * nu;
  return j11 < 0.0 ? SinglePatchRegime::StableEquilibrium : SinglePatchRegime::LimitCycle;
}

std::vector<RegimeTransition> locate_single_patch_transitions(double r, double K, double d, double a_lo, double a_hi,
                                                              int scan, double tol) {
  if (!(a_lo > 0.0) || !(a_hi > a_lo) || scan < 2) throw InvalidInput("locate_single_patch_transitions: bad range");
  std::vector<RegimeTransition> out;
  double prev_a = a_lo;
  SinglePatchRegime prev = single_patch_regime(r, K, a_lo, d);
  for (int k = 1; k <= scan; ++k) {
    const double a = a_lo + (a_hi - a_lo) * k / scan;
    const SinglePatchRegime cur = single_patch_regime(r, K, a, d);
    if (cur != prev) {
      double lo = prev_a, hi = a;
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (single_patch_regime(r, K, mid, d) == prev)
          lo = mid;
        else
          hi = mid;
      }
      out.push_back({0.5 * (lo + hi), prev, cur});
    }
    prev = cur;
    prev_a = a;
  }
  return out;
}

}  // namespace patchdyn
