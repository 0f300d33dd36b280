#include "patchdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "patchdyn/error.hpp"
#include "patchdyn/kernels.hpp"

namespace patchdyn {

const char* to_string(IntegratorStatus s) {
  return s == IntegratorStatus::Completed ? "completed" : "step_limit";
}

const char* to_string(AttractorLabel l) {
  switch (l) {
    case AttractorLabel::InteriorEquilibrium: return "InteriorEquilibrium";
    case AttractorLabel::InteriorCycle: return "InteriorCycle";
    case AttractorLabel::BoundaryY1Extinct: return "BoundaryY1Extinct";
    case AttractorLabel::BoundaryY2Extinct: return "BoundaryY2Extinct";
    case AttractorLabel::BothPredatorsExtinct: return "BothPredatorsExtinct";
    case AttractorLabel::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

const char* to_string(LyapunovKind k) {
  switch (k) {
    case LyapunovKind::BothKExtinction: return "both-K";
    case LyapunovKind::ClassicSubsystem: return "classic-subsystem";
    case LyapunovKind::ClassicPreyExtinction: return "classic-prey-extinction";
    case LyapunovKind::ClassicSymmetric: return "classic-symmetric";
  }
  return "both-K";
}

namespace {

// Dormand-Prince 5(4)
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr double kNegativeSlack = 1e-12;
constexpr double kMinStep = 1e-14;

struct StepResult {
  State4 y;
  State4 k7;
  State4 err;
};

// rhs without the finiteness check; stage values may be slightly negative
State4 f(const ModelParams& p, const State4& s) {
  const double x1 = s[kX1], y1 = s[kY1], x2 = s[kX2], y2 = s[kY2];
  const double p1 = holling(p.a1, x1);
  const double p2 = holling(p.a2, x2);
  State4 out;
  out[kX1] = x1 * (1.0 - x1 / p.K1) - p1 * y1;
  out[kX2] = p.r * x2 * (1.0 - x2 / p.K2) - p2 * y2;
  if (p.variant == Variant::StrengthDriven) {
    out[kY1] = p1 * y1 - p.d1 * y1 + p.rho1 * (p1 * y1 * y2 - p2 * y2 * y1);
    out[kY2] = p2 * y2 - p.d2 * y2 + p.rho2 * (p2 * y2 * y1 - p1 * y1 * y2);
  } else {
    out[kY1] = p1 * y1 - p.d1 * y1 + p.rho1 * (y2 - y1);
    out[kY2] = p2 * y2 - p.d2 * y2 + p.rho2 * (y1 - y2);
  }
  return out;
}

StepResult dp_step(const ModelParams& p, const State4& y, const State4& k1, double h) {
  State4 s, k2, k3, k4, k5, k6;
  for (int i = 0; i < 4; ++i) s[i] = y[i] + h * (a21 * k1[i]);
  k2 = f(p, s);
  for (int i = 0; i < 4; ++i) s[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  k3 = f(p, s);
  for (int i = 0; i < 4; ++i) s[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  k4 = f(p, s);
  for (int i = 0; i < 4; ++i) s[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  k5 = f(p, s);
  for (int i = 0; i < 4; ++i)
    s[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
  k6 = f(p, s);
  StepResult r;
  for (int i = 0; i < 4; ++i)
    r.y[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
  r.k7 = f(p, r.y);
  for (int i = 0; i < 4; ++i)
    r.err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * r.k7[i]);
  return r;
}

bool finite(const State4& s) {
  for (double v : s)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

Trajectory integrate(const ModelParams& p, const State4& s0, double t_end, const IntegratorOptions& opt) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InvalidInput("integrate: t_end must be finite and > 0");
  if (!(opt.abs_tol > 0.0) || !(opt.rel_tol >= 0.0)) throw InvalidInput("integrate: bad tolerances");
  if (!(opt.max_step > 0.0)) throw InvalidInput("integrate: max_step must be > 0");
  if (opt.sample_dt < 0.0 || opt.sample_dt > opt.max_step)
    throw InvalidInput("integrate: sample_dt must be in [0, max_step]");
  for (double v : s0)
    if (!std::isfinite(v) || v < 0.0) throw InvalidInput("integrate: initial state must be finite and >= 0");

  Trajectory tr;
  double t = 0.0;
  State4 y = s0;
  tr.t.push_back(t);
  tr.states.push_back(y);
  State4 k1 = f(p, y);
  double h = std::min({opt.initial_step, opt.max_step, t_end});
  std::size_t next_index = 1;
  const bool grid = opt.sample_dt > 0.0;
  auto grid_time = [&](std::size_t k) { return std::min(t_end, static_cast<double>(k) * opt.sample_dt); };

  while (t < t_end) {
    if (tr.accepted >= opt.max_steps) {
      tr.status = IntegratorStatus::StepLimit;
      break;
    }
    double target = t_end;
    if (grid) target = grid_time(next_index);
    double h_try = std::min({h, opt.max_step, target - t});
    const bool lands = h_try >= target - t;
    if (lands) h_try = target - t;

    const StepResult st = dp_step(p, y, k1, h_try);
    if (!finite(st.y)) {
      h = 0.25 * h_try;
      ++tr.rejected;
      if (h < kMinStep) throw DivergenceError("integrate: non-finite state", t);
      continue;
    }
    double err = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double sc = opt.abs_tol + opt.rel_tol * std::max(std::fabs(y[i]), std::fabs(st.y[i]));
      err = std::max(err, std::fabs(st.err[i]) / sc);
    }
    if (err > 1.0) {
      h = h_try * std::max(0.2, 0.9 * std::pow(err, -0.2));
      ++tr.rejected;
      if (h < kMinStep) throw StiffnessError("integrate: step size underflow", t);
      continue;
    }
    bool negative = false;
    for (double v : st.y) negative = negative || v < -kNegativeSlack;
    if (negative) {
      h = 0.5 * h_try;
      ++tr.rejected;
      if (h < kMinStep) throw StiffnessError("integrate: step size underflow at positivity limit", t);
      continue;
    }

    y = st.y;
    bool clamped = false;
    for (double& v : y)
      if (v < 0.0) {
        v = 0.0;
        clamped = true;
      }
    k1 = clamped ? f(p, y) : st.k7;
    t = lands ? target : t + h_try;
    ++tr.accepted;

    if (!grid || lands) {
      tr.t.push_back(t);
      tr.states.push_back(y);
      if (grid) ++next_index;
    }

    const double grow = err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
    const double proposed = h_try * grow;
    // A step shortened to hit a sample time should not shrink the next one.
    h = lands ? std::max(proposed, std::min(h, proposed * 5.0)) : proposed;
    h = std::min(h, opt.max_step);
  }
  return tr;
}

State4 integrate_fixed(const ModelParams& p, const State4& s0, double t_end, double h) {
  if (!(h > 0.0) || !(t_end > 0.0)) throw InvalidInput("integrate_fixed: h and t_end must be > 0");
  State4 y = s0;
  double t = 0.0;
  const long n = static_cast<long>(std::ceil(t_end / h - 1e-9));
  for (long k = 0; k < n; ++k) {
    const double step = std::min(h, t_end - t);
    y = dp_step(p, y, f(p, y), step).y;
    t = (k + 1 == n) ? t_end : t + step;
  }
  return y;
}

WindowStats window_stats(const ModelParams& p, const Trajectory& traj, double t_from) {
  WindowStats w;
  std::size_t first = 0;
  while (first < traj.t.size() && traj.t[first] < t_from) ++first;
  const std::size_t n = traj.t.size() - first;
  w.samples = n;
  if (n == 0) return w;
  std::vector<double> x1(n), y1(n), x2(n), y2(n), f1(n), g1(n), f2(n), g2(n);
  for (std::size_t k = 0; k < n; ++k) {
    const State4& s = traj.states[first + k];
    x1[k] = s[kX1];
    y1[k] = s[kY1];
    x2[k] = s[kX2];
    y2[k] = s[kY2];
  }
  kernels::rhs_batch(p, {x1, y1, x2, y2}, {f1, g1, f2, g2});
  w.min.fill(kInf);
  w.max.fill(-kInf);
  const std::vector<double>* cols[4] = {&x1, &y1, &x2, &y2};
  const std::vector<double>* ders[4] = {&f1, &g1, &f2, &g2};
  for (int i = 0; i < 4; ++i) {
    int last_sign = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const double v = (*cols[i])[k];
      w.min[i] = std::min(w.min[i], v);
      w.max[i] = std::max(w.max[i], v);
      const double d = (*ders[i])[k];
      w.max_rhs_norm = std::max(w.max_rhs_norm, std::fabs(d));
      const int sg = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
      if (sg != 0) {
        if (last_sign != 0 && sg != last_sign) ++w.sign_changes[i];
        last_sign = sg;
      }
    }
  }
  return w;
}

namespace {

bool stationary(const WindowStats& w, double tol) {
  for (int i = 0; i < 4; ++i)
    if (!(w.max[i] - w.min[i] < tol)) return false;
  return true;
}

}  // namespace

AttractorClassification classify_attractor(const ModelParams& p, const Trajectory& traj,
                                           const ClassifyOptions& opt) {
  const double horizon = opt.transient + opt.window;
  if (traj.t.empty() || traj.t.back() < horizon * (1.0 - 1e-12))
    throw InvalidInput("classify_attractor: trajectory shorter than transient + window");
  AttractorClassification out;
  out.witness = window_stats(p, traj, traj.t.back() - opt.window);
  const WindowStats& w = out.witness;
  const bool y1_gone = w.max[kY1] < opt.extinct;
  const bool y2_gone = w.max[kY2] < opt.extinct;
  bool interior = true;
  for (int i = 0; i < 4; ++i) interior = interior && w.min[i] > opt.extinct;
  if (y1_gone && y2_gone) {
    out.label = AttractorLabel::BothPredatorsExtinct;
  } else if (y1_gone) {
    out.label = AttractorLabel::BoundaryY1Extinct;
  } else if (y2_gone) {
    out.label = AttractorLabel::BoundaryY2Extinct;
  } else if (!interior) {
    out.label = AttractorLabel::Undetermined;
  } else if (w.max_rhs_norm < opt.equilibrium_tol && stationary(w, opt.stationary_tol)) {
    out.label = AttractorLabel::InteriorEquilibrium;
  } else {
    // A cycle must oscillate and not be damping out: the last third of the
    // window keeps at least half the peak-to-peak of the first third.
    const double t_end = traj.t.back();
    bool cycle = false;
    for (int i = 0; i < 4; ++i) {
      if (!(w.max[i] - w.min[i] > opt.cycle_amplitude && w.sign_changes[i] >= opt.min_sign_changes)) continue;
      double lo1 = kInf, hi1 = -kInf, lo3 = kInf, hi3 = -kInf;
      for (std::size_t k = 0; k < traj.t.size(); ++k) {
        const double t = traj.t[k];
        const double v = traj.states[k][i];
        if (t < t_end - opt.window) continue;
        if (t <= t_end - 2.0 * opt.window / 3.0) {
          lo1 = std::min(lo1, v);
          hi1 = std::max(hi1, v);
        }
        if (t >= t_end - opt.window / 3.0) {
          lo3 = std::min(lo3, v);
          hi3 = std::max(hi3, v);
        }
      }
      cycle = cycle || (hi3 - lo3 >= 0.5 * (hi1 - lo1) && hi3 - lo3 > opt.cycle_amplitude);
    }
    out.label = cycle ? AttractorLabel::InteriorCycle : AttractorLabel::Undetermined;
  }
  return out;
}

AttractorClassification simulate_and_classify(const ModelParams& p, const State4& s0, const ClassifyOptions& opt,
                                              IntegratorOptions iopt) {
  if (iopt.sample_dt == 0.0) iopt.sample_dt = std::min(0.5, iopt.max_step);
  const Trajectory tr = integrate(p, s0, opt.transient + opt.window, iopt);
  AttractorClassification c = classify_attractor(p, tr, opt);
  ClassifyOptions more = opt;
  more.transient = 0.0;
  State4 s = tr.states.back();
  for (int k = 0; k < opt.max_extensions && c.label == AttractorLabel::Undetermined; ++k) {
    const Trajectory next = integrate(p, s, opt.window, iopt);
    c = classify_attractor(p, next, more);
    s = next.states.back();
  }
  return c;
}

namespace {

// int_c^x (p(s) - p(c)) / p(s) ds for p(s) = a s / (1 + s); independent of a.
double prey_integral(double x, double c) {
  return (x - c) - c / (1.0 + c) * (std::log(x / c) + (x - c));
}

// int_c^y (s - c) / s ds
double predator_integral(double y, double c) { return y - c - c * std::log(y / c); }

double q_max(const Site& s) {
  return s.K > 1.0 ? s.r * (s.K + 1.0) * (s.K + 1.0) / (4.0 * s.a * s.K) : s.r / s.a;
}

bool symmetric(const ModelParams& p) {
  auto eq = [](double u, double v) { return std::fabs(u - v) <= 1e-12 * std::max(std::fabs(u), std::fabs(v)); };
  return eq(p.r, 1.0) && eq(p.a1, p.a2) && eq(p.d1, p.d2) && eq(p.K1, p.K2);
}

}  // namespace

bool lyapunov_applicable(const ModelParams& p, LyapunovKind which, int patch, std::string* reason) {
  auto fail = [&](const char* why) {
    if (reason) *reason = why;
    return false;
  };
  const int i = patch, j = 1 - patch;
  switch (which) {
    case LyapunovKind::BothKExtinction: {
      if (p.variant != Variant::StrengthDriven) return fail("strength-driven model required");
      const DerivedQuantities dq = derived(p);
      if (!(dq.mu[0] > p.K1 && dq.mu[1] > p.K2)) return fail("requires mu_i > K_i for both patches");
      return true;
    }
    case LyapunovKind::ClassicSubsystem: {
      if (p.variant != Variant::DensityDriven) return fail("density-driven model required");
      const HatQuantities h = hat_quantities(p);
      const Site si = p.site(i);
      if (!((si.K - 1.0) / 2.0 < h.muhat[i] && h.muhat[i] < si.K))
        return fail("requires (K_i-1)/2 < muhat_i < K_i");
      return true;
    }
    case LyapunovKind::ClassicPreyExtinction: {
      if (p.variant != Variant::DensityDriven) return fail("density-driven model required");
      const HatQuantities h = hat_quantities(p);
      const Site si = p.site(i), sj = p.site(j);
      if (!((sj.K - 1.0) / 2.0 < h.muhat[j] && h.muhat[j] < sj.K))
        return fail("requires (K_j-1)/2 < muhat_j < K_j");
      if (!(q_max(si) < h.cross[i])) return fail("requires max q_i < nuhat_i^j");
      return true;
    }
    case LyapunovKind::ClassicSymmetric: {
      if (p.variant != Variant::DensityDriven) return fail("density-driven model required");
      if (!symmetric(p)) return fail("requires r = 1, a1 = a2, d1 = d2, K1 = K2");
      const DerivedQuantities dq = derived(p);
      if (!((p.K1 - 1.0) / 2.0 < dq.mu[0] && dq.mu[0] < p.K1)) return fail("requires (K-1)/2 < mu < K");
      return true;
    }
  }
  return fail("unknown Lyapunov function");
}

bool lyapunov_eval(const ModelParams& p, LyapunovKind which, int patch, const State4& s, double& V, double& dVdt,
                   double& dVdt_display) {
  const State4 fs = f(p, s);
  const int i = patch, j = 1 - patch;
  const std::size_t xi = prey_index(i), yi = predator_index(i), xj = prey_index(j), yj = predator_index(j);
  switch (which) {
    case LyapunovKind::BothKExtinction: {
      if (!(s[kX1] > 0.0 && s[kX2] > 0.0)) return false;
      double w1 = p.rho2, w2 = p.rho1;
      if (w1 == 0.0 && w2 == 0.0) w1 = w2 = 1.0;
      const double pK1 = holling(p.a1, p.K1), pK2 = holling(p.a2, p.K2);
      const double p1 = holling(p.a1, s[kX1]), p2 = holling(p.a2, s[kX2]);
      V = w1 * prey_integral(s[kX1], p.K1) + w1 * s[kY1] + w2 * prey_integral(s[kX2], p.K2) + w2 * s[kY2];
      dVdt = w1 * (1.0 - pK1 / p1) * fs[kX1] + w1 * fs[kY1] + w2 * (1.0 - pK2 / p2) * fs[kX2] + w2 * fs[kY2];
      const double q1 = prey_nullcline(1.0, p.K1, p.a1, s[kX1]);
      const double q2 = prey_nullcline(p.r, p.K2, p.a2, s[kX2]);
      // Coupling terms cancel only with the dispersal weights.
      const double coupling = (p.variant == Variant::StrengthDriven)
                                  ? (w1 * p.rho1 - w2 * p.rho2) * s[kY1] * s[kY2] * (p1 - p2)
                                  : 0.0;
      dVdt_display = w1 * (p1 - pK1) * q1 + w1 * s[kY1] * (pK1 - p.d1) + w2 * (p2 - pK2) * q2 +
                     w2 * s[kY2] * (pK2 - p.d2) + coupling;
      return true;
    }
    case LyapunovKind::ClassicSubsystem: {
      const HatQuantities h = hat_quantities(p);
      const Site si = p.site(i), sj = p.site(j);
      const double mu = h.muhat[i], nu = h.nuhat[i], nuj = h.cross[j];
      if (!(s[xi] > 0.0 && s[yi] > 0.0 && s[yj] > 0.0 && nuj > 0.0)) return false;
      const double w = sj.rho + sj.d;
      const double pi = holling(si.a, s[xi]), pmu = holling(si.a, mu);
      V = w * prey_integral(s[xi], mu) + w * predator_integral(s[yi], nu) + si.rho * predator_integral(s[yj], nuj);
      dVdt = w * (1.0 - pmu / pi) * fs[xi] + w * (1.0 - nu / s[yi]) * fs[yi] + si.rho * (1.0 - nuj / s[yj]) * fs[yj];
      const double qi = prey_nullcline(si.r, si.K, si.a, s[xi]);
      const double sq = w * s[yj] - sj.rho * s[yi];
      dVdt_display = w * (pi - pmu) * (qi - nu) - si.rho * nu * sq * sq / (w * s[yi] * s[yj]);
      (void)xj;
      return true;
    }
    case LyapunovKind::ClassicPreyExtinction: {
      // Patch i loses its prey, patch j keeps both species.
      const HatQuantities h = hat_quantities(p);
      const Site si = p.site(i), sj = p.site(j);
      const double mu = h.muhat[j], nu = h.nuhat[j], nui = h.cross[i];
      if (!(s[xj] > 0.0 && s[yj] > 0.0 && s[yi] > 0.0 && nui > 0.0)) return false;
      const double w = si.rho + si.d;
      const double pj = holling(sj.a, s[xj]), pmu = holling(sj.a, mu);
      const double pi = holling(si.a, s[xi]);
      V = w * prey_integral(s[xj], mu) + w * predator_integral(s[yj], nu) + sj.rho * s[xi] +
          sj.rho * predator_integral(s[yi], nui);
      dVdt = w * (1.0 - pmu / pj) * fs[xj] + w * (1.0 - nu / s[yj]) * fs[yj] + sj.rho * fs[xi] +
             sj.rho * (1.0 - nui / s[yi]) * fs[yi];
      const double qj = prey_nullcline(sj.r, sj.K, sj.a, s[xj]);
      const double qi = prey_nullcline(si.r, si.K, si.a, s[xi]);
      const double sq = w * s[yi] - si.rho * s[yj];
      dVdt_display = w * (pj - pmu) * (qj - nu) - sj.rho * nu * sq * sq / (w * s[yi] * s[yj]) +
                     sj.rho * pi * (qi - nui);
      return true;
    }
    case LyapunovKind::ClassicSymmetric: {
      const DerivedQuantities dq = derived(p);
      const double mu = dq.mu[0], nu = dq.nu[0];
      if (!(s[kX1] > 0.0 && s[kY1] > 0.0 && s[kX2] > 0.0 && s[kY2] > 0.0)) return false;
      const double p1 = holling(p.a1, s[kX1]), p2 = holling(p.a2, s[kX2]);
      const double pm1 = holling(p.a1, mu), pm2 = holling(p.a2, mu);
      V = p.rho2 * (prey_integral(s[kX1], mu) + predator_integral(s[kY1], nu)) +
          p.rho1 * (prey_integral(s[kX2], mu) + predator_integral(s[kY2], nu));
      dVdt = p.rho2 * ((1.0 - pm1 / p1) * fs[kX1] + (1.0 - nu / s[kY1]) * fs[kY1]) +
             p.rho1 * ((1.0 - pm2 / p2) * fs[kX2] + (1.0 - nu / s[kY2]) * fs[kY2]);
      const double q1 = prey_nullcline(1.0, p.K1, p.a1, s[kX1]);
      const double q2 = prey_nullcline(p.r, p.K2, p.a2, s[kX2]);
      const double dy = s[kY1] - s[kY2];
      dVdt_display = p.rho2 * (p1 - pm1) * (q1 - nu) + p.rho1 * (p2 - pm2) * (q2 - nu) -
                     p.rho1 * p.rho2 * nu * dy * dy / (s[kY1] * s[kY2]);
      return true;
    }
  }
  return false;
}

LyapunovReport lyapunov_check(const ModelParams& p, LyapunovKind which, int patch, const Trajectory& traj) {
  LyapunovReport rep;
  rep.applicable = lyapunov_applicable(p, which, patch, &rep.reason);
  if (!rep.applicable) return rep;
  constexpr double kSlack = 1e-9;
  const std::size_t xj = prey_index(1 - patch);
  bool have_prev = false;
  double prev = 0.0;
  rep.max_dVdt = -kInf;
  rep.max_dVdt_display = -kInf;
  for (const State4& s : traj.states) {
    double V, d, dd;
    const bool off_subsystem = which == LyapunovKind::ClassicSubsystem && s[xj] != 0.0;
    if (off_subsystem || !lyapunov_eval(p, which, patch, s, V, d, dd) || !std::isfinite(V)) {
      ++rep.skipped;
      continue;
    }
    if (rep.samples == 0) rep.v_first = V;
    rep.v_last = V;
    ++rep.samples;
    rep.max_dVdt = std::max(rep.max_dVdt, d);
    rep.max_dVdt_display = std::max(rep.max_dVdt_display, dd);
    rep.max_display_gap = std::max(rep.max_display_gap, std::fabs(d - dd));
    if (have_prev) {
      const double inc = V - prev;
      rep.max_increase = std::max(rep.max_increase, inc);
      if (inc > kSlack) ++rep.violations;
    }
    prev = V;
    have_prev = true;
  }
  if (rep.samples == 0) {
    rep.max_dVdt = 0.0;
    rep.max_dVdt_display = 0.0;
  }
  return rep;
}

}  // namespace patchdyn
