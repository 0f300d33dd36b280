#include "patchdyn/equilibria.hpp"

#include <algorithm>
#include <cmath>

#include "patchdyn/classic.hpp"
#include "patchdyn/error.hpp"

namespace patchdyn {

const char* to_string(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::Origin: return "Origin";
    case EquilibriumKind::K1Only: return "K1Only";
    case EquilibriumKind::K2Only: return "K2Only";
    case EquilibriumKind::BothK: return "BothK";
    case EquilibriumKind::PredatorIn1: return "PredatorIn1";
    case EquilibriumKind::PredatorIn1PreyIn2: return "PredatorIn1PreyIn2";
    case EquilibriumKind::PredatorIn2: return "PredatorIn2";
    case EquilibriumKind::PreyIn1PredatorIn2: return "PreyIn1PredatorIn2";
    case EquilibriumKind::Interior: return "Interior";
    case EquilibriumKind::ClassicBoundary: return "ClassicBoundary";
  }
  return "Interior";
}

double residual_norm(const ModelParams& p, const State4& s) {
  const State4 f = rhs(p, s);
  double m = 0.0;
  for (double v : f) m = std::max(m, std::fabs(v));
  return m;
}

Equilibrium make_equilibrium(const ModelParams& p, const State4& s, EquilibriumKind kind) {
  Equilibrium e;
  e.state = s;
  for (double& v : e.state) v += 0.0;
  e.kind = kind;
  e.eigenvalues = eigenvalues(jacobian(p, e.state));
  e.stability = classify(e.eigenvalues);
  e.residual = residual_norm(p, e.state);
  return e;
}

void sort_canonical(std::vector<Equilibrium>& eqs) {
  std::stable_sort(eqs.begin(), eqs.end(), [](const Equilibrium& a, const Equilibrium& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.state < b.state;
  });
}

std::vector<Equilibrium> boundary_equilibria(const ModelParams& p) {
  if (p.variant != Variant::StrengthDriven)
    throw InvalidInput("boundary_equilibria: strength-driven model expected");
  const DerivedQuantities dq = derived(p);
  std::vector<Equilibrium> out;
  out.push_back(make_equilibrium(p, {0.0, 0.0, 0.0, 0.0}, EquilibriumKind::Origin));
  out.push_back(make_equilibrium(p, {p.K1, 0.0, 0.0, 0.0}, EquilibriumKind::K1Only));
  out.push_back(make_equilibrium(p, {0.0, 0.0, p.K2, 0.0}, EquilibriumKind::K2Only));
  out.push_back(make_equilibrium(p, {p.K1, 0.0, p.K2, 0.0}, EquilibriumKind::BothK));
  if (dq.mu[0] > 0.0 && dq.mu[0] < p.K1) {
    out.push_back(make_equilibrium(p, {dq.mu[0], dq.nu[0], 0.0, 0.0}, EquilibriumKind::PredatorIn1));
    out.push_back(make_equilibrium(p, {dq.mu[0], dq.nu[0], p.K2, 0.0}, EquilibriumKind::PredatorIn1PreyIn2));
  }
  if (dq.mu[1] > 0.0 && dq.mu[1] < p.K2) {
    out.push_back(make_equilibrium(p, {0.0, 0.0, dq.mu[1], dq.nu[1]}, EquilibriumKind::PredatorIn2));
    out.push_back(make_equilibrium(p, {p.K1, 0.0, dq.mu[1], dq.nu[1]}, EquilibriumKind::PreyIn1PredatorIn2));
  }
  sort_canonical(out);
  return out;
}

NullclineFns nullclines(const ModelParams& p) {
  const double r1 = 1.0, r2 = p.r;
  const double a1 = p.a1, a2 = p.a2, K1 = p.K1, K2 = p.K2, d1 = p.d1, d2 = p.d2;
  NullclineFns nf;
  nf.ft = {a2 * K2 * d1, a2 * r2 * p.rho1 * K2, -a2 * r2 * p.rho1};
  nf.fb = {K2 * (a1 * r2 * p.rho1 + a1 * a2 - a2 * d1), r2 * p.rho1 * (K2 * a1 - K2 * a2 - a1),
           -r2 * p.rho1 * (a1 - a2)};
  nf.gt = {a1 * K1 * d2, a1 * r1 * p.rho2 * K1, -a1 * r1 * p.rho2};
  nf.gb = {K1 * (a2 * r1 * p.rho2 + a1 * a2 - a1 * d2), r1 * p.rho2 * (K1 * a2 - K1 * a1 - a2),
           -r1 * p.rho2 * (a2 - a1)};
  return nf;
}

namespace {

double eval_ratio(const Quadratic& top, const Quadratic& bottom, double x, const char* name) {
  const double den = bottom(x);
  const double scale = std::fabs(bottom.c0) + std::fabs(bottom.c1 * x) + std::fabs(bottom.c2 * x * x);
  if (!std::isfinite(den) || std::fabs(den) <= 1e-14 * scale)
    throw PoleError(std::string(name) + ": denominator vanishes", x);
  return top(x) / den;
}

}  // namespace

double eval_F(const NullclineFns& nf, double x2) { return eval_ratio(nf.ft, nf.fb, x2, "eval_F"); }
double eval_G(const NullclineFns& nf, double x1) { return eval_ratio(nf.gt, nf.gb, x1, "eval_G"); }

Polynomial interior_polynomial(const NullclineFns& nf) {
  const Polynomial gt = nf.gt.poly(), gb = nf.gb.poly();
  const Polynomial gb2 = gb * gb, gtgb = gt * gb, gt2 = gt * gt;
  const Polynomial num = gb2 * nf.ft.c0 + gtgb * nf.ft.c1 + gt2 * nf.ft.c2;
  const Polynomial den = gb2 * nf.fb.c0 + gtgb * nf.fb.c1 + gt2 * nf.fb.c2;
  return (Polynomial{0.0, 1.0} * den - num).trimmed();
}

namespace {

// Stationary points of top/bottom: roots of top' bottom - top bottom'. The
// cubic terms cancel.
std::optional<double> ratio_stationary_point(const Quadratic& t, const Quadratic& b, double K) {
  const double A = t.c2 * b.c1 - t.c1 * b.c2;
  const double B = 2.0 * (t.c2 * b.c0 - t.c0 * b.c2);
  const double C = t.c1 * b.c0 - t.c0 * b.c1;
  std::vector<double> cand;
  const double scale = std::fabs(A) * K * K + std::fabs(B) * K + std::fabs(C);
  if (!(scale > 0.0)) return std::nullopt;
  if (std::fabs(A) * K * K <= 1e-14 * scale) {
    if (B != 0.0) cand.push_back(-C / B);
  } else {
    const double disc = B * B - 4.0 * A * C;
    if (disc >= 0.0) {
      // Stable form of the quadratic formula.
      const double q = -0.5 * (B + std::copysign(std::sqrt(disc), B));
      if (q != 0.0) cand.push_back(C / q);
      cand.push_back(q / A);
    }
  }
  std::optional<double> best;
  double best_val = -kInf;
  for (double x : cand) {
    if (!(x > 0.0 && x < K)) continue;
    const double den = b(x);
    if (den == 0.0) continue;
    const double v = t(x) / den;
    if (v > best_val) {
      best_val = v;
      best = x;
    }
  }
  return best;
}

}  // namespace

std::optional<double> critical_point(const ModelParams& p, int patch) {
  const NullclineFns nf = nullclines(p);
  if (patch == 0) {
    if (p.rho2 == 0.0) return std::nullopt;
    return ratio_stationary_point(nf.gt, nf.gb, p.K1);
  }
  if (p.rho1 == 0.0) return std::nullopt;
  return ratio_stationary_point(nf.ft, nf.fb, p.K2);
}

std::optional<double> critical_point_displayed(const ModelParams& p, int patch) {
  const Site si = p.site(patch), sj = p.site(1 - patch);
  const double rr = si.r * sj.rho;
  if (rr == 0.0) return std::nullopt;
  const double rad = (si.a - sj.d) * (rr + si.a - sj.d);
  if (rad < 0.0) return std::nullopt;
  return si.K * (rr + si.a - sj.d - std::sqrt(rad)) / rr;
}

namespace {

constexpr double kScanEps = 1e-9;
constexpr double kDedup = 1e-8;
constexpr double kFoldSlope = 1e-6;
constexpr double kResidualTol = 1e-9;
constexpr double kMinPredator = 1e-9;

}  // namespace

std::vector<Equilibrium> interior_equilibria(const ModelParams& p) {
  if (p.variant != Variant::StrengthDriven)
    throw InvalidInput("interior_equilibria: strength-driven model expected");
  std::vector<Equilibrium> out;
  const DerivedQuantities dq = derived(p);
  if (p.rho1 == 0.0 && p.rho2 == 0.0) {
    if (dq.mu[0] > 0.0 && dq.mu[0] < p.K1 && dq.mu[1] > 0.0 && dq.mu[1] < p.K2)
      out.push_back(make_equilibrium(p, {dq.mu[0], dq.nu[0], dq.mu[1], dq.nu[1]}, EquilibriumKind::Interior));
    return out;
  }

  const NullclineFns nf = nullclines(p);
  const Polynomial P = interior_polynomial(nf);
  if (P.degree() < 0) return out;
  const Polynomial gb = nf.gb.poly();
  std::vector<double> roots =
      scan_real_roots(P, kScanEps * p.K1, (1.0 - kScanEps) * p.K1, RootScanOptions{}, &gb);
  std::sort(roots.begin(), roots.end());

  // Fold test on the normalised polynomial in u = x1 / K1.
  double norm = 0.0, kp = 1.0;
  for (double c : P.coeffs()) {
    norm += std::fabs(c) * kp;
    kp *= p.K1;
  }
  const Polynomial dP = P.derivative();

  struct Candidate {
    double x1;
    bool degenerate;
  };
  std::vector<Candidate> merged;
  for (double x : roots) {
    const bool fold = norm > 0.0 && std::fabs(dP(x)) * p.K1 / norm < kFoldSlope;
    if (!merged.empty() && x - merged.back().x1 < kDedup * p.K1) {
      merged.back().degenerate = true;
      continue;
    }
    merged.push_back({x, fold});
  }

  for (const Candidate& c : merged) {
    const double x1 = c.x1;
    const double den = nf.gb(x1);
    if (den == 0.0) continue;
    const double x2 = nf.gt(x1) / den;
    if (!(x2 > 0.0 && x2 < p.K2)) continue;
    const double y1 = prey_nullcline(1.0, p.K1, p.a1, x1);
    const double y2 = prey_nullcline(p.r, p.K2, p.a2, x2);
    if (!(y1 >= kMinPredator && y2 >= kMinPredator)) continue;
    const State4 s{x1, y1, x2, y2};
    if (!(residual_norm(p, s) < kResidualTol)) continue;
    Equilibrium e = make_equilibrium(p, s, EquilibriumKind::Interior);
    e.degenerate = c.degenerate;
    out.push_back(e);
  }
  return out;
}

namespace {

bool equal_within_band(double a, double b) { return std::fabs(a - b) < kPredicateBand; }

// max of F on [0, K2] read at its stationary point, or at an endpoint if
// there is no stationary point inside.
double nullcline_peak(const Quadratic& t, const Quadratic& b, std::optional<double> xc, double K) {
  auto f = [&](double x) {
    const double den = b(x);
    return den == 0.0 ? std::numeric_limits<double>::quiet_NaN() : t(x) / den;
  };
  if (xc) return f(*xc);
  return std::max(f(0.0), f(K));
}

}  // namespace

ConditionReport theorem6_existence_report(const ModelParams& p) {
  ConditionReport rep;
  const DerivedQuantities dq = derived(p);
  const NullclineFns nf = nullclines(p);
  const std::string th = "Th6";

  rep.entries.push_back(Clause(th, "no_interior_mu_gt_K")
                            .greater(dq.mu[0], p.K1)
                            .greater(dq.mu[1], p.K2)
                            .value("mu1", dq.mu[0])
                            .value("mu2", dq.mu[1])
                            .build());

  const std::optional<double> xc1 = critical_point(p, 0);
  const std::optional<double> xc2 = critical_point(p, 1);
  const double f_peak = nullcline_peak(nf.ft, nf.fb, xc2, p.K2);
  const double g_peak = nullcline_peak(nf.gt, nf.gb, xc1, p.K1);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::vector<Verdict> nonexist, exist;
  nonexist.push_back(rep.entries.back().fired);

  // Case a_i > a_j, both index orders.
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    const Site si = p.site(i), sj = p.site(j);
    const std::string tag = "(i=" + std::to_string(i + 1) + ",j=" + std::to_string(j + 1) + ")";
    const double lead = sj.K * si.a - sj.K * sj.a + si.a;
    const double b_non = 4.0 * sj.K * sj.a * (si.a - sj.a) * (si.d - si.a) / (sj.r * lead * lead);
    rep.entries.push_back(Clause(th, "case1_nonexist" + tag)
                              .greater(si.a, sj.a)
                              .less(si.rho, b_non)
                              .value("bound", b_non)
                              .build());
    nonexist.push_back(rep.entries.back().fired);

    const double lead2 = si.K * sj.a - si.K * si.a + sj.a;
    const double b_ex = 4.0 * si.K * si.a * (sj.a - si.a) * (sj.d - sj.a) / (si.r * lead2 * lead2);
    rep.entries.push_back(Clause(th, "case1_exist" + tag)
                              .greater(si.a, sj.a)
                              .greater(si.a, p.d1)
                              .greater(si.a, p.d2)
                              .greater(sj.a, p.d1)
                              .greater(sj.a, p.d2)
                              .less(sj.rho, b_ex)
                              .less(f_peak, p.K1)
                              .less(g_peak, p.K2)
                              .value("bound", b_ex)
                              .value("F_at_xc2", f_peak)
                              .value("G_at_xc1", g_peak)
                              .value("xc1", xc1.value_or(nan))
                              .value("xc2", xc2.value_or(nan))
                              .build());
    exist.push_back(rep.entries.back().fired);

    const double tiK = si.K * si.a - si.K * si.d - si.d;
    const double b_fi = 4.0 * tiK / (sj.K * sj.r);
    const double lead3 = sj.K * sj.a - sj.K * si.a - si.a;
    const double b_fj = 4.0 * sj.K * sj.a * tiK / (sj.a * sj.r * sj.K * sj.K + sj.r * si.K * lead3 * lead3);
    // rho_i <= bound, banded like the strict comparisons
    rep.entries.push_back(Clause(th, "case1_sufficient_rho_i" + tag)
                              .greater(si.a, sj.a)
                              .require(negate(compare_less(b_fi, si.rho)), slack_less(si.rho, b_fi))
                              .value("bound", b_fi)
                              .build());
    rep.entries.push_back(Clause(th, "case1_sufficient_rho_j" + tag)
                              .greater(si.a, sj.a)
                              .less(sj.rho, b_fj)
                              .value("bound", b_fj)
                              .build());
    const double lower = si.a * sj.d / (sj.a * si.r * sj.rho + si.a * sj.a - si.a * sj.d);
    rep.entries.push_back(Clause(th, "case1_lower_bound_x_j" + tag)
                              .greater(si.a, sj.a)
                              .value("lower", lower)
                              .value("K_j", sj.K)
                              .build());
  }

  // Case a1 = a2 = a.
  const Verdict same_a = equal_within_band(p.a1, p.a2) ? Verdict::True : Verdict::False;
  const double same_a_margin = same_a == Verdict::True ? kInf : -std::fabs(p.a1 - p.a2);
  const double a = p.a1;
  {
    const Verdict n1 = compare_less(a + p.r * p.rho1, p.d1);
    const Verdict n2 = compare_less(a + 1.0 * p.rho2, p.d2);
    const double m = std::max(slack_less(a + p.r * p.rho1, p.d1), slack_less(a + p.rho2, p.d2));
    Clause c(th, "case2_nonexist");
    c.require(same_a, same_a_margin).require(any_of({n1, n2}), m);
    c.value("a_plus_r2rho1", a + p.r * p.rho1).value("a_plus_r1rho2", a + p.rho2);
    rep.entries.push_back(c.build());
    nonexist.push_back(rep.entries.back().fired);
  }
  rep.entries.push_back(Clause(th, "case2_exist")
                            .require(same_a, same_a_margin)
                            .greater(a, p.d1)
                            .greater(a, p.d2)
                            .less(f_peak, p.K1)
                            .less(g_peak, p.K2)
                            .value("F_at_xc2", f_peak)
                            .value("G_at_xc1", g_peak)
                            .build());
  exist.push_back(rep.entries.back().fired);
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    const Site si = p.site(i), sj = p.site(j);
    const std::string tag = "(i=" + std::to_string(i + 1) + ",j=" + std::to_string(j + 1) + ")";
    const double b = 4.0 * (si.K * a - si.K * si.d - si.d) / (sj.K * sj.r);
    rep.entries.push_back(Clause(th, "case2_sufficient" + tag)
                              .require(same_a, same_a_margin)
                              .less(si.rho, b)
                              .value("bound", b)
                              .value("lower_x_j", sj.d / (si.r * sj.rho + a - sj.d))
                              .build());
  }

  rep.flags.emplace_back("no_interior_sufficient", any_of(nonexist));
  rep.flags.emplace_back("interior_exists_sufficient", any_of(exist));
  return rep;
}

std::vector<Equilibrium> all_equilibria(const ModelParams& p) {
  std::vector<Equilibrium> out;
  if (p.variant == Variant::StrengthDriven) {
    out = boundary_equilibria(p);
    for (auto& e : interior_equilibria(p)) out.push_back(e);
  } else {
    out = classic_boundary_equilibria(p);
    for (auto& e : classic_interior_equilibria(p)) out.push_back(e);
  }
  sort_canonical(out);
  return out;
}

}  // namespace patchdyn
