#include "patchdyn/classic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "patchdyn/conditions.hpp"
#include "patchdyn/error.hpp"
#include "patchdyn/rng.hpp"

namespace patchdyn {

namespace {

void require_density(const ModelParams& p, const char* who) {
  if (p.variant != Variant::DensityDriven) throw InvalidInput(std::string(who) + ": density-driven model expected");
}

EquilibriumKind kind_of(const State4& s) {
  const bool x1 = s[kX1] > 0.0, y1 = s[kY1] > 0.0, x2 = s[kX2] > 0.0, y2 = s[kY2] > 0.0;
  if (!y1 && !y2) {
    if (x1 && x2) return EquilibriumKind::BothK;
    if (x1) return EquilibriumKind::K1Only;
    if (x2) return EquilibriumKind::K2Only;
    return EquilibriumKind::Origin;
  }
  if (x1 && y1 && x2 && y2) return EquilibriumKind::Interior;
  if (x1 && y1 && !x2 && !y2) return EquilibriumKind::PredatorIn1;
  if (x1 && y1 && x2 && !y2) return EquilibriumKind::PredatorIn1PreyIn2;
  if (!x1 && !y1 && x2 && y2) return EquilibriumKind::PredatorIn2;
  if (x1 && !y1 && x2 && y2) return EquilibriumKind::PreyIn1PredatorIn2;
  return EquilibriumKind::ClassicBoundary;
}

double q_prime(const Site& s, double x) { return s.r * (s.K - 1.0 - 2.0 * x) / (s.a * s.K); }

}  // namespace

std::vector<Equilibrium> classic_boundary_equilibria(const ModelParams& p) {
  require_density(p, "classic_boundary_equilibria");
  const HatQuantities h = hat_quantities(p);
  std::vector<Equilibrium> out;
  auto add = [&](const State4& s) { out.push_back(make_equilibrium(p, s, kind_of(s))); };
  add({0.0, 0.0, 0.0, 0.0});
  add({p.K1, 0.0, 0.0, 0.0});
  add({0.0, 0.0, p.K2, 0.0});
  add({p.K1, 0.0, p.K2, 0.0});
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    const Site si = p.site(i), sj = p.site(j);
    if (!(h.muhat[i] > 0.0 && h.muhat[i] < si.K)) continue;
    State4 s{};
    s[prey_index(i)] = h.muhat[i];
    s[predator_index(i)] = h.nuhat[i];
    s[predator_index(j)] = h.cross[j];
    add(s);
    if (sj.rho == 0.0) {
      s[prey_index(j)] = sj.K;
      add(s);
    }
  }
  sort_canonical(out);
  return out;
}

std::vector<Equilibrium> classic_interior_equilibria(const ModelParams& p) {
  require_density(p, "classic_interior_equilibria");
  const Site s1 = p.site(0), s2 = p.site(1);
  const Site sites[2] = {s1, s2};
  auto h = [&](const std::array<double, 2>& x) {
    std::array<double, 2> out;
    for (int i = 0; i < 2; ++i) {
      const int j = 1 - i;
      const Site& si = sites[i];
      const Site& sj = sites[j];
      out[i] = si.r * x[i] * (si.K - x[i]) / si.K -
               (si.d + si.rho) * prey_nullcline(si.r, si.K, si.a, x[i]) +
               si.rho * prey_nullcline(sj.r, sj.K, sj.a, x[j]);
    }
    return out;
  };
  constexpr int kGrid = 20;
  constexpr double kDedup = 1e-6;
  std::vector<std::array<double, 2>> roots;
  for (int a = 0; a < kGrid; ++a) {
    for (int b = 0; b < kGrid; ++b) {
      std::array<double, 2> x = {(a + 0.5) / kGrid * s1.K, (b + 0.5) / kGrid * s2.K};
      bool ok = false;
      for (int it = 0; it < 100; ++it) {
        const auto f = h(x);
        double J[2][2];
        for (int i = 0; i < 2; ++i) {
          const int j = 1 - i;
          const Site& si = sites[i];
          J[i][i] = si.r * (si.K - 2.0 * x[i]) / si.K - (si.d + si.rho) * q_prime(si, x[i]);
          J[i][j] = si.rho * q_prime(sites[j], x[j]);
        }
        const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        if (!std::isfinite(det) || det == 0.0) break;
        const double dx0 = (f[0] * J[1][1] - f[1] * J[0][1]) / det;
        const double dx1 = (J[0][0] * f[1] - J[1][0] * f[0]) / det;
        // damp steps that would leave the box
        double t = 1.0;
        while (t > 1e-6 && !(x[0] - t * dx0 > 0.0 && x[0] - t * dx0 < s1.K && x[1] - t * dx1 > 0.0 &&
                             x[1] - t * dx1 < s2.K))
          t *= 0.5;
        if (t <= 1e-6) break;
        x[0] -= t * dx0;
        x[1] -= t * dx1;
        if (std::fabs(t * dx0) < 1e-15 * (1.0 + x[0]) && std::fabs(t * dx1) < 1e-15 * (1.0 + x[1])) {
          ok = true;
          break;
        }
      }
      if (!ok) {
        const auto f = h(x);
        ok = std::max(std::fabs(f[0]), std::fabs(f[1])) < 1e-12;
      }
      if (!ok) continue;
      bool dup = false;
      for (const auto& r : roots) dup = dup || std::hypot(r[0] - x[0], r[1] - x[1]) < kDedup;
      if (!dup) roots.push_back(x);
    }
  }
  std::vector<Equilibrium> out;
  for (const auto& x : roots) {
    const State4 s = {x[0], prey_nullcline(s1.r, s1.K, s1.a, x[0]), x[1], prey_nullcline(s2.r, s2.K, s2.a, x[1])};
    if (!(s[kY1] >= 1e-9 && s[kY2] >= 1e-9)) continue;
    if (residual_norm(p, s) >= 1e-9) continue;
    out.push_back(make_equilibrium(p, s, EquilibriumKind::Interior));
  }
  sort_canonical(out);
  return out;
}

ConditionReport classic_condition_report(const ModelParams& p) {
  require_density(p, "classic_condition_report");
  const HatQuantities h = hat_quantities(p);
  const DerivedQuantities dq = derived(p);
  const std::string th = "Th8";
  ConditionReport rep;
  auto idx = [](int i) { return std::to_string(i + 1); };
  auto hopf_hat = [&](int i) { return (p.site(i).K - 1.0) / 2.0; };
  auto push = [&](Clause c) {
    rep.entries.push_back(c.build());
    return rep.entries.back().fired;
  };

  const double pK1 = holling(p.a1, p.K1), pK2 = holling(p.a2, p.K2);
  push(Clause(th, "2_BothK_trace").greater(p.d1 + p.d2 + p.rho1 + p.rho2, pK1 + pK2));
  const double det_form = (p.d1 - pK1) * (1.0 - pK2 / (p.d2 + p.rho2)) + p.rho1 / (p.d2 + p.rho2) * (p.d2 - pK2);
  push(Clause(th, "2_BothK_det").greater(det_form, 0.0).value("factored", det_form));
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    const Site sj = p.site(j);
    push(Clause(th, "2_Eb" + idx(i) + "_stable")
             .between(hopf_hat(i), h.muhat[i], p.site(i).K)
             .less(sj.r, sj.a * h.cross[j])
             .value("muhat_i", h.muhat[i])
             .value("nuhat_j^i", h.cross[j]));
  }
  for (int i = 0; i < 2; ++i) push(Clause(th, "3b(" + idx(i) + ")").greater(h.muhat[i], p.site(i).K));
  for (int i = 0; i < 2; ++i)
    push(Clause(th, "3c(" + idx(i) + ")").between(hopf_hat(i), h.muhat[i], p.site(i).K).value("muhat_i", h.muhat[i]));

  // prey x_i invades E^b_j when r_i > a_i y_i there, y_i = nuhat_i^j
  auto invades = [&](int i) {
    const int j = 1 - i;
    const Site si = p.site(i);
    return Clause(th, "").between(hopf_hat(j), h.muhat[j], p.site(j).K).greater(si.r, si.a * h.cross[i]);
  };
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    const Clause inv = invades(i);
    const Verdict absent = compare_less(p.site(j).K, h.muhat[j]);
    const Verdict v = any_of({absent, inv.verdict()});
    push(Clause(th, "4_prey_persists(" + idx(i) + ")")
             .require(v, std::max(slack_less(p.site(j).K, h.muhat[j]), inv.margin()))
             .value("muhat_j", h.muhat[j])
             .value("nuhat_i^j", h.cross[i]));
  }
  const Verdict v4a = push(Clause(th, "4a").greater(h.muhat[0], p.K1).greater(h.muhat[1], p.K2));
  Clause c4b(th, "4b");
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    c4b.between(hopf_hat(i), h.muhat[i], p.site(i).K).greater(p.site(j).r, p.site(j).a * h.cross[j]);
  }
  const Verdict v4b = push(c4b);
  std::vector<Verdict> v4c;
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    v4c.push_back(push(Clause(th, "4c(i=" + idx(i) + ",j=" + idx(j) + ")")
                           .greater(h.muhat[i], p.site(i).K)
                           .between(hopf_hat(j), h.muhat[j], p.site(j).K)
                           .greater(p.site(i).r, p.site(i).a * h.cross[i])));
  }

  std::vector<Verdict> ext_stmt, ext_proof;
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    const Site si = p.site(i);
    const double qmax = si.r * (si.K + 1.0) * (si.K + 1.0) / (4.0 * si.a * si.K);
    ext_stmt.push_back(push(Clause(th, "5_statement(" + idx(i) + ")")
                                .between(hopf_hat(j), h.muhat[j], p.site(j).K)
                                .less(qmax, h.cross[j])
                                .value("qmax_i", qmax)
                                .value("nuhat_j^i", h.cross[j])));
    ext_proof.push_back(push(Clause(th, "5_proof(" + idx(i) + ")")
                                 .between(hopf_hat(j), h.muhat[j], p.site(j).K)
                                 .less(qmax, h.cross[i])
                                 .value("qmax_i", qmax)
                                 .value("nuhat_i^j", h.cross[i])));
  }
  const double m4 = std::max({rep.find(th, "4a")->margin, rep.find(th, "4b")->margin,
                              rep.find(th, "4c(i=1,j=2)")->margin, rep.find(th, "4c(i=2,j=1)")->margin});
  const Verdict v6p =
      push(Clause(th, "6_persist").between(0.0, dq.mu[0], p.K1).between(0.0, dq.mu[1], p.K2));
  const double m6 = rep.entries.back().margin;
  const Verdict v6e = push(Clause(th, "6_extinct").greater(dq.mu[0], p.K1).greater(dq.mu[1], p.K2));
  const Verdict any4 = any_of({v4a, v4b, v4c[0], v4c[1]});
  const Verdict v7 = all_of({v6p, any4});
  push(Clause(th, "7_permanent").require(v7, std::min(m6, m4)));

  rep.flags.emplace_back("predators_persist_sufficient", v6p);
  rep.flags.emplace_back("predators_extinct_sufficient", v6e);
  rep.flags.emplace_back("permanent_sufficient", v7);
  rep.flags.emplace_back("prey1_extinct_sufficient", ext_proof[0]);
  rep.flags.emplace_back("prey2_extinct_sufficient", ext_proof[1]);
  bool disagree = false;
  for (int i = 0; i < 2; ++i) disagree = disagree || ext_stmt[i] != ext_proof[i];
  rep.flags.emplace_back("prey_extinction_subscripts_disagree", disagree ? Verdict::True : Verdict::False);
  return rep;
}

SymmetricCheck symmetric_global_check(const ModelParams& p, const SymmetricOptions& opt) {
  require_density(p, "symmetric_global_check");
  std::string why;
  if (!lyapunov_applicable(p, LyapunovKind::ClassicSymmetric, 0, &why) && why.find("requires r = 1") != std::string::npos)
    throw NotApplicable("symmetric_global_check: " + why);
  const DerivedQuantities dq = derived(p);
  SymmetricCheck out;
  out.mu = dq.mu[0];
  out.nu = dq.nu[0];
  if (!(out.mu > 0.0 && out.mu < p.K1)) throw NotApplicable("symmetric_global_check: requires 0 < mu < K");
  const State4 eq = {out.mu, out.nu, out.mu, out.nu};
  const Equilibrium e = make_equilibrium(p, eq, EquilibriumKind::Interior);
  out.residual = e.residual;
  out.stability = e.stability;
  ModelParams uncoupled = p;
  uncoupled.rho1 = uncoupled.rho2 = 0.0;
  out.single_patch_stability = make_equilibrium(uncoupled, eq, EquilibriumKind::Interior).stability;

  const bool lyap = lyapunov_applicable(p, LyapunovKind::ClassicSymmetric, 0, &out.lyapunov.reason);
  out.lyapunov.applicable = lyap;
  IntegratorOptions iopt;
  iopt.sample_dt = 0.5;
  for (int k = 0; k < opt.starts; ++k) {
    CounterRng rng = CounterRng::split(opt.seed, 0x5eed, static_cast<std::uint64_t>(k));
    const State4 s0 = random_interior_start(p, rng);
    const Trajectory tr = integrate(p, s0, opt.t_end, iopt);
    const State4& last = tr.states.back();
    double dist = 0.0;
    for (int c = 0; c < 4; ++c) dist = std::max(dist, std::fabs(last[c] - eq[c]));
    out.max_distance = std::max(out.max_distance, dist);
    ++out.starts;
    if (dist < opt.tol) ++out.converged;
    if (lyap) {
      const LyapunovReport r = lyapunov_check(p, LyapunovKind::ClassicSymmetric, 0, tr);
      LyapunovReport& acc = out.lyapunov;
      if (acc.samples == 0) {
        acc.v_first = r.v_first;
        acc.max_dVdt = r.max_dVdt;
        acc.max_dVdt_display = r.max_dVdt_display;
      }
      acc.samples += r.samples;
      acc.skipped += r.skipped;
      acc.violations += r.violations;
      acc.max_increase = std::max(acc.max_increase, r.max_increase);
      acc.max_dVdt = std::max(acc.max_dVdt, r.max_dVdt);
      acc.max_dVdt_display = std::max(acc.max_dVdt_display, r.max_dVdt_display);
      acc.max_display_gap = std::max(acc.max_display_gap, r.max_display_gap);
      acc.v_last = r.v_last;
    }
  }
  return out;
}

ComparisonRecord compare_models(const ModelParams& p, const CompareOptions& opt) {
  ComparisonRecord rec;
  rec.seed = opt.seed;
  auto run = [&](Variant v) {
    VariantSummary s;
    s.params = p;
    s.params.variant = v;
    s.equilibria = all_equilibria(s.params);
    for (const auto& e : s.equilibria) (e.kind == EquilibriumKind::Interior ? s.n_interior : s.n_boundary)++;
    s.report = condition_report(s.params);
    for (int k = 0; k < opt.probes; ++k) {
      // same starts for both variants
      CounterRng rng = CounterRng::split(opt.seed, 0xc0, static_cast<std::uint64_t>(k));
      const State4 s0 = random_interior_start(p, rng);
      s.outcomes.push_back(simulate_and_classify(s.params, s0, opt.classify).label);
    }
    return s;
  };
  rec.strength = run(Variant::StrengthDriven);
  rec.density = run(Variant::DensityDriven);
  return rec;
}

}  // namespace patchdyn
