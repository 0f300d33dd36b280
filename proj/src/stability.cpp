#include "patchdyn/stability.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "patchdyn/error.hpp"

namespace patchdyn {

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Sink: return "Sink";
    case Stability::Saddle: return "Saddle";
    case Stability::Source: return "Source";
    case Stability::Marginal: return "Marginal";
  }
  return "Marginal";
}

Jacobian4 jacobian(const ModelParams& p, const State4& s) {
  const double x1 = s[kX1], y1 = s[kY1], x2 = s[kX2], y2 = s[kY2];
  const double p1 = holling(p.a1, x1), p2 = holling(p.a2, x2);
  const double dp1 = p.a1 / ((1.0 + x1) * (1.0 + x1));
  const double dp2 = p.a2 / ((1.0 + x2) * (1.0 + x2));
  Jacobian4 J{};
  J[0] = {1.0 - 2.0 * x1 / p.K1 - dp1 * y1, -p1, 0.0, 0.0};
  J[2] = {0.0, 0.0, p.r * (1.0 - 2.0 * x2 / p.K2) - dp2 * y2, -p2};
  if (p.variant == Variant::StrengthDriven) {
    J[1] = {y1 * dp1 * (1.0 + p.rho1 * y2), p1 * (1.0 + p.rho1 * y2) - p.d1 - p.rho1 * p2 * y2,
            -p.rho1 * y1 * y2 * dp2, p.rho1 * y1 * (p1 - p2)};
    J[3] = {-p.rho2 * y2 * y1 * dp1, p.rho2 * y2 * (p2 - p1), y2 * dp2 * (1.0 + p.rho2 * y1),
            p2 * (1.0 + p.rho2 * y1) - p.d2 - p.rho2 * p1 * y1};
  } else {
    J[1] = {dp1 * y1, p1 - p.d1 - p.rho1, 0.0, p.rho1};
    J[3] = {0.0, p.rho2, dp2 * y2, p2 - p.d2 - p.rho2};
  }
  // No signed zeros, so output does not depend on which terms vanished.
  for (auto& row : J)
    for (double& v : row) v += 0.0;
  return J;
}

namespace {

double det3(const Jacobian4& J, int a, int b, int c) {
  return J[a][a] * (J[b][b] * J[c][c] - J[b][c] * J[c][b]) -
         J[a][b] * (J[b][a] * J[c][c] - J[b][c] * J[c][a]) +
         J[a][c] * (J[b][a] * J[c][b] - J[b][b] * J[c][a]);
}

double det4(const Jacobian4& m) {
  // Laplace expansion along the first row.
  double det = 0.0;
  for (int col = 0; col < 4; ++col) {
    double minor[3][3];
    for (int r = 1; r < 4; ++r) {
      int cc = 0;
      for (int c = 0; c < 4; ++c) {
        if (c == col) continue;
        minor[r - 1][cc++] = m[r][c];
      }
    }
    const double d3 = minor[0][0] * (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1]) -
                      minor[0][1] * (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0]) +
                      minor[0][2] * (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]);
    det += ((col % 2) ? -1.0 : 1.0) * m[0][col] * d3;
  }
  return det;
}

using cplx = std::complex<double>;

cplx eval_monic(const std::vector<double>& a, cplx z) {
  cplx acc = a.back();
  for (std::size_t i = a.size() - 1; i-- > 0;) acc = acc * z + a[i];
  return acc;
}

cplx eval_deriv(const std::vector<double>& a, cplx z) {
  cplx acc = 0.0;
  for (std::size_t i = a.size() - 1; i >= 1; --i) acc = acc * z + static_cast<double>(i) * a[i];
  return acc;
}

double residual_scale(const std::vector<double>& a, cplx z) {
  const double m = std::abs(z);
  double acc = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * m + std::fabs(a[i]);
  return acc;
}

}  // namespace

std::array<double, 4> characteristic_polynomial(const Jacobian4& J) {
  const double tr = J[0][0] + J[1][1] + J[2][2] + J[3][3];
  double m2 = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) m2 += J[a][a] * J[b][b] - J[a][b] * J[b][a];
  const double m3 = det3(J, 1, 2, 3) + det3(J, 0, 2, 3) + det3(J, 0, 1, 3) + det3(J, 0, 1, 2);
  return {det4(J), -m3, m2, -tr};
}

Eigenvalues quartic_roots(const std::array<double, 4>& c) {
  for (double v : c)
    if (!std::isfinite(v)) throw NumericalFailure("quartic_roots: non-finite coefficient");
  std::vector<double> a = {c[0], c[1], c[2], c[3], 1.0};
  std::vector<cplx> roots;
  while (a.size() > 1 && a[0] == 0.0) {
    roots.emplace_back(0.0, 0.0);
    a.erase(a.begin());
  }
  const int n = static_cast<int>(a.size()) - 1;
  if (n > 0) {
    // Scale so the roots sit near the unit circle.
    double s = 0.0;
    for (int k = 0; k < n; ++k) s = std::max(s, std::pow(std::fabs(a[k]), 1.0 / (n - k)));
    if (!(s > 0.0)) s = 1.0;
    std::vector<double> b(a.size());
    for (int k = 0; k <= n; ++k) b[k] = a[k] / std::pow(s, n - k);

    std::vector<cplx> z(n);
    const cplx seed(0.4, 0.9);
    cplx w(1.0, 0.0);
    for (int k = 0; k < n; ++k) {
      z[k] = w;
      w *= seed;
    }
    auto converged = [&] {
      for (int k = 0; k < n; ++k)
        if (std::abs(eval_monic(b, z[k])) > 1e-12 * residual_scale(b, z[k])) return false;
      return true;
    };
    bool done = converged();
    for (int it = 0; it < 200 && !done; ++it) {
      for (int k = 0; k < n; ++k) {
        cplx den(1.0, 0.0);
        for (int j = 0; j < n; ++j)
          if (j != k) den *= (z[k] - z[j]);
        if (den == cplx(0.0, 0.0)) den = cplx(1e-300, 0.0);
        z[k] -= eval_monic(b, z[k]) / den;
      }
      done = converged();
    }
    if (!done) throw NumericalFailure("quartic_roots: Durand-Kerner did not converge in 200 iterations");
    for (int k = 0; k < n; ++k) {
      for (int it = 0; it < 3; ++it) {
        const cplx f = eval_monic(b, z[k]);
        const cplx df = eval_deriv(b, z[k]);
        if (df == cplx(0.0, 0.0)) break;
        const cplx zn = z[k] - f / df;
        if (!(std::abs(eval_monic(b, zn)) < std::abs(f))) break;
        z[k] = zn;
      }
      cplx root = z[k] * s;
      if (std::fabs(root.imag()) <= 1e-14 * (1.0 + std::abs(root))) root = cplx(root.real(), 0.0);
      roots.push_back(root);
    }
  }
  Eigenvalues out;
  std::sort(roots.begin(), roots.end(), [](const cplx& l, const cplx& r) {
    return l.real() != r.real() ? l.real() < r.real() : l.imag() < r.imag();
  });
  for (int k = 0; k < 4; ++k) out[k] = roots[k] + cplx(0.0, 0.0);
  return out;
}

Eigenvalues eigenvalues(const Jacobian4& J) {
  for (const auto& row : J)
    for (double v : row)
      if (!std::isfinite(v)) throw NumericalFailure("eigenvalues: non-finite Jacobian entry");
  return quartic_roots(characteristic_polynomial(J));
}

Stability classify(std::span<const std::complex<double>> eigs) {
  bool pos = false, neg = false, all_neg = true, all_pos = true;
  for (const auto& e : eigs) {
    const double re = e.real();
    pos = pos || re > kMarginalBand;
    neg = neg || re < -kMarginalBand;
    all_neg = all_neg && re < -kMarginalBand;
    all_pos = all_pos && re > kMarginalBand;
  }
  if (all_neg) return Stability::Sink;
  if (all_pos) return Stability::Source;
  if (pos && neg) return Stability::Saddle;
  return Stability::Marginal;
}

namespace {

bool same_death_rate(const ModelParams& p) {
  return std::fabs(p.d1 - p.d2) <= 1e-12 * std::max(p.d1, p.d2);
}

}  // namespace

CharQuartic theorem7_quartic(const ModelParams& p) {
  if (p.variant != Variant::StrengthDriven) throw NotApplicable("theorem7_quartic: strength-driven model only");
  if (!same_death_rate(p)) throw NotApplicable("theorem7_quartic: requires d1 == d2");
  const DerivedQuantities dq = derived(p);
  for (int i = 0; i < 2; ++i)
    if (!(dq.mu[i] > 0.0 && dq.mu[i] < p.site(i).K))
      throw NotApplicable("theorem7_quartic: requires 0 < mu_i < K_i for both patches");
  const double d = p.d1;
  CharQuartic q{};
  for (int i = 0; i < 2; ++i) {
    const Site si = p.site(i), sj = p.site(1 - i);
    const double mu = dq.mu[i], nu = dq.nu[i], nuj = dq.nu[1 - i];
    q.alpha[i] = -si.r * mu * (si.K * si.a - si.K * d - si.a - d) / (si.K * si.a);
    q.beta[i] = nu * (nuj * si.rho + 1.0) * (si.a - d) * (si.a - d) / si.a;
    q.gamma[i] = si.rho * nu * nuj * (sj.a - d) * (sj.a - d) / sj.a;
  }
  const double a1 = q.alpha[0], a2 = q.alpha[1];
  q.c3 = a1 + a2;
  q.c2 = a1 * a2 + d * (q.beta[0] + q.beta[1]);
  q.c1 = d * (a1 * q.beta[1] + a2 * q.beta[0]);
  // beta1 beta2 - gamma1 gamma2 in closed form
  const double e1 = (p.a1 - d) * (p.a1 - d), e2 = (p.a2 - d) * (p.a2 - d);
  const double bg = dq.nu[0] * dq.nu[1] * e1 * e2 * (dq.nu[0] * p.rho2 + dq.nu[1] * p.rho1 + 1.0) / (p.a1 * p.a2);
  q.c0 = d * d * bg;
  return q;
}

double theorem7_rho_threshold(const ModelParams& p, int i) {
  if (!same_death_rate(p)) throw NotApplicable("theorem7_rho_threshold: requires d1 == d2");
  const DerivedQuantities dq = derived(p);
  const int j = 1 - i;
  const Site si = p.site(i), sj = p.site(j);
  const double d = p.d1;
  const double mui = dq.mu[i], muj = dq.mu[j], nui = dq.nu[i], nuj = dq.nu[j];
  const double ti = si.K * si.a - si.K * d - si.a - d;
  const double tj = sj.K * sj.a - sj.K * d - sj.a - d;
  const double first = (-nuj - sj.r * mui * muj * ti * tj) /
                       (si.K * sj.K * sj.a * nuj * d * nui * (si.a - d) * (si.a - d));
  const double inner = mui * nuj * sj.K * (nui * sj.rho + 1.0) * (sj.a - d) * (sj.a - d) * ti /
                       (sj.r * muj * nui * si.K * (si.a - d) * (si.a - d) * tj);
  const double second = (-inner - 1.0) / nuj;
  return std::max(first, second);
}

Verdict routh_hurwitz(const CharQuartic& q) {
  const double c3 = q.c3, c2 = q.c2, c1 = q.c1, c0 = q.c0;
  return all_of({compare_less(0.0, c3), compare_less(0.0, c2), compare_less(0.0, c1), compare_less(0.0, c0),
                 compare_less(c1, c3 * c2), compare_less(c1 * c1 + c3 * c3 * c0, c3 * c2 * c1)});
}

BoundaryPredicateReport theorem2_boundary_predicates(const ModelParams& p, int i) {
  if (p.variant != Variant::StrengthDriven)
    throw NotApplicable("theorem2_boundary_predicates: strength-driven model only");
  const DerivedQuantities dq = derived(p);
  const int j = 1 - i;
  const Site si = p.site(i), sj = p.site(j);
  const double mui = dq.mu[i], muj = dq.mu[j], nui = dq.nu[i];
  if (!(mui > 0.0 && mui < si.K))
    throw NotApplicable("theorem2_boundary_predicates: requires 0 < mu_i < K_i");
  const double hopf = dq.hopf[i];
  const double cij = mu_of(sj.a, si.d);
  const double A = sj.K * (sj.a - sj.d) - sj.d;
  const double B = sj.K * (sj.a - si.d) - si.d;
  const double bound_c = (sj.d - sj.K * (sj.a - sj.d)) / (nui * B);
  const double bound_d = A / (nui * (si.d - sj.K * (sj.a - si.d)));

  const std::string th = "Th2";
  const std::string tag = "(i=" + std::to_string(i + 1) + ",j=" + std::to_string(j + 1) + ")";
  auto clause = [&](const std::string& id) {
    return Clause(th, id + tag)
        .value("mu_i", mui)
        .value("mu_j", muj)
        .value("K_i", si.K)
        .value("K_j", sj.K)
        .value("c_ij", cij);
  };
  // a_j <= d_i, read as a strict comparison with a boundary band
  const Verdict aj_le_di = negate(compare_less(si.d, sj.a));
  std::vector<ConditionEntry> es;
  es.push_back(clause("hopf_window").between(hopf, mui, si.K).build());
  es.push_back(clause("sa").require(aj_le_di, slack_less(sj.a, si.d)).less(sj.K, muj).build());
  es.push_back(clause("sb").less(0.0, sj.K).less(sj.K, muj).less(sj.K, cij).build());
  es.push_back(clause("sc").less(0.0, cij).between(cij, sj.K, muj).less(sj.rho, bound_c).value("bound", bound_c).build());
  es.push_back(clause("sd").less(0.0, muj).between(muj, sj.K, cij).greater(sj.rho, bound_d).value("bound", bound_d).build());
  es.push_back(clause("below_hopf").between(0.0, mui, hopf).build());
  es.push_back(clause("ua").greater(sj.K, muj).greater(sj.K, cij).build());
  es.push_back(clause("ub").less(0.0, cij).between(cij, sj.K, muj).greater(sj.rho, bound_c).value("bound", bound_c).build());
  es.push_back(clause("uc").between(muj, sj.K, cij).less(sj.rho, bound_d).value("bound", bound_d).build());

  BoundaryPredicateReport out;
  out.report.entries = es;
  const Verdict any_s = any_of({es[1].fired, es[2].fired, es[3].fired, es[4].fired});
  out.stable_predicted = all_of({es[0].fired, any_s});
  out.saddle_predicted = any_of({es[5].fired, es[6].fired, es[7].fired, es[8].fired});

  State4 eq{};
  eq[prey_index(i)] = mui;
  eq[predator_index(i)] = nui;
  eq[prey_index(j)] = sj.K;
  out.eigenvalues = eigenvalues(jacobian(p, eq));
  out.eigen_class = classify(out.eigenvalues);
  if (out.stable_predicted == Verdict::True) out.agrees = out.agrees && out.eigen_class == Stability::Sink;
  if (out.saddle_predicted == Verdict::True) out.agrees = out.agrees && out.eigen_class == Stability::Saddle;
  out.report.flags.emplace_back("Eb" + std::to_string(i + 1) + "2_stable_predicted", out.stable_predicted);
  out.report.flags.emplace_back("Eb" + std::to_string(i + 1) + "2_saddle_predicted", out.saddle_predicted);
  return out;
}

}  // namespace patchdyn
