#include "patchdyn/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "patchdyn/error.hpp"

namespace patchdyn {

std::string_view to_string(Variant v) {
  return v == Variant::StrengthDriven ? "strength" : "density";
}

void validate(const ModelParams& p) {
  auto positive = [](const char* name, double v) {
    if (!std::isfinite(v) || !(v > 0.0))
      throw InvalidInput(std::string(name) + " must be finite and > 0");
  };
  auto nonneg = [](const char* name, double v) {
    if (!std::isfinite(v) || v < 0.0)
      throw InvalidInput(std::string(name) + " must be finite and >= 0");
  };
  positive("r", p.r);
  positive("K1", p.K1);
  positive("K2", p.K2);
  positive("a1", p.a1);
  positive("a2", p.a2);
  positive("d1", p.d1);
  positive("d2", p.d2);
  nonneg("rho1", p.rho1);
  nonneg("rho2", p.rho2);
}

State4 rhs(const ModelParams& p, const State4& s) {
  for (double v : s)
    if (!std::isfinite(v)) throw InvalidInput("rhs: non-finite state component");
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

std::array<double, 2> single_patch_rhs(double r, double K, double a, double d, double x, double y) {
  const double px = holling(a, x);
  return {r * x * (1.0 - x / K) - px * y, px * y - d * y};
}

DerivedQuantities derived(const ModelParams& p) {
  DerivedQuantities q{};
  for (int i = 0; i < 2; ++i) {
    const Site s = p.site(i);
    q.mu[i] = mu_of(s.a, s.d);
    q.nu[i] = std::isinf(q.mu[i]) ? -kInf : prey_nullcline(s.r, s.K, s.a, q.mu[i]);
    q.hopf[i] = (s.K - 1.0) / 2.0;
  }
  return q;
}

HatQuantities hat_quantities(const ModelParams& p) {
  HatQuantities h{};
  for (int i = 0; i < 2; ++i) {
    const Site si = p.site(i);
    const Site sj = p.site(1 - i);
    h.dhat[i] = si.d + si.rho * sj.d / (sj.d + sj.rho);
    h.muhat[i] = mu_of(si.a, h.dhat[i]);
    h.nuhat[i] = std::isinf(h.muhat[i]) ? -kInf : prey_nullcline(si.r, si.K, si.a, h.muhat[i]);
  }
  for (int j = 0; j < 2; ++j) {
    const Site sj = p.site(j);
    const int i = 1 - j;
    h.cross[j] = sj.rho == 0.0 ? 0.0 : sj.rho * h.nuhat[i] / (sj.d + sj.rho);
  }
  return h;
}

namespace {

// max over [0, K] of w x (r (1 - x/K) + d)
double parabola_max(double w, double r, double K, double d) {
  const double vertex = std::clamp(K * (r + d) / (2.0 * r), 0.0, K);
  return w * vertex * (r * (1.0 - vertex / K) + d);
}

}  // namespace

double dissipativity_bound(const ModelParams& p) {
  if (p.rho1 == 0.0 && p.rho2 == 0.0)
    throw BoundUndefined("dissipativity bound needs rho1 + rho2 > 0");
  const double m = parabola_max(p.rho2, 1.0, p.K1, p.d1) + parabola_max(p.rho1, p.r, p.K2, p.d2);
  return m / std::min(p.d1, p.d2);
}

double dissipativity_function(const ModelParams& p, const State4& s) {
  return p.rho2 * (s[kX1] + s[kY1]) + p.rho1 * (s[kX2] + s[kY2]);
}

}  // namespace patchdyn
