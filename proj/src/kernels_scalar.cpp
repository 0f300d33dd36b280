#include "patchdyn/kernels.hpp"

namespace patchdyn::kernels::detail {

void horner_scalar(std::span<const double> coeffs, std::span<const double> xs, std::span<double> out) {
  const std::size_t n = xs.size();
  if (coeffs.empty()) {
    for (std::size_t k = 0; k < n; ++k) out[k] = 0.0;
    return;
  }
  const std::size_t deg = coeffs.size() - 1;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = xs[k];
    double acc = coeffs[deg];
    for (std::size_t i = deg; i-- > 0;) acc = acc * x + coeffs[i];
    out[k] = acc;
  }
}

void rhs_scalar(const ModelParams& p, const StateBatch& s, const RateBatch& out) {
  const std::size_t n = s.size();
  const bool strength = p.variant == Variant::StrengthDriven;
  for (std::size_t k = 0; k < n; ++k) {
    const double x1 = s.x1[k], y1 = s.y1[k], x2 = s.x2[k], y2 = s.y2[k];
    const double p1 = p.a1 * x1 / (1.0 + x1);
    const double p2 = p.a2 * x2 / (1.0 + x2);
    out.x1[k] = x1 * (1.0 - x1 / p.K1) - p1 * y1;
    out.x2[k] = p.r * x2 * (1.0 - x2 / p.K2) - p2 * y2;
    if (strength) {
      const double flux = (p1 - p2) * y1 * y2;
      out.y1[k] = (p1 - p.d1) * y1 + p.rho1 * flux;
      out.y2[k] = (p2 - p.d2) * y2 - p.rho2 * flux;
    } else {
      out.y1[k] = (p1 - p.d1) * y1 + p.rho1 * (y2 - y1);
      out.y2[k] = (p2 - p.d2) * y2 + p.rho2 * (y1 - y2);
    }
  }
}

}  // namespace patchdyn::kernels::detail
