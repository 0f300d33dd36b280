#include <arm_neon.h>

#include "patchdyn/kernels.hpp"

namespace patchdyn::kernels::detail {

void horner_neon(std::span<const double> coeffs, std::span<const double> xs, std::span<double> out) {
  const std::size_t n = xs.size();
  if (coeffs.empty()) {
    for (std::size_t k = 0; k < n; ++k) out[k] = 0.0;
    return;
  }
  const std::size_t deg = coeffs.size() - 1;
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const float64x2_t x = vld1q_f64(xs.data() + k);
    float64x2_t acc = vdupq_n_f64(coeffs[deg]);
    for (std::size_t i = deg; i-- > 0;) acc = vfmaq_f64(vdupq_n_f64(coeffs[i]), acc, x);
    vst1q_f64(out.data() + k, acc);
  }
  for (; k < n; ++k) {
    const double x = xs[k];
    double acc = coeffs[deg];
    for (std::size_t i = deg; i-- > 0;) acc = acc * x + coeffs[i];
    out[k] = acc;
  }
}

void rhs_neon(const ModelParams& p, const StateBatch& s, const RateBatch& out) {
  const std::size_t n = s.size();
  const bool strength = p.variant == Variant::StrengthDriven;
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t a1 = vdupq_n_f64(p.a1), a2 = vdupq_n_f64(p.a2);
  const float64x2_t inv_k1 = vdupq_n_f64(1.0 / p.K1), inv_k2 = vdupq_n_f64(1.0 / p.K2);
  const float64x2_t r = vdupq_n_f64(p.r);
  const float64x2_t d1 = vdupq_n_f64(p.d1), d2 = vdupq_n_f64(p.d2);
  const float64x2_t rho1 = vdupq_n_f64(p.rho1), rho2 = vdupq_n_f64(p.rho2);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const float64x2_t x1 = vld1q_f64(s.x1.data() + k);
    const float64x2_t y1 = vld1q_f64(s.y1.data() + k);
    const float64x2_t x2 = vld1q_f64(s.x2.data() + k);
    const float64x2_t y2 = vld1q_f64(s.y2.data() + k);
    const float64x2_t p1 = vdivq_f64(vmulq_f64(a1, x1), vaddq_f64(one, x1));
    const float64x2_t p2 = vdivq_f64(vmulq_f64(a2, x2), vaddq_f64(one, x2));
    const float64x2_t g1 = vfmsq_f64(one, x1, inv_k1);
    const float64x2_t g2 = vmulq_f64(r, vfmsq_f64(one, x2, inv_k2));
    vst1q_f64(out.x1.data() + k, vsubq_f64(vmulq_f64(x1, g1), vmulq_f64(p1, y1)));
    vst1q_f64(out.x2.data() + k, vsubq_f64(vmulq_f64(x2, g2), vmulq_f64(p2, y2)));
    float64x2_t dy1, dy2;
    if (strength) {
      const float64x2_t flux = vmulq_f64(vsubq_f64(p1, p2), vmulq_f64(y1, y2));
      dy1 = vfmaq_f64(vmulq_f64(vsubq_f64(p1, d1), y1), rho1, flux);
      dy2 = vfmsq_f64(vmulq_f64(vsubq_f64(p2, d2), y2), rho2, flux);
    } else {
      dy1 = vfmaq_f64(vmulq_f64(vsubq_f64(p1, d1), y1), rho1, vsubq_f64(y2, y1));
      dy2 = vfmaq_f64(vmulq_f64(vsubq_f64(p2, d2), y2), rho2, vsubq_f64(y1, y2));
    }
    vst1q_f64(out.y1.data() + k, dy1);
    vst1q_f64(out.y2.data() + k, dy2);
  }
  if (k < n) {
    const StateBatch tail{s.x1.subspan(k), s.y1.subspan(k), s.x2.subspan(k), s.y2.subspan(k)};
    const RateBatch tail_out{out.x1.subspan(k), out.y1.subspan(k), out.x2.subspan(k), out.y2.subspan(k)};
    rhs_scalar(p, tail, tail_out);
  }
}

}  // namespace patchdyn::kernels::detail
