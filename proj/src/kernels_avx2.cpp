#include <immintrin.h>

#include "patchdyn/kernels.hpp"

namespace patchdyn::kernels::detail {

void horner_avx2(std::span<const double> coeffs, std::span<const double> xs, std::span<double> out) {
  const std::size_t n = xs.size();
  if (coeffs.empty()) {
    for (std::size_t k = 0; k < n; ++k) out[k] = 0.0;
    return;
  }
  const std::size_t deg = coeffs.size() - 1;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d x = _mm256_loadu_pd(xs.data() + k);
    __m256d acc = _mm256_set1_pd(coeffs[deg]);
    for (std::size_t i = deg; i-- > 0;) acc = _mm256_fmadd_pd(acc, x, _mm256_set1_pd(coeffs[i]));
    _mm256_storeu_pd(out.data() + k, acc);
  }
  for (; k < n; ++k) {
    const double x = xs[k];
    double acc = coeffs[deg];
    for (std::size_t i = deg; i-- > 0;) acc = acc * x + coeffs[i];
    out[k] = acc;
  }
}

void rhs_avx2(const ModelParams& p, const StateBatch& s, const RateBatch& out) {
  const std::size_t n = s.size();
  const bool strength = p.variant == Variant::StrengthDriven;
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d a1 = _mm256_set1_pd(p.a1), a2 = _mm256_set1_pd(p.a2);
  const __m256d inv_k1 = _mm256_set1_pd(1.0 / p.K1), inv_k2 = _mm256_set1_pd(1.0 / p.K2);
  const __m256d r = _mm256_set1_pd(p.r);
  const __m256d d1 = _mm256_set1_pd(p.d1), d2 = _mm256_set1_pd(p.d2);
  const __m256d rho1 = _mm256_set1_pd(p.rho1), rho2 = _mm256_set1_pd(p.rho2);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d x1 = _mm256_loadu_pd(s.x1.data() + k);
    const __m256d y1 = _mm256_loadu_pd(s.y1.data() + k);
    const __m256d x2 = _mm256_loadu_pd(s.x2.data() + k);
    const __m256d y2 = _mm256_loadu_pd(s.y2.data() + k);
    const __m256d p1 = _mm256_div_pd(_mm256_mul_pd(a1, x1), _mm256_add_pd(one, x1));
    const __m256d p2 = _mm256_div_pd(_mm256_mul_pd(a2, x2), _mm256_add_pd(one, x2));
    // x (1 - x/K) - p y
    const __m256d g1 = _mm256_fnmadd_pd(x1, inv_k1, one);
    const __m256d g2 = _mm256_mul_pd(r, _mm256_fnmadd_pd(x2, inv_k2, one));
    _mm256_storeu_pd(out.x1.data() + k, _mm256_fmsub_pd(x1, g1, _mm256_mul_pd(p1, y1)));
    _mm256_storeu_pd(out.x2.data() + k, _mm256_fmsub_pd(x2, g2, _mm256_mul_pd(p2, y2)));
    __m256d dy1, dy2;
    if (strength) {
      const __m256d flux = _mm256_mul_pd(_mm256_sub_pd(p1, p2), _mm256_mul_pd(y1, y2));
      dy1 = _mm256_fmadd_pd(rho1, flux, _mm256_mul_pd(_mm256_sub_pd(p1, d1), y1));
      dy2 = _mm256_fnmadd_pd(rho2, flux, _mm256_mul_pd(_mm256_sub_pd(p2, d2), y2));
    } else {
      dy1 = _mm256_fmadd_pd(rho1, _mm256_sub_pd(y2, y1), _mm256_mul_pd(_mm256_sub_pd(p1, d1), y1));
      dy2 = _mm256_fmadd_pd(rho2, _mm256_sub_pd(y1, y2), _mm256_mul_pd(_mm256_sub_pd(p2, d2), y2));
    }
    _mm256_storeu_pd(out.y1.data() + k, dy1);
    _mm256_storeu_pd(out.y2.data() + k, dy2);
  }
  if (k < n) {
    const StateBatch tail{s.x1.subspan(k), s.y1.subspan(k), s.x2.subspan(k), s.y2.subspan(k)};
    const RateBatch tail_out{out.x1.subspan(k), out.y1.subspan(k), out.x2.subspan(k), out.y2.subspan(k)};
    rhs_scalar(p, tail, tail_out);
  }
}

}  // namespace patchdyn::kernels::detail
