#include "patchdyn/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "patchdyn/kernels.hpp"

namespace patchdyn {

double Polynomial::operator()(double x) const {
  if (c_.empty()) return 0.0;
  double acc = c_.back();
  for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial{};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] + o[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] - o[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (c_.empty() || o.c_.empty()) return Polynomial{};
  std::vector<double> r(c_.size() + o.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(double s) const {
  std::vector<double> r(c_);
  for (double& v : r) v *= s;
  return Polynomial(std::move(r));
}

Polynomial Polynomial::trimmed() const {
  std::vector<double> r(c_);
  while (!r.empty() && r.back() == 0.0) r.pop_back();
  return Polynomial(std::move(r));
}

namespace {

double newton_polish(const Polynomial& p, const Polynomial& dp, double x, double a, double b, int iters) {
  double fx = std::fabs(p(x));
  for (int k = 0; k < iters && fx > 0.0; ++k) {
    const double slope = dp(x);
    if (slope == 0.0 || !std::isfinite(slope)) break;
    const double xn = x - p(x) / slope;
    if (!(xn >= a && xn <= b)) break;
    const double fn = std::fabs(p(xn));
    if (!(fn < fx)) break;
    x = xn;
    fx = fn;
  }
  return x;
}

}  // namespace

std::vector<double> scan_real_roots(const Polynomial& p, double lo, double hi, const RootScanOptions& opt,
                                    const Polynomial* mask) {
  std::vector<double> roots;
  if (!(hi > lo) || p.degree() < 0) return roots;
  const int n = std::max(opt.samples, 2);
  std::vector<double> xs(n), values(n), mask_values;
  const double h = (hi - lo) / (n - 1);
  for (int k = 0; k < n; ++k) xs[k] = lo + h * k;
  xs[n - 1] = hi;
  kernels::horner(p.coeffs(), xs, values);
  if (mask) {
    mask_values.resize(n);
    kernels::horner(mask->coeffs(), xs, mask_values);
  }
  const Polynomial dp = p.derivative();
  auto pe = [&p](double x) { return p(x); };

  for (int k = 0; k + 1 < n; ++k) {
    if (mask && ((mask_values[k] < 0.0) != (mask_values[k + 1] < 0.0))) continue;
    const double va = values[k], vb = values[k + 1];
    if (va == 0.0) {
      roots.push_back(xs[k]);
      continue;
    }
    if (vb == 0.0 || (va < 0.0) == (vb < 0.0)) continue;
    double a = xs[k], b = xs[k + 1];
    // Batch and scalar evaluation may disagree on the sign right at an endpoint.
    const double fa = p(a), fb = p(b);
    double x;
    if ((fa < 0.0) == (fb < 0.0) || fa == 0.0 || fb == 0.0) {
      x = std::fabs(fa) <= std::fabs(fb) ? a : b;
    } else {
      const double tol = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(b));
      x = bisect(pe, a, b, tol, opt.bisect_iters);
    }
    roots.push_back(newton_polish(p, dp, x, a, b, opt.newton_iters));
  }
  if (values[n - 1] == 0.0 && !(mask && mask_values[n - 2] * mask_values[n - 1] < 0.0)) roots.push_back(hi);
  return roots;
}

}  // namespace patchdyn
