#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace patchdyn {

// Dense real polynomial, coefficients in ascending order.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> c) : c_(c) {}
  explicit Polynomial(std::vector<double> c) : c_(std::move(c)) {}

  // -1 for the zero polynomial. Does not trim trailing zeros.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::span<const double> coeffs() const { return c_; }
  double operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0.0; }

  double operator()(double x) const;
  Polynomial derivative() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(double s) const;

  // Drops trailing coefficients that are exactly zero.
  Polynomial trimmed() const;

 private:
  std::vector<double> c_;
};

struct RootScanOptions {
  int samples = 20000;
  int bisect_iters = 200;
  int newton_iters = 8;
};

// Real roots of p on the open interval (lo, hi) found by a uniform sign scan,
// bisection and a Newton polish. Intervals where `mask` changes sign are
// skipped (poles of a rational function whose numerator is p).
std::vector<double> scan_real_roots(const Polynomial& p, double lo, double hi,
                                    const RootScanOptions& opt = {},
                                    const Polynomial* mask = nullptr);

// Bisect a sign change of f on [a, b] (f(a) f(b) <= 0) down to `tol`.
template <class F>
double bisect(F&& f, double a, double b, double tol, int max_iter = 400) {
  double fa = f(a);
  for (int it = 0; it < max_iter && b - a > tol; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fa < 0.0) == (fm < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace patchdyn
