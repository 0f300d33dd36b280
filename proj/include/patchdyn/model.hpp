#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <string_view>

namespace patchdyn {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Variant { StrengthDriven, DensityDriven };

std::string_view to_string(Variant v);

// Rates for one patch, with r fixed to 1 for patch 1.
struct Site {
  double r;
  double K;
  double a;
  double d;
  double rho;
};

struct ModelParams {
  double r = 1.0;
  double K1 = 1.0;
  double K2 = 1.0;
  double a1 = 1.0;
  double a2 = 1.0;
  double d1 = 1.0;
  double d2 = 1.0;
  double rho1 = 0.0;
  double rho2 = 0.0;
  Variant variant = Variant::StrengthDriven;

  // i is 0 for patch 1, 1 for patch 2.
  Site site(int i) const {
    return i == 0 ? Site{1.0, K1, a1, d1, rho1} : Site{r, K2, a2, d2, rho2};
  }

  bool operator==(const ModelParams&) const = default;
};

// Throws InvalidInput unless r, K, a, d > 0 and rho >= 0, all finite.
void validate(const ModelParams& p);

// (x1, y1, x2, y2)
using State4 = std::array<double, 4>;
enum StateIndex : std::size_t { kX1 = 0, kY1 = 1, kX2 = 2, kY2 = 3 };

inline std::size_t prey_index(int i) { return i == 0 ? kX1 : kX2; }
inline std::size_t predator_index(int i) { return i == 0 ? kY1 : kY2; }

// Holling type II uptake.
inline double holling(double a, double x) { return a * x / (1.0 + x); }

// Prey nullcline y = q(x).
inline double prey_nullcline(double r, double K, double a, double x) {
  return r * (K - x) * (1.0 + x) / (a * K);
}

// d/(a-d), or +inf when a <= d.
inline double mu_of(double a, double d) { return a > d ? d / (a - d) : kInf; }

State4 rhs(const ModelParams& p, const State4& s);

// Eq. for one isolated patch: returns (dx, dy).
std::array<double, 2> single_patch_rhs(double r, double K, double a, double d, double x, double y);

struct DerivedQuantities {
  std::array<double, 2> mu;    // +inf when a <= d
  std::array<double, 2> nu;    // q(mu); -inf when mu is +inf
  std::array<double, 2> hopf;  // (K-1)/2
};

DerivedQuantities derived(const ModelParams& p);

struct HatQuantities {
  std::array<double, 2> dhat;
  std::array<double, 2> muhat;
  std::array<double, 2> nuhat;
  // cross[j] = rho_j nuhat_i / (d_j + rho_j), the predator level in patch j
  // at the boundary equilibrium where only patch i has prey.
  std::array<double, 2> cross;
};

HatQuantities hat_quantities(const ModelParams& p);

// Ultimate bound on V = rho2 (x1 + y1) + rho1 (x2 + y2).
// Throws BoundUndefined when rho1 = rho2 = 0.
double dissipativity_bound(const ModelParams& p);

double dissipativity_function(const ModelParams& p, const State4& s);

}  // namespace patchdyn
