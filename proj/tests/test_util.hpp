#pragma once

#include <string>

#include "patchdyn/model.hpp"
#include "patchdyn/params_io.hpp"

namespace testutil {

inline patchdyn::ModelParams fig1(double rho1 = 0.0, double rho2 = 0.0) {
  patchdyn::ModelParams p;
  p.r = 1.5;
  p.K1 = 5;
  p.K2 = 3;
  p.a1 = 0.25;
  p.a2 = 0.15;
  p.d1 = 0.2;
  p.d2 = 0.1;
  p.rho1 = rho1;
  p.rho2 = rho2;
  return p;
}

inline patchdyn::ModelParams symmetric(double K, double a, double d, double rho1, double rho2,
                                       patchdyn::Variant v = patchdyn::Variant::StrengthDriven) {
  patchdyn::ModelParams p;
  p.r = 1.0;
  p.K1 = p.K2 = K;
  p.a1 = p.a2 = a;
  p.d1 = p.d2 = d;
  p.rho1 = rho1;
  p.rho2 = rho2;
  p.variant = v;
  return p;
}

inline std::string data(const std::string& name) { return std::string(PATCHDYN_DATA_DIR) + "/" + name; }

}  // namespace testutil
