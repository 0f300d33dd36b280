#pragma once

#include <string>

#include "patchdyn/model.hpp"

namespace patchdyn {

// Flat object: r, K1, K2, a1, a2, d1, d2, rho1, rho2, optional variant
// ("strength" | "density", default strength). Unknown keys are rejected.
ModelParams parse_params_json(const std::string& text);
ModelParams load_params_file(const std::string& path);

// Compact, key-sorted, shortest round-trip numbers.
std::string params_to_json(const ModelParams& p);

}  // namespace patchdyn
