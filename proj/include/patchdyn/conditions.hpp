#pragma once

#include "patchdyn/model.hpp"
#include "patchdyn/predicate.hpp"

namespace patchdyn {

// Global extinction of both predators: mu_i > K_i for both patches.
ConditionReport check_theorem3(const ModelParams& p);

// Predator persistence, three clauses for each ordered pair (i, j).
ConditionReport check_theorem4(const ModelParams& p);

// Permanence: clause families 1 and 3 per order, 2 for both orders jointly.
ConditionReport check_theorem5(const ModelParams& p);

// Strength variant: the three fragments above plus the four summary flags.
// Density variant: classic_condition_report.
ConditionReport condition_report(const ModelParams& p);

}  // namespace patchdyn
