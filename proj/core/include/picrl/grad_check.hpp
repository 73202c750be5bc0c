#pragma once

#include <functional>

#include "picrl/param_set.hpp"

namespace picrl::numerics {

// Finite-difference gradient oracle. The caller fills the gradient slots of
// `params` with the analytic gradient of f, then this routine perturbs every
// coordinate by +-eps, forms the central difference (f+ - f-) / (2 eps), and
// returns the maximum over coordinates of
//     |analytic - numeric| / max(1, |analytic|, |numeric|).
// f must be deterministic; params are restored exactly on return.
double grad_check(const std::function<double(const ParamSet&)>& f, ParamSet& params, double eps);

}  // namespace picrl::numerics
