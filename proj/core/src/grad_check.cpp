#include "picrl/grad_check.hpp"

#include <algorithm>
#include <cmath>

#include "picrl/error.hpp"

namespace picrl::numerics {

double grad_check(const std::function<double(const ParamSet&)>& f, ParamSet& params, double eps) {
  if (eps <= 0.0) throw ConfigError("grad_check: eps must be positive");
  double worst = 0.0;
  for (std::size_t k = 0; k < params.count(); ++k) {
    Param& p = params[k];
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      const double saved = p.value[i];
      p.value[i] = saved + eps;
      const double f_plus = f(params);
      p.value[i] = saved - eps;
      const double f_minus = f(params);
      p.value[i] = saved;
      const double numeric = (f_plus - f_minus) / (2.0 * eps);
      const double analytic = p.grad[i];
      const double scale = std::max({1.0, std::abs(analytic), std::abs(numeric)});
      worst = std::max(worst, std::abs(analytic - numeric) / scale);
    }
  }
  return worst;
}

}  // namespace picrl::numerics
