#include <cmath>
#include <numbers>

#include "ccmeasure/curves.hpp"
#include "ccmeasure/errors.hpp"

namespace ccm {

double WeierstrassParams::holder_exponent() const { return std::log(1.0 / alpha) / std::log(beta); }

void WeierstrassParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("weierstrass alpha must lie in (0,1)");
  if (!(beta > 1.0)) throw InputError("weierstrass beta must exceed 1");
  if (!(alpha * beta > 1.0)) throw InputError("weierstrass parameters need alpha * beta > 1");
  if (truncation < 0) throw InputError("weierstrass truncation must be nonnegative");
}

int WeierstrassParams::default_truncation(double alpha, double tol) {
  return static_cast<int>(std::ceil(std::log(tol * (1.0 - alpha) / 2.0) / std::log(alpha)));
}

int WeierstrassParams::terms() const { return truncation > 0 ? truncation : default_truncation(alpha); }

double weierstrass_eval(const WeierstrassParams& params, double t) {
  const int n_max = params.terms();
  double sum = 0.0;
  double an = 1.0;
  double bn = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    sum += an * (std::cos(bn * std::numbers::pi * t) - 1.0);
    an *= params.alpha;
    bn *= params.beta;
  }
  return sum;
}

double weierstrass_tail_bound(const WeierstrassParams& params) {
  return 2.0 * std::pow(params.alpha, params.terms() + 1) / (1.0 - params.alpha);
}

double weierstrass_holder_constant(const WeierstrassParams& params) {
  const double xi = params.holder_exponent();
  const double ab = params.alpha * params.beta;
  return 2.0 * std::pow(std::numbers::pi / 2.0, xi) * (ab / (ab - 1.0) + 1.0 / (1.0 - params.alpha));
}

}  // namespace ccm
