#include "powereq/matching.hpp"

#include <cmath>

#include "powereq/errors.hpp"
#include "powereq/params.hpp"

namespace powereq {

Tightness::Tightness(double theta) : theta_(theta) {
  if (!std::isfinite(theta) || theta < 0.0)
    throw ValidationError("theta", "theta must be finite and non-negative (got " + format_double(theta) + ")");
}

double q_fill(Tightness theta, double iota) {
  const double t = theta.value();
  if (t == 0.0) return 1.0;
  // (1+θ^ι)^{-1/ι} computed in logs so huge θ does not overflow
  const double lt = iota * std::log(t);
  const double log1p_pow = lt > 40.0 ? lt + std::log1p(std::exp(-lt)) : std::log1p(std::exp(lt));
  return std::exp(-log1p_pow / iota);
}

double f_find(Tightness theta, double iota) { return theta.value() * q_fill(theta, iota); }

double matching_G(double u, double v, double iota) {
  if (u <= 0.0 || v <= 0.0) return 0.0;
  return u * v / std::pow(std::pow(u, iota) + std::pow(v, iota), 1.0 / iota);
}

double beveridge_u(double lambda_eff, double f_theta) {
  if (!(lambda_eff > 0.0))
    throw ValidationError("lambda_eff", "lambda_eff must be positive (got " + format_double(lambda_eff) + ")");
  return lambda_eff / (lambda_eff + f_theta);
}

double beveridge_u(double lambda_eff, Tightness theta, double iota) {
  return beveridge_u(lambda_eff, f_find(theta, iota));
}

}  // namespace powereq
