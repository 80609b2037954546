#pragma once

namespace powereq {

/// Vacancy-unemployment ratio θ. Construction rejects negative or non-finite
/// values.
class Tightness {
 public:
  explicit Tightness(double theta);
  double value() const noexcept { return theta_; }

 private:
  double theta_;
};

/// Matching technology G(U,V) = UV/(U^ι+V^ι)^{1/ι}.
double q_fill(Tightness theta, double iota);
double f_find(Tightness theta, double iota);
double matching_G(double u, double v, double iota);

/// U̇ = 0 locus: U = λ/(λ + f(θ)).
double beveridge_u(double lambda_eff, double f_theta);
double beveridge_u(double lambda_eff, Tightness theta, double iota);

}  // namespace powereq
