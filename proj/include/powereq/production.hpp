#pragma once

#include "powereq/params.hpp"

namespace powereq {

/// Below this |σ−1| the CES block switches to its Cobb-Douglas limit.
inline constexpr double kUnitSigmaBand = 1e-6;

struct ProductionPoint {
  double k_hat = 0.0;
  double y_hat = 0.0;
  double y_k = 0.0;  // ∂ŷ/∂k̂
  double y_l = 0.0;  // ŷ − k̂ŷ_k̂
};

/// B(m) = (e^{α(σ−1)m} − 1)/(α(σ−1)); equals m in the σ→1 limit.
double task_integral(double m, double sigma, double alpha);

/// Stationary per-capita output and analytic marginal products.
ProductionPoint y_hat(double k_hat, const TechnologyParams& tech);

/// Ω = (1+μ)^{-1}·[1 + ((1−m)/B(m))^{1/σ}(A^k k̂)^{(σ−1)/σ}]^{-1}.
double labor_share(double mu, double k_hat, const TechnologyParams& tech);

struct TechUnemployment {
  double displaced = 0.0;   // U^A
  double per_worker = 0.0;  // ∂U^A/∂L = U^A/L
};

/// Net displacement from automating ṁ while Ṁ new tasks appear.
TechUnemployment tech_unemployment(double L, double m, double m_dot, double M_dot, const TechnologyParams& tech);

/// λ = λ₀ + per-worker displacement with Ṁ = g/α.
double effective_separation(const MatchingParams& match, const TechnologyParams& tech);

/// Closed-form ∂λ/∂ṁ at the technology's (m, ṁ, g).
double separation_slope_m_dot(const TechnologyParams& tech);

}  // namespace powereq
