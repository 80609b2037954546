#pragma once

#include "powereq/params.hpp"

namespace powereq {

struct RegionBoundaries {
  int region = 0;          // 1, 2 or 3
  double q_bar = 0.0;      // δ(1+μ)/A^k
  double q_min = 0.0;
  double q_max = 0.0;
  double m_bar = 0.0;      // second-order approximation, 0 where inactive (q > q̄)
  double m_tilde = 0.0;    // second-order approximation, 0 where inactive (q < q̄)
  double m_bar_exact = 0.0;
  double m_tilde_exact = 0.0;
};

/// Classifies (q, m) into the three automation regions using the quadratic
/// approximations of the boundary curves. Throws for σ = 1 and for q outside
/// [q^min, q^max].
RegionBoundaries automation_region(double q_rel, double m, double mu, const TechnologyParams& tech);

}  // namespace powereq
