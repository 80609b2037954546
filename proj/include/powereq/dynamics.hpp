#pragma once

#include <string>
#include <vector>

#include "powereq/equilibrium.hpp"
#include "powereq/params.hpp"

namespace powereq {

enum class ShockKind { None, Automation, Growth, Mobility, OutsideOption, UnionProbability };

std::string to_string(ShockKind k);
ShockKind shock_kind_from_string(const std::string& s);

/// Unanticipated permanent change. Magnitudes are absolute (Δm, Δg, ΔT^w, Δb,
/// ΔP). Automation shocks ramp linearly over ramp_months.
struct ShockSpec {
  ShockKind kind = ShockKind::None;
  double magnitude = 0.0;
  double t_shock = 0.0;
  double ramp_months = 24.0;
};

/// Parameters once the shock has fully played out (ṁ back to 0). Throws
/// ValidationError for invalid shocks.
ModelParams post_shock_params(const ModelParams& pre, const ShockSpec& shock);

/// Parameters in force at time t, including the ramp's m_t and ṁ_t.
ModelParams params_at(const ModelParams& pre, const ShockSpec& shock, double t);

struct PathPoint {
  double t = 0.0;
  double L = 0.0;
  double U = 0.0;
  double V = 0.0;
  double theta = 0.0;
  double k_hat = 0.0;
  double c_hat = 0.0;
  double mu = 0.0;
  double wage = 0.0;
  double labor_share = 0.0;
  double y_hat = 0.0;
  double capital_output_annual = 0.0;
  double m = 0.0;
  double m_dot = 0.0;
};

struct PathOptions {
  double horizon = 600.0;  // months after the shock
  double dt = 0.25;
  int stride = 4;          // emit every stride-th step
  double endpoint_tol = 1e-4;  // 0 skips the landing check
};

struct PathResult {
  std::vector<PathPoint> points;
  SteadyState target;
  double c_jump = 0.0;     // ĉ(t_shock⁺)
  double unstable_eigenvalue = 0.0;
  bool shooting_used = false;
};

/// State (U, k̂, ĉ) and its time derivative; θ and w are solved statically.
struct DynState {
  double U = 0.0;
  double k = 0.0;
  double c = 0.0;
};

DynState path_rhs(const DynState& x, const ModelParams& p, double* theta_out = nullptr);

/// Integrates the transition with RK4. ĉ(t_shock⁺) is picked by shooting onto
/// the saddle path of the post-shock steady state. Raises BlowUpError when
/// k̂ or ĉ leave the positive orthant (the post-shock BGP is infeasible) and
/// NonConvergenceError when the endpoint misses the post-shock steady state.
PathResult integrate_path(const SteadyState& initial, const ShockSpec& shock, const ModelParams& pre,
                          const PathOptions& opt = {});

enum class AutomationRegime { CapitalizationDominant, DisplacementDominant };

std::string to_string(AutomationRegime r);

struct RegimeReport {
  AutomationRegime regime = AutomationRegime::CapitalizationDominant;
  double d_lambda_d_m_dot = 0.0;  // central finite difference
  double alpha = 0.0;
};

RegimeReport classify_automation_regime(const ModelParams& p, const ShockSpec& shock);

}  // namespace powereq
