#pragma once

#include <string>

#include "powereq/params.hpp"
#include "powereq/production.hpp"

namespace powereq {

struct SteadyState {
  double mu = 0.0;
  double theta = 0.0;
  double k_hat = 0.0;
  double c_hat = 0.0;
  double wage = 0.0;
  double u_rate = 0.0;
  double v_rate = 0.0;
  double labor_share = 0.0;
  double r_profit = 0.0;
  double y_hat = 0.0;
  double y_l = 0.0;
  double lambda_eff = 0.0;
  double m = 0.0;
  int iterations = 0;
  double residual = 0.0;  // |Φ(μ*) − μ*|

  /// Annual K/(qY) as reported in the data (monthly ratio / 12).
  double capital_output_annual(double q_rel) const { return k_hat / (q_rel * y_hat) / 12.0; }
};

struct EquilibriumDiagnostics {
  double mu_min = 0.0;
  double g_over_delta = 0.0;
  double harrod_s = 0.0;
  double chi = 0.0;
  double r_profit = 0.0;
  double c_hat = 0.0;
  bool feasible = false;
  std::string reason;  // empty when feasible
};

/// Unique k̂ with q·ŷ_k̂(k̂) = δ(1+μ). NoSolutionError when the CES bound rules
/// it out.
double k_of_mu(double mu, const TechnologyParams& tech);

struct Clearing {
  double theta = 0.0;
  double wage = 0.0;
};

/// Bargained wage w^s(θ) and free-entry wage w^d(θ) at a production point.
double wage_supply(double theta, const ProductionPoint& pp, const ModelParams& p);
double wage_demand(double theta, const ProductionPoint& pp, const ModelParams& p);

/// θ* where w^s = w^d. Uses the instantaneous m and ṁ carried by p, so the
/// transition integrator can call it off steady state.
Clearing theta_clearing(double k_hat, const ModelParams& p);
Clearing theta_clearing(const ProductionPoint& pp, const ModelParams& p);
/// Same root, searched first in a narrow bracket around theta_hint.
Clearing theta_clearing(const ProductionPoint& pp, const ModelParams& p, double theta_hint);

/// Φ(μ) = y_L(k̂(μ))/w*(k̂(μ)) − 1.
double rate_of_return_map(double mu, const ModelParams& p);

struct SolveOptions {
  double mu0 = 0.5;
  double damping = 0.5;
  int max_iter = 500;
  double tol = 1e-12;
};

SteadyState solve_steady(const ModelParams& p, const SolveOptions& opt = {});

EquilibriumDiagnostics harrod_diagnostics(const SteadyState& ss, const ModelParams& p);

/// Largest violation among the SteadyState identities, checked without
/// re-solving: w(1+μ)=y_L (relative), U=λ/(λ+f), Ω=w/ŷ, V=θU.
double steady_state_defect(const SteadyState& ss, const ModelParams& p);

}  // namespace powereq
