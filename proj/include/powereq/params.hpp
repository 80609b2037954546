#pragma once

#include <map>
#include <span>
#include <string>

namespace powereq {

// All rates are per month.

struct TechnologyParams {
  double sigma = 0.6;      // elasticity of substitution between tasks
  double alpha = 1.4;      // labor-augmenting task gradient
  double a_k = 0.022;      // capital-augmenting level A^k
  double delta = 0.0;      // depreciation (set from the annual target in baseline_bundle)
  double q_rel = 0.35;     // units of capital per unit of output
  double m = 0.86;         // automation measure
  double g = 0.0017;       // BGP growth rate
  double m_dot = 0.0;      // instantaneous change of m
};

struct PreferenceParams {
  double rho = 0.0222;
  double gamma_f = 0.45;   // capitalists' relative response time
  double epsilon = 1.0;    // intertemporal elasticity
};

struct MatchingParams {
  double iota = 1.25;
  double lambda0 = 0.02;
  double xi = 8.0;         // vacancy flow cost
};

struct InstitutionParams {
  double t_w = 4.0;        // relative hiring capacity of firms
  double p_union = 0.25;   // probability of collective bargaining
  double b = 0.06;         // opportunity cost of employment
  double gamma_u = 0.5;    // intrinsic collective bargaining power
  double tau = 0.0;        // lump-sum taxes
};

/// Unchecked parameter bundle. Only validate_params turns it into ModelParams.
struct ParamBundle {
  TechnologyParams tech;
  PreferenceParams pref;
  MatchingParams match;
  InstitutionParams inst;
};

/// Validated, immutable parameter set. The only way to obtain one is through
/// validate_params, so every holder can rely on the domain invariants.
class ModelParams {
 public:
  const TechnologyParams& tech() const noexcept { return b_.tech; }
  const PreferenceParams& pref() const noexcept { return b_.pref; }
  const MatchingParams& match() const noexcept { return b_.match; }
  const InstitutionParams& inst() const noexcept { return b_.inst; }
  const ParamBundle& bundle() const noexcept { return b_; }

  /// Ṁ = g/α; derived, never stored.
  double task_creation_rate() const noexcept { return b_.tech.g / b_.tech.alpha; }

 private:
  explicit ModelParams(const ParamBundle& b) : b_(b) {}
  friend ModelParams validate_params(const ParamBundle&);
  ParamBundle b_;
};

/// Returns the validated bundle or throws ValidationError naming the first
/// offending field.
ModelParams validate_params(const ParamBundle& raw);

/// Throws unless m_dot == 0.
void require_stationary(const ModelParams& p);

/// Monthly baseline calibration plus engine defaults for T^w, Γ^u, ε, τ and m.
ParamBundle baseline_bundle();
ModelParams baseline_params();

double annual_to_monthly(double annual_rate);
double monthly_to_annual(double monthly_rate);

/// Flat "section.key=value" lines with shortest round-trip decimals; rates carry
/// an explicit _monthly suffix.
std::string to_key_value(const ModelParams& p);
std::map<std::string, double> flatten(const ParamBundle& b);

/// Exact decimal text for a double (std::to_chars shortest form).
std::string format_double(double x);

/// One configurable scalar. Rates (is_rate) are stored monthly and must be
/// written with an explicit _annual or _monthly suffix in config files.
struct ParamField {
  const char* section;
  const char* name;
  bool is_rate;
  double& (*ref)(ParamBundle&);
};

std::span<const ParamField> param_fields();

}  // namespace powereq
