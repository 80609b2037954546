#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "powereq/csv.hpp"
#include "powereq/equilibrium.hpp"
#include "powereq/params.hpp"

namespace powereq {

/// One calendar observation. Rates are monthly; absent cells stay empty.
struct TimeSeriesRow {
  int year = 0;
  long line = 0;
  std::optional<double> p_union;
  std::optional<double> g;
  std::optional<double> b;
  std::optional<double> k_over_qy_annual;
  std::optional<double> mu_data;
  std::optional<double> delta_data;
  std::optional<double> u_data;
  std::optional<double> v_data;
  std::optional<double> u_nairu;
};

/// Required header: year, p_union, g_annual, b, k_over_qy_annual, mu_data,
/// delta_annual, u_data, v_data. Optional: u_nairu.
std::vector<TimeSeriesRow> read_time_series(const CsvTable& table, const std::string& source = "<data>");
std::vector<TimeSeriesRow> read_time_series_file(const std::string& path);
std::string time_series_csv(const std::vector<TimeSeriesRow>& rows);

/// 1 − m = 12·(K/(qY))_annual·(A^k q)^{1−σ}·(δ(1+μ))^σ.
double estimate_automation(double k_over_qy_annual, double mu_data, double delta_monthly,
                           const TechnologyParams& tech);
double estimate_automation(const TimeSeriesRow& row, const TechnologyParams& tech);

/// T^w such that the steady-state unemployment rate equals target_u.
double invert_t_w(double target_u, const ModelParams& params_except_t_w, double tol = 1e-8);

enum class ScenarioLabel { Technical, Institutions, Both };
enum class TargetKind { Efficient, Nairu };

std::string to_string(ScenarioLabel s);
ScenarioLabel scenario_from_string(const std::string& s);

struct ScenarioSpec {
  ScenarioLabel label = ScenarioLabel::Both;
  bool varies_technology() const { return label != ScenarioLabel::Institutions; }
  bool varies_institutions() const { return label != ScenarioLabel::Technical; }
};

struct ScenarioOptions {
  TargetKind target = TargetKind::Efficient;
  unsigned workers = 1;
  double max_failure_share = 0.2;
};

struct CalibratedRow {
  int year = 0;
  bool ok = false;
  std::string error;
  double m = 0.0;
  double t_w = 0.0;
  double g = 0.0;
  double b = 0.0;
  double p_union = 0.0;
  double target_u = 0.0;
  SteadyState ss;
  double k_over_qy_annual = 0.0;
};

struct CalibratedPath {
  ScenarioLabel label = ScenarioLabel::Both;
  std::vector<CalibratedRow> rows;
  double frozen_t_w = 0.0;
  std::vector<std::pair<int, std::string>> failures;
};

/// Efficient (√(U·V)) or NAIRU unemployment target of a row.
std::optional<double> unemployment_target(const TimeSeriesRow& row, TargetKind kind);

CalibratedPath run_scenario(const std::vector<TimeSeriesRow>& data, const ScenarioSpec& spec, const ModelParams& base,
                            const ScenarioOptions& opt = {});

/// Year/value pairs for one emitted field (labor_share, mu, r_profit,
/// k_over_qy_annual, u_rate, v_rate, theta, wage, c_hat, m, t_w, g, b,
/// p_union, target_u).
std::vector<std::pair<int, double>> predicted_series(const CalibratedPath& path, const std::string& which);

std::vector<std::string> calibrated_columns();
std::string calibrated_path_csv(const CalibratedPath& path);

}  // namespace powereq
