#include "powereq/calibration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <thread>
#include <boost/math/tools/toms748_solve.hpp>

#include "powereq/config.hpp"
#include "powereq/errors.hpp"

namespace powereq {

namespace {

const char* const kRequired[] = {"year",   "p_union", "g_annual", "b",     "k_over_qy_annual",
                                 "mu_data", "delta_annual", "u_data", "v_data"};

std::optional<double> cell_value(const CsvTable& t, std::size_t row, std::optional<std::size_t> col,
                                 const std::string& source) {
  if (!col) return std::nullopt;
  const std::string& s = t.rows[row][*col];
  if (s.empty()) return std::nullopt;
  return parse_number(s, source + ": column '" + t.header[*col] + "'", t.lines[row]);
}

void require_range(const std::optional<double>& v, double lo, double hi, const char* column, long line) {
  if (v && !(*v >= lo && *v <= hi))
    throw SchemaError(std::string("column '") + column + "' value " + format_double(*v) + " outside [" +
                          format_double(lo) + ", " + format_double(hi) + "]",
                      line);
}

void require_positive(const std::optional<double>& v, const char* column, long line) {
  if (v && !(*v > 0.0))
    throw SchemaError(std::string("column '") + column + "' must be positive (got " + format_double(*v) + ")", line);
}

// Mean taken as offsets from the first value, so identical inputs return
// that value bit for bit.
double stable_mean(const std::vector<double>& xs) {
  if (xs.empty()) return std::nan("");
  double acc = 0.0;
  for (double x : xs) acc += x - xs.front();
  return xs.front() + acc / static_cast<double>(xs.size());
}

double mean_of(const std::vector<TimeSeriesRow>& rows, std::optional<double> TimeSeriesRow::*field) {
  std::vector<double> xs;
  for (const auto& r : rows)
    if (r.*field) xs.push_back(*(r.*field));
  return stable_mean(xs);
}

}  // namespace

std::vector<TimeSeriesRow> read_time_series(const CsvTable& t, const std::string& source) {
  for (const char* c : kRequired)
    if (!t.find_column(c)) throw SchemaError(source + ": missing column '" + std::string(c) + "'", 1);
  const auto c_year = t.column("year");
  const auto c_pu = t.find_column("p_union");
  const auto c_g = t.find_column("g_annual");
  const auto c_b = t.find_column("b");
  const auto c_k = t.find_column("k_over_qy_annual");
  const auto c_mu = t.find_column("mu_data");
  const auto c_d = t.find_column("delta_annual");
  const auto c_u = t.find_column("u_data");
  const auto c_v = t.find_column("v_data");
  const auto c_n = t.find_column("u_nairu");

  std::vector<TimeSeriesRow> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    TimeSeriesRow r;
    r.line = t.lines[i];
    const std::string& ys = t.rows[i][c_year];
    if (ys.empty()) throw SchemaError(source + ": column 'year' is empty", r.line);
    const double y = parse_number(ys, source + ": column 'year'", r.line);
    if (y != std::floor(y)) throw SchemaError(source + ": column 'year' must be an integer", r.line);
    r.year = static_cast<int>(y);
    r.p_union = cell_value(t, i, c_pu, source);
    if (auto g = cell_value(t, i, c_g, source)) r.g = annual_to_monthly(*g);
    r.b = cell_value(t, i, c_b, source);
    r.k_over_qy_annual = cell_value(t, i, c_k, source);
    r.mu_data = cell_value(t, i, c_mu, source);
    if (auto d = cell_value(t, i, c_d, source)) r.delta_data = annual_to_monthly(*d);
    r.u_data = cell_value(t, i, c_u, source);
    r.v_data = cell_value(t, i, c_v, source);
    r.u_nairu = cell_value(t, i, c_n, source);

    require_range(r.p_union, 0.0, 1.0, "p_union", r.line);
    require_range(r.u_data, 0.0, 1.0, "u_data", r.line);
    require_range(r.v_data, 0.0, 1.0, "v_data", r.line);
    require_range(r.u_nairu, 0.0, 1.0, "u_nairu", r.line);
    require_positive(r.k_over_qy_annual, "k_over_qy_annual", r.line);
    require_positive(r.delta_data, "delta_annual", r.line);
    if (r.b && !(*r.b >= 0.0)) throw SchemaError("column 'b' must be non-negative", r.line);
    if (r.mu_data && !(*r.mu_data > -1.0)) throw SchemaError("column 'mu_data' must exceed -1", r.line);
    out.push_back(r);
  }
  return out;
}

std::vector<TimeSeriesRow> read_time_series_file(const std::string& path) {
  return read_time_series(read_csv(path), path);
}

std::string time_series_csv(const std::vector<TimeSeriesRow>& rows) {
  bool nairu = std::any_of(rows.begin(), rows.end(), [](const TimeSeriesRow& r) { return r.u_nairu.has_value(); });
  std::vector<std::string> header(std::begin(kRequired), std::end(kRequired));
  if (nairu) header.emplace_back("u_nairu");
  CsvWriter w(header);
  auto annual = [](std::optional<double> v) -> std::optional<double> {
    if (!v) return std::nullopt;
    return monthly_to_annual(*v);
  };
  for (const auto& r : rows) {
    std::vector<std::string> cells{std::to_string(r.year),           CsvWriter::cell(r.p_union),
                                   CsvWriter::cell(annual(r.g)),     CsvWriter::cell(r.b),
                                   CsvWriter::cell(r.k_over_qy_annual), CsvWriter::cell(r.mu_data),
                                   CsvWriter::cell(annual(r.delta_data)), CsvWriter::cell(r.u_data),
                                   CsvWriter::cell(r.v_data)};
    if (nairu) cells.push_back(CsvWriter::cell(r.u_nairu));
    w.add_row(cells);
  }
  return w.text();
}

double estimate_automation(double ratio_annual, double mu_data, double delta, const TechnologyParams& t) {
  if (!(ratio_annual > 0.0) || !(delta > 0.0) || !(mu_data > -1.0))
    throw ValidationError("k_over_qy_annual", "automation estimate needs positive K/(qY), delta and 1+mu");
  const double s = t.sigma;
  const double one_minus_m =
      12.0 * ratio_annual * std::pow(t.a_k * t.q_rel, 1.0 - s) * std::pow(delta * (1.0 + mu_data), s);
  if (!(one_minus_m > 0.0 && one_minus_m < 1.0))
    throw ValidationError("m", "estimated 1 - m = " + format_double(one_minus_m) +
                                   " lies outside (0,1); check the units of K/(qY) (annual) and delta (monthly)");
  return 1.0 - one_minus_m;
}

double estimate_automation(const TimeSeriesRow& row, const TechnologyParams& tech) {
  if (!row.k_over_qy_annual || !row.mu_data || !row.delta_data)
    throw ValidationError("k_over_qy_annual", "year " + std::to_string(row.year) +
                                                  ": automation estimate needs k_over_qy_annual, mu_data and delta_annual");
  return estimate_automation(*row.k_over_qy_annual, *row.mu_data, *row.delta_data, tech);
}

double invert_t_w(double target_u, const ModelParams& base, double tol) {
  if (!(target_u > 0.0 && target_u < 1.0))
    throw ValidationError("target_u", "target unemployment must lie in (0,1) (got " + format_double(target_u) + ")");
  auto u_at = [&](double tw) {
    ParamBundle b = base.bundle();
    b.inst.t_w = tw;
    return solve_steady(validate_params(b)).u_rate;
  };
  double lo = 1e-3;
  double hi = 50.0;
  double u_lo = u_at(lo);
  double u_hi = u_at(hi);
  if (!(u_lo > u_hi))
    throw NoSolutionError("invert_t_w: unemployment is not decreasing in T^w on [1e-3, 50]");
  if (target_u > u_lo) {
    lo = 0.0;
    u_lo = u_at(lo);
  }
  while (target_u < u_hi && hi < 1e6) {
    lo = hi;
    u_lo = u_hi;
    hi *= 4.0;
    u_hi = u_at(hi);
  }
  if (target_u > u_lo || target_u < u_hi)
    throw NoSolutionError("invert_t_w: target U = " + format_double(target_u) + " outside attainable range [" +
                          format_double(u_hi) + ", " + format_double(u_lo) + "]");
  if (u_lo == target_u) return lo;
  if (u_hi == target_u) return hi;

  auto h = [&](double tw) { return u_at(tw) - target_u; };
  std::uintmax_t it = 200;
  auto stop = [](double a, double b) { return std::abs(b - a) <= 1e-13 * std::max(1.0, std::abs(b)); };
  auto [a, b] = boost::math::tools::toms748_solve(h, lo, hi, u_lo - target_u, u_hi - target_u, stop, it);
  const double ha = std::abs(h(a));
  const double hb = std::abs(h(b));
  const double tw = ha <= hb ? a : b;
  const double miss = std::min(ha, hb);
  if (!(miss <= tol))
    throw NonConvergenceError("invert_t_w: residual " + format_double(miss) + " above tolerance", miss);
  return tw;
}

std::string to_string(ScenarioLabel s) {
  switch (s) {
    case ScenarioLabel::Technical: return "tech";
    case ScenarioLabel::Institutions: return "inst";
    case ScenarioLabel::Both: return "both";
  }
  return "both";
}

ScenarioLabel scenario_from_string(const std::string& s) {
  if (s == "tech") return ScenarioLabel::Technical;
  if (s == "inst") return ScenarioLabel::Institutions;
  if (s == "both") return ScenarioLabel::Both;
  throw ValidationError("scenario", "unknown scenario '" + s + "' (tech|inst|both)");
}

std::optional<double> unemployment_target(const TimeSeriesRow& row, TargetKind kind) {
  if (kind == TargetKind::Nairu) return row.u_nairu;
  if (!row.u_data || !row.v_data) return std::nullopt;
  return std::sqrt(*row.u_data * *row.v_data);
}

CalibratedPath run_scenario(const std::vector<TimeSeriesRow>& data, const ScenarioSpec& spec, const ModelParams& base,
                            const ScenarioOptions& opt) {
  CalibratedPath path;
  path.label = spec.label;
  if (data.empty()) return path;

  // Per-row automation estimates feed both the varying path and the frozen mean.
  std::vector<std::optional<double>> m_est(data.size());
  std::vector<std::string> m_err(data.size());
  std::vector<double> m_ok;
  for (std::size_t i = 0; i < data.size(); ++i) {
    try {
      m_est[i] = estimate_automation(data[i], base.tech());
      m_ok.push_back(*m_est[i]);
    } catch (const Error& e) {
      m_err[i] = e.what();
    }
  }

  ParamBundle frozen = base.bundle();
  auto mean_or = [](double v, double fallback) { return std::isnan(v) ? fallback : v; };
  frozen.tech.g = mean_or(mean_of(data, &TimeSeriesRow::g), frozen.tech.g);
  frozen.inst.b = mean_or(mean_of(data, &TimeSeriesRow::b), frozen.inst.b);
  frozen.inst.p_union = mean_or(mean_of(data, &TimeSeriesRow::p_union), frozen.inst.p_union);
  if (!m_ok.empty()) frozen.tech.m = stable_mean(m_ok);

  std::vector<double> targets;
  for (const auto& r : data)
    if (auto u = unemployment_target(r, opt.target)) targets.push_back(*u);
  if (targets.empty()) throw SchemaError("no row provides the unemployment target");
  path.frozen_t_w = invert_t_w(stable_mean(targets), validate_params(frozen));
  frozen.inst.t_w = path.frozen_t_w;

  path.rows.resize(data.size());
  auto solve_row = [&](std::size_t i) {
    const TimeSeriesRow& r = data[i];
    CalibratedRow& out = path.rows[i];
    out.year = r.year;
    try {
      ParamBundle b = frozen;
      if (spec.varies_technology()) {
        if (!m_est[i]) throw ValidationError("m", m_err[i]);
        if (!r.g) throw ValidationError("g_annual", "missing g_annual");
        b.tech.m = *m_est[i];
        b.tech.g = *r.g;
      }
      const auto target = unemployment_target(r, opt.target);
      if (target) out.target_u = *target;
      if (spec.varies_institutions()) {
        if (!r.b) throw ValidationError("b", "missing b");
        if (!r.p_union) throw ValidationError("p_union", "missing p_union");
        if (!target) throw ValidationError("target_u", "missing unemployment target");
        b.inst.b = *r.b;
        b.inst.p_union = *r.p_union;
        b.inst.t_w = invert_t_w(*target, validate_params(b));
      }
      const ModelParams p = validate_params(b);
      out.ss = solve_steady(p);
      out.m = b.tech.m;
      out.t_w = b.inst.t_w;
      out.g = b.tech.g;
      out.b = b.inst.b;
      out.p_union = b.inst.p_union;
      out.k_over_qy_annual = out.ss.capital_output_annual(b.tech.q_rel);
      out.ok = true;
    } catch (const Error& e) {
      out.ok = false;
      out.error = e.what();
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(opt.workers, static_cast<unsigned>(data.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < data.size(); ++i) solve_row(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < data.size(); i = next++) solve_row(i);
      });
    for (auto& th : pool) th.join();
  }

  for (const auto& r : path.rows)
    if (!r.ok) path.failures.emplace_back(r.year, r.error);
  const double share = static_cast<double>(path.failures.size()) / static_cast<double>(data.size());
  if (share > opt.max_failure_share) {
    std::string msg = "scenario " + to_string(spec.label) + ": " + std::to_string(path.failures.size()) + " of " +
                      std::to_string(data.size()) + " rows failed";
    for (const auto& [year, err] : path.failures) msg += "\n  " + std::to_string(year) + ": " + err;
    throw NoSolutionError(msg);
  }
  return path;
}

namespace {

using Getter = std::function<double(const CalibratedRow&)>;

const std::vector<std::pair<std::string, Getter>>& field_table() {
  static const std::vector<std::pair<std::string, Getter>> table{
      {"labor_share", [](const CalibratedRow& r) { return r.ss.labor_share; }},
      {"mu", [](const CalibratedRow& r) { return r.ss.mu; }},
      {"r_profit", [](const CalibratedRow& r) { return r.ss.r_profit; }},
      {"k_over_qy_annual", [](const CalibratedRow& r) { return r.k_over_qy_annual; }},
      {"u_rate", [](const CalibratedRow& r) { return r.ss.u_rate; }},
      {"v_rate", [](const CalibratedRow& r) { return r.ss.v_rate; }},
      {"theta", [](const CalibratedRow& r) { return r.ss.theta; }},
      {"wage", [](const CalibratedRow& r) { return r.ss.wage; }},
      {"c_hat", [](const CalibratedRow& r) { return r.ss.c_hat; }},
      {"m", [](const CalibratedRow& r) { return r.m; }},
      {"t_w", [](const CalibratedRow& r) { return r.t_w; }},
      {"g", [](const CalibratedRow& r) { return r.g; }},
      {"b", [](const CalibratedRow& r) { return r.b; }},
      {"p_union", [](const CalibratedRow& r) { return r.p_union; }},
      {"target_u", [](const CalibratedRow& r) { return r.target_u; }},
  };
  return table;
}

}  // namespace

std::vector<std::pair<int, double>> predicted_series(const CalibratedPath& path, const std::string& which) {
  for (const auto& [name, get] : field_table()) {
    if (name != which) continue;
    std::vector<std::pair<int, double>> out;
    for (const auto& r : path.rows)
      if (r.ok) out.emplace_back(r.year, get(r));
    return out;
  }
  throw ValidationError("which", "unknown series '" + which + "'");
}

std::vector<std::string> calibrated_columns() {
  std::vector<std::string> cols{"scenario", "year", "status"};
  for (const auto& f : field_table()) cols.push_back(f.first);
  return cols;
}

std::string calibrated_path_csv(const CalibratedPath& path) {
  CsvWriter w(calibrated_columns());
  for (const auto& r : path.rows) {
    std::vector<std::string> cells{to_string(path.label), std::to_string(r.year), r.ok ? "ok" : "failed"};
    for (const auto& f : field_table()) cells.push_back(r.ok ? CsvWriter::cell(f.second(r)) : std::string());
    w.add_row(cells);
  }
  return w.text();
}

}  // namespace powereq
