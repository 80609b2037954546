#include <algorithm>
#include <charconv>
#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "powereq/calibration.hpp"
#include "powereq/config.hpp"
#include "powereq/csv.hpp"
#include "powereq/dynamics.hpp"
#include "powereq/equilibrium.hpp"
#include "powereq/errors.hpp"
#include "powereq/political.hpp"
#include "powereq/regions.hpp"

using namespace powereq;

namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kValidation = 2,
  kNoSolution = 3,
  kInfeasible = 4,
  kBlowUp = 5,
  kSchema = 6,
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Validation: return kValidation;
    case ErrorKind::NoSolution:
    case ErrorKind::NonConvergence: return kNoSolution;
    case ErrorKind::Infeasible: return kInfeasible;
    case ErrorKind::BlowUp: return kBlowUp;
    case ErrorKind::Schema:
    case ErrorKind::Io: return kSchema;
  }
  return kUsage;
}

const std::vector<std::string> kSections{"technology", "preferences", "matching", "institutions", "run",
                                         "shock",      "path",        "game",     "regions"};

struct Common {
  std::string config;
  std::vector<std::string> set;
  std::string out = "-";
  std::string format = "csv";
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

bool numeric(const std::string& s) {
  if (s.empty()) return false;
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && p == s.data() + s.size() && std::isfinite(v);
}

std::string json_string(const std::string& s) {
  std::string o = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') o += '\\';
    if (c == '\n') {
      o += "\\n";
      continue;
    }
    o += c;
  }
  return o + "\"";
}

std::string render(const Table& t, const std::string& format) {
  if (format == "jsonl") {
    std::string out;
    for (const auto& r : t.rows) {
      out += '{';
      for (std::size_t i = 0; i < r.size(); ++i) {
        out += (i ? "," : "") + json_string(t.header[i]) + ':';
        out += numeric(r[i]) ? r[i] : (r[i].empty() ? "null" : json_string(r[i]));
      }
      out += "}\n";
    }
    return out;
  }
  CsvWriter w(t.header);
  for (const auto& r : t.rows) w.add_row(r);
  return w.text();
}

void require_keys(const ConfigDocument& d, const std::string& section, const std::vector<std::string>& keys) {
  for (const auto& [key, e] : d.section(section))
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw SchemaError(d.source() + ": unknown key '" + section + "." + key + "'", e.line);
}

RunConfig load(const Common& c) {
  RunConfig rc = load_run_config(c.config, c.set);
  rc.doc.require_known_sections(kSections);
  require_keys(rc.doc, "run", {"tolerance", "seed"});
  require_keys(rc.doc, "shock", {"kind", "magnitude", "t_shock", "ramp_months"});
  require_keys(rc.doc, "path", {"horizon", "dt", "stride", "endpoint_tol"});
  require_keys(rc.doc, "regions", {"mu", "q_lo", "q_hi", "points"});
  rc.out_path = c.out;
  return rc;
}

SolveOptions solve_options(const RunConfig& rc) {
  SolveOptions o;
  o.tol = rc.tolerance;
  return o;
}

double doc_or(const ConfigDocument& d, const char* sec, const char* key, double fallback) {
  auto v = d.get_double(sec, key);
  return v ? *v : fallback;
}

std::string num(double v) { return format_double(v); }

// ---- steady ---------------------------------------------------------------

int cmd_steady(const Common& c) {
  const RunConfig rc = load(c);
  const ModelParams& p = rc.params;
  const SteadyState ss = solve_steady(p, solve_options(rc));
  const EquilibriumDiagnostics d = harrod_diagnostics(ss, p);
  const double gna = p.pref().gamma_f / (1.0 + p.pref().gamma_f);
  if (!d.feasible) {
    std::cerr << "infeasible: " << d.reason << " (mu* = " << num(ss.mu) << ", mu_min = " << num(d.mu_min)
              << ", c_hat = " << num(d.c_hat) << ")\n";
    return kInfeasible;
  }
  Table t;
  t.header = {"mu",       "theta",      "k_hat",       "c_hat",         "wage",      "u_rate",
              "v_rate",   "labor_share", "r_profit",   "y_hat",         "y_l",       "lambda_eff",
              "m",        "k_over_qy_annual", "gamma_na", "mu_min",    "g_over_delta", "harrod_s",
              "chi",      "feasible",   "iterations",  "residual"};
  t.rows.push_back({num(ss.mu), num(ss.theta), num(ss.k_hat), num(ss.c_hat), num(ss.wage), num(ss.u_rate),
                    num(ss.v_rate), num(ss.labor_share), num(ss.r_profit), num(ss.y_hat), num(ss.y_l),
                    num(ss.lambda_eff), num(ss.m), num(ss.capital_output_annual(p.tech().q_rel)), num(gna),
                    num(d.mu_min), num(d.g_over_delta), num(d.harrod_s), num(d.chi), "true",
                    std::to_string(ss.iterations), num(ss.residual)});
  write_output_atomic(rc.out_path, render(t, c.format));
  return kOk;
}

// ---- path -----------------------------------------------------------------

struct PathFlags {
  std::optional<std::string> kind;
  std::optional<double> magnitude;
  std::optional<double> t_shock;
  std::optional<double> ramp;
  std::optional<double> horizon;
  std::optional<double> dt;
  std::optional<int> stride;
  std::optional<double> endpoint_tol;
};

int cmd_path(const Common& c, const PathFlags& f) {
  const RunConfig rc = load(c);
  ShockSpec shock;
  if (auto e = rc.doc.find("shock", "kind")) shock.kind = shock_kind_from_string(e->value);
  shock.magnitude = doc_or(rc.doc, "shock", "magnitude", 0.0);
  shock.t_shock = doc_or(rc.doc, "shock", "t_shock", 0.0);
  shock.ramp_months = doc_or(rc.doc, "shock", "ramp_months", 24.0);
  if (f.kind) shock.kind = shock_kind_from_string(*f.kind);
  if (f.magnitude) shock.magnitude = *f.magnitude;
  if (f.t_shock) shock.t_shock = *f.t_shock;
  if (f.ramp) shock.ramp_months = *f.ramp;

  PathOptions po;
  po.horizon = f.horizon.value_or(doc_or(rc.doc, "path", "horizon", po.horizon));
  po.dt = f.dt.value_or(doc_or(rc.doc, "path", "dt", po.dt));
  po.stride = f.stride.value_or(static_cast<int>(doc_or(rc.doc, "path", "stride", po.stride)));
  po.endpoint_tol = f.endpoint_tol.value_or(doc_or(rc.doc, "path", "endpoint_tol", po.endpoint_tol));

  const SteadyState initial = solve_steady(rc.params, solve_options(rc));
  const PathResult res = integrate_path(initial, shock, rc.params, po);
  Table t;
  t.header = {"t", "L", "U", "V", "theta", "k_hat", "c_hat", "mu", "wage", "labor_share", "y_hat",
              "k_over_qy_annual", "m", "m_dot"};
  for (const auto& pt : res.points)
    t.rows.push_back({num(pt.t), num(pt.L), num(pt.U), num(pt.V), num(pt.theta), num(pt.k_hat), num(pt.c_hat),
                      num(pt.mu), num(pt.wage), num(pt.labor_share), num(pt.y_hat), num(pt.capital_output_annual),
                      num(pt.m), num(pt.m_dot)});
  write_output_atomic(rc.out_path, render(t, c.format));
  if (shock.kind == ShockKind::Automation) {
    const RegimeReport rr = classify_automation_regime(rc.params, shock);
    std::cerr << "automation regime: " << to_string(rr.regime) << " (dlambda/dm_dot = " << num(rr.d_lambda_d_m_dot)
              << ", alpha = " << num(rr.alpha) << ")\n";
  }
  return kOk;
}

// ---- calibrate ------------------------------------------------------------

struct CalibFlags {
  std::string data;
  std::string scenario = "both";
  std::string target = "efficient";
  unsigned workers = 1;
};

int cmd_calibrate(const Common& c, const CalibFlags& f) {
  const RunConfig rc = load(c);
  const auto rows = read_time_series_file(f.data);
  ScenarioOptions so;
  so.workers = f.workers;
  so.target = f.target == "nairu" ? TargetKind::Nairu : TargetKind::Efficient;
  if (so.target == TargetKind::Nairu)
    for (const auto& r : rows)
      if (!r.u_nairu) throw SchemaError(f.data + ": --target nairu needs a 'u_nairu' value", r.line);

  std::vector<ScenarioLabel> labels;
  if (f.scenario == "all")
    labels = {ScenarioLabel::Technical, ScenarioLabel::Institutions, ScenarioLabel::Both};
  else
    labels = {scenario_from_string(f.scenario)};

  Table t;
  t.header = calibrated_columns();
  for (ScenarioLabel l : labels) {
    const CalibratedPath path = run_scenario(rows, ScenarioSpec{l}, rc.params, so);
    const CsvTable part = parse_csv(calibrated_path_csv(path));
    for (const auto& r : part.rows) t.rows.push_back(r);
    std::cerr << "scenario " << to_string(l) << ": " << path.rows.size() - path.failures.size() << "/"
              << path.rows.size() << " years solved, frozen T^w = " << num(path.frozen_t_w) << "\n";
    for (const auto& [year, err] : path.failures) std::cerr << "  failed " << year << ": " << err << "\n";
  }
  write_output_atomic(rc.out_path, render(t, c.format));
  return kOk;
}

// ---- political ------------------------------------------------------------

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  if (spec.empty()) return out;
  // start:stop:count, or a comma list
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string s; std::getline(ss, s, ':');) parts.push_back(s);
    if (parts.size() != 3) throw ValidationError("phi-grid", "grid must be start:stop:count");
    const double a = parse_number(parts[0], "phi-grid start");
    const double b = parse_number(parts[1], "phi-grid stop");
    const double n = parse_number(parts[2], "phi-grid count");
    if (!(n >= 1.0) || n != std::floor(n)) throw ValidationError("phi-grid", "grid count must be a positive integer");
    const int cnt = static_cast<int>(n);
    for (int i = 0; i < cnt; ++i) out.push_back(cnt == 1 ? a : a + (b - a) * i / (cnt - 1));
    return out;
  }
  std::stringstream ss(spec);
  for (std::string s; std::getline(ss, s, ',');) out.push_back(parse_number(s, "phi-grid value"));
  return out;
}

ThreatFamily game_from(const ConfigDocument& d) {
  ThreatFamily f = illustrative_threat_family();
  const char* idx[2] = {"1", "2"};
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) {
      const std::string cell = std::string(idx[j]) + idx[i];
      f.base.u_w[j][i] = doc_or(d, "game", ("u_w" + cell).c_str(), f.base.u_w[j][i]);
      f.base.u_g[j][i] = doc_or(d, "game", ("u_g" + cell).c_str(), f.base.u_g[j][i]);
      f.w_slope[j][i] = doc_or(d, "game", ("w_slope" + cell).c_str(), f.w_slope[j][i]);
      f.g_slope[j][i] = doc_or(d, "game", ("g_slope" + cell).c_str(), f.g_slope[j][i]);
    }
  f.base.lambda_w = doc_or(d, "game", "lambda_w", f.base.lambda_w);
  f.base.lambda_g = doc_or(d, "game", "lambda_g", f.base.lambda_g);
  for (const auto& [key, e] : d.section("game")) {
    bool known = key == "lambda_w" || key == "lambda_g" || key == "phi_grid";
    for (const char* pre : {"u_w", "u_g", "w_slope", "g_slope"})
      for (const char* cell : {"11", "12", "21", "22"}) known = known || key == std::string(pre) + cell;
    if (!known) throw SchemaError(d.source() + ": unknown key 'game." + key + "'", e.line);
  }
  validate_game(f.base);
  return f;
}

int cmd_political(const Common& c, const std::optional<std::string>& grid_flag) {
  const RunConfig rc = load(c);
  const ThreatFamily fam = game_from(rc.doc);
  std::string grid = "-0.16:0.21:38";
  if (auto e = rc.doc.find("game", "phi_grid")) grid = e->value;
  if (grid_flag) grid = *grid_flag;
  const auto rows = threat_sweep(fam, parse_grid(grid));
  Table t;
  t.header = {"phi", "p_union", "p_support", "p_u1_s1", "p_u1_s2", "p_u2_s1", "p_u2_s2", "residual", "iterations"};
  for (const auto& r : rows)
    t.rows.push_back({num(r.phi), num(r.qre.p_union), num(r.qre.p_support), num(r.joint[0]), num(r.joint[1]),
                      num(r.joint[2]), num(r.joint[3]), num(r.qre.residual), std::to_string(r.qre.iterations)});
  write_output_atomic(rc.out_path, render(t, c.format));
  return kOk;
}

// ---- regions --------------------------------------------------------------

struct RegionFlags {
  std::optional<double> mu;
  std::optional<double> q_lo;
  std::optional<double> q_hi;
  int points = 41;
};

int cmd_regions(const Common& c, const RegionFlags& f) {
  const RunConfig rc = load(c);
  const auto& tech = rc.params.tech();
  double mu = f.mu ? *f.mu : doc_or(rc.doc, "regions", "mu", std::nan(""));
  if (std::isnan(mu)) mu = solve_steady(rc.params, solve_options(rc)).mu;
  const int points = static_cast<int>(doc_or(rc.doc, "regions", "points", f.points));
  if (points < 2) throw ValidationError("points", "regions grid needs at least 2 points");

  const RegionBoundaries here = automation_region(tech.q_rel, tech.m, mu, tech);
  const double lo = f.q_lo.value_or(doc_or(rc.doc, "regions", "q_lo", here.q_min));
  const double hi = f.q_hi.value_or(doc_or(rc.doc, "regions", "q_hi", here.q_max));
  std::vector<double> grid;
  for (int i = 0; i < points; ++i) grid.push_back(i + 1 == points ? hi : lo + (hi - lo) * i / (points - 1));
  if (here.q_bar > lo && here.q_bar < hi) grid.push_back(here.q_bar);
  std::sort(grid.begin(), grid.end());

  Table t;
  t.header = {"row", "q", "m", "mu", "q_bar", "q_min", "q_max", "m_bar", "m_tilde", "m_bar_exact", "m_tilde_exact",
              "region"};
  auto emit = [&](const char* kind, double q) {
    const RegionBoundaries rb = automation_region(q, tech.m, mu, tech);
    t.rows.push_back({kind, num(q), num(tech.m), num(mu), num(rb.q_bar), num(rb.q_min), num(rb.q_max), num(rb.m_bar),
                      num(rb.m_tilde), num(rb.m_bar_exact), num(rb.m_tilde_exact), std::to_string(rb.region)});
  };
  emit("configured", tech.q_rel);
  for (double q : grid) emit("grid", q);
  write_output_atomic(rc.out_path, render(t, c.format));
  return kOk;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "Parameter file (sections technology/preferences/matching/institutions)");
  sub->add_option("--set", c.set, "Override, e.g. --set institutions.t_w=6 (repeatable)");
  sub->add_option("--out", c.out, "Output path ('-' for stdout)");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Power-relations general-equilibrium engine"};
  app.require_subcommand(1);

  Common steady_c, path_c, calib_c, pol_c, reg_c;
  PathFlags pf;
  CalibFlags cf;
  std::optional<std::string> phi_grid;
  RegionFlags rf;

  auto* steady = app.add_subcommand("steady", "Solve the stationary equilibrium and BGP diagnostics");
  add_common(steady, steady_c);

  auto* path = app.add_subcommand("path", "Integrate the transition after a permanent shock");
  add_common(path, path_c);
  path->add_option("--shock", pf.kind, "none|automation|growth|t_w|b|p_union");
  path->add_option("--magnitude", pf.magnitude, "Absolute size of the change");
  path->add_option("--t-shock", pf.t_shock, "Month at which the shock hits");
  path->add_option("--ramp", pf.ramp, "Automation ramp length in months");
  path->add_option("--horizon", pf.horizon, "Months integrated after the shock");
  path->add_option("--dt", pf.dt, "Step length in months");
  path->add_option("--stride", pf.stride, "Emit every n-th step");
  path->add_option("--endpoint-tol", pf.endpoint_tol, "Relative landing tolerance at the horizon (0 disables)");

  auto* calib = app.add_subcommand("calibrate", "Run counterfactual scenarios on a data file");
  add_common(calib, calib_c);
  calib->add_option("--data", cf.data, "Time-series CSV")->required();
  calib->add_option("--scenario", cf.scenario, "tech|inst|both|all")
      ->check(CLI::IsMember({"tech", "inst", "both", "all"}));
  calib->add_option("--target", cf.target, "Unemployment target")->check(CLI::IsMember({"efficient", "nairu"}));
  calib->add_option("--workers", cf.workers, "Threads solving years concurrently")->check(CLI::Range(1u, 256u));

  auto* pol = app.add_subcommand("political", "Sweep the political QRE over the threat covariate");
  add_common(pol, pol_c);
  pol->add_option("--phi-grid", phi_grid, "start:stop:count or comma list (empty for none)");

  auto* reg = app.add_subcommand("regions", "Tabulate automation-region boundaries over a q grid");
  add_common(reg, reg_c);
  reg->add_option("--mu", rf.mu, "Rate of return (default: solved steady state)");
  reg->add_option("--q-lo", rf.q_lo, "Grid start (default q_min)");
  reg->add_option("--q-hi", rf.q_hi, "Grid end (default q_max)");
  reg->add_option("--points", rf.points, "Grid size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*steady) return cmd_steady(steady_c);
    if (*path) return cmd_path(path_c, pf);
    if (*calib) return cmd_calibrate(calib_c, cf);
    if (*pol) return cmd_political(pol_c, phi_grid);
    if (*reg) return cmd_regions(reg_c, rf);
  } catch (const ValidationError& e) {
    std::cerr << "validation error (" << e.field() << "): " << e.what() << "\n";
    return kValidation;
  } catch (const BlowUpError& e) {
    std::cerr << "blow-up at step " << e.step() << ": " << e.what() << "\n";
    return kBlowUp;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
