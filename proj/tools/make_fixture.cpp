// Generates model-consistent synthetic calibration series.
#include <cmath>
#include <iostream>
#include <numbers>
#include <string>

#include "CLI11.hpp"
#include "powereq/calibration.hpp"
#include "powereq/csv.hpp"
#include "powereq/equilibrium.hpp"
#include "powereq/errors.hpp"

using namespace powereq;

namespace {

struct Drivers {
  double t_w, p_union, g_annual, b, m;
};

Drivers drivers(const std::string& kind, int i, int n) {
  const double s = n > 1 ? static_cast<double>(i) / (n - 1) : 0.0;
  if (kind == "constant") return {4.0, 0.25, 0.0206, 0.06, 0.86};
  if (kind == "trend")  // steady union decline with rising firm mobility
    return {3.0 + 2.0 * s, 0.30 - 0.18 * s, 0.0206, 0.06, 0.86};
  // rise-then-fall mobility, declining unions, mild wiggles elsewhere
  const double hump = std::sin(std::numbers::pi * s);
  return {3.0 + 2.0 * hump, 0.30 - 0.18 * s, 0.0206 + 0.003 * std::sin(2.0 * std::numbers::pi * s),
          0.06 + 0.005 * std::cos(std::numbers::pi * s), 0.855 + 0.01 * s};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic calibration fixture generator"};
  std::string kind = "narrative";
  std::string out = "-";
  int years = 30;
  int first = 1987;
  app.add_option("--kind", kind, "narrative|trend|constant")->check(CLI::IsMember({"narrative", "trend", "constant"}));
  app.add_option("--years", years)->check(CLI::Range(1, 200));
  app.add_option("--first-year", first);
  app.add_option("--out", out);
  CLI11_PARSE(app, argc, argv);

  try {
    const double delta_annual = 0.07;
    CsvWriter w({"year", "p_union", "g_annual", "b", "k_over_qy_annual", "mu_data", "delta_annual", "u_data",
                 "v_data", "u_nairu", "t_w_true", "m_true"});
    for (int i = 0; i < years; ++i) {
      const Drivers d = drivers(kind, i, years);
      ParamBundle b = baseline_bundle();
      b.inst.t_w = d.t_w;
      b.inst.p_union = d.p_union;
      b.inst.b = d.b;
      b.tech.g = annual_to_monthly(d.g_annual);
      b.tech.m = d.m;
      b.tech.delta = annual_to_monthly(delta_annual);
      const ModelParams p = validate_params(b);
      const SteadyState ss = solve_steady(p);
      const double u = ss.u_rate;
      const double v = ss.v_rate;
      // √(u_data·v_data) = U; the NAIRU column carries U directly
      w.add_row({std::to_string(first + i), format_double(d.p_union), format_double(d.g_annual), format_double(d.b),
                 format_double(ss.capital_output_annual(p.tech().q_rel)), format_double(ss.mu),
                 format_double(delta_annual), format_double(u * u / v), format_double(v), format_double(u),
                 format_double(d.t_w), format_double(d.m)});
    }
    write_output_atomic(out, w.text());
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
