#include "powereq/political.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "powereq/errors.hpp"
#include "powereq/params.hpp"

namespace powereq {

namespace {

// P(choice 1) for a binary logit with payoffs e1, e2 and precision λ
double logit(double lambda, double e1, double e2) { return 1.0 / (1.0 + std::exp(lambda * (e2 - e1))); }

}  // namespace

void validate_game(const PoliticalGame& g) {
  for (const auto* m : {&g.u_w, &g.u_g})
    for (const auto& row : *m)
      for (double v : row)
        if (!std::isfinite(v)) throw ValidationError("payoff", "payoffs must be finite");
  if (!(g.lambda_w >= 0.0) || !std::isfinite(g.lambda_w))
    throw ValidationError("lambda_w", "lambda_w must be finite and non-negative (got " + format_double(g.lambda_w) + ")");
  if (!(g.lambda_g >= 0.0) || !std::isfinite(g.lambda_g))
    throw ValidationError("lambda_g", "lambda_g must be finite and non-negative (got " + format_double(g.lambda_g) + ")");
}

std::array<double, 2> logit_response(const PoliticalGame& g, double pu, double ps) {
  const double PG[2] = {ps, 1.0 - ps};
  const double PU[2] = {pu, 1.0 - pu};
  double ew[2];
  double eg[2];
  for (int i = 0; i < 2; ++i) ew[i] = PG[0] * g.u_w[0][i] + PG[1] * g.u_w[1][i];
  for (int j = 0; j < 2; ++j) eg[j] = PU[0] * g.u_g[j][0] + PU[1] * g.u_g[j][1];
  return {logit(g.lambda_w, ew[0], ew[1]), logit(g.lambda_g, eg[0], eg[1])};
}

QreSolution solve_qre(const PoliticalGame& g, const QreOptions& opt) {
  validate_game(g);
  QreSolution s;
  double pu = 0.5;
  double ps = 0.5;
  double prev = std::numeric_limits<double>::infinity();
  int rising = 0;
  for (int it = 0; it < opt.max_iter; ++it) {
    const auto next = logit_response(g, pu, ps);
    const double r = std::max(std::abs(next[0] - pu), std::abs(next[1] - ps));
    if (r < opt.tol) {
      s.p_union = pu;
      s.p_support = ps;
      s.iterations = it;
      const auto chk = logit_response(g, pu, ps);
      s.residual = std::max(std::abs(chk[0] - pu), std::abs(chk[1] - ps));
      return s;
    }
    // a residual that keeps growing means the damped map is orbiting
    rising = r > prev ? rising + 1 : 0;
    if (rising > 200)
      throw NonConvergenceError("solve_qre: damped iteration is cycling (residual " + format_double(r) + ")", r);
    prev = r;
    pu = (1.0 - opt.damping) * next[0] + opt.damping * pu;
    ps = (1.0 - opt.damping) * next[1] + opt.damping * ps;
  }
  const auto last = logit_response(g, pu, ps);
  const double r = std::max(std::abs(last[0] - pu), std::abs(last[1] - ps));
  throw NonConvergenceError("solve_qre: no fixed point after " + std::to_string(opt.max_iter) +
                                " iterations (last residual " + format_double(r) + ")",
                            r);
}

PoliticalGame ThreatFamily::at(double phi) const {
  PoliticalGame g = base;
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) {
      g.u_w[j][i] += phi * w_slope[j][i];
      g.u_g[j][i] += phi * g_slope[j][i];
    }
  return g;
}

ThreatFamily illustrative_threat_family() {
  ThreatFamily f;
  f.base.u_w = {{{1.0, 1.0}, {1.0, 1.0}}};
  f.base.u_g = {{{0.5, 0.3}, {0.3, 0.5}}};
  f.base.lambda_w = 6.0;
  f.base.lambda_g = 11.0;
  f.w_slope = {{{0.75, 0.0}, {0.0, 0.0}}};
  f.g_slope = {{{0.5, 0.5}, {0.0, 0.0}}};
  return f;
}

std::vector<SweepRow> threat_sweep(const ThreatFamily& family, const std::vector<double>& phi_grid,
                                   const QreOptions& opt) {
  std::vector<SweepRow> rows;
  rows.reserve(phi_grid.size());
  for (double phi : phi_grid) {
    if (!std::isfinite(phi)) throw ValidationError("phi", "phi grid values must be finite");
    SweepRow row;
    row.phi = phi;
    try {
      row.qre = solve_qre(family.at(phi), opt);
    } catch (const NonConvergenceError& e) {
      throw NonConvergenceError("phi = " + format_double(phi) + ": " + e.what(), e.last_residual());
    }
    const double pu = row.qre.p_union;
    const double ps = row.qre.p_support;
    row.joint = {pu * ps, pu * (1.0 - ps), (1.0 - pu) * ps, (1.0 - pu) * (1.0 - ps)};
    rows.push_back(row);
  }
  return rows;
}

}  // namespace powereq
