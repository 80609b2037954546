#include "powereq/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <boost/math/tools/toms748_solve.hpp>

#include "powereq/bargaining.hpp"
#include "powereq/errors.hpp"
#include "powereq/matching.hpp"

namespace powereq {

double k_of_mu(double mu, const TechnologyParams& t) {
  if (!(mu > -1.0)) throw ValidationError("mu", "mu must exceed -1 (got " + format_double(mu) + ")");
  const double s = t.sigma;
  const double m = t.m;
  const double A = t.a_k;
  const double R = t.delta * (1.0 + mu) / t.q_rel;  // required ŷ_k̂
  if (m <= 0.0) throw NoSolutionError("k_of_mu: with m = 0 the marginal product is the constant A^k");
  if (m >= 1.0 && s < 1.0) throw NoSolutionError("k_of_mu: no capital tasks at m = 1");

  double x = 0.0;  // k̂/ŷ
  double y = 0.0;
  if (std::abs(s - 1.0) < kUnitSigmaBand) {
    x = (1.0 - m) / R;
    y = std::pow(A * x / (1.0 - m), (1.0 - m) / m) / m;
  } else {
    x = (1.0 - m) * std::pow(A, s - 1.0) * std::pow(R, -s);
    const double share_k = std::pow(1.0 - m, 1.0 / s) * std::pow(A * x, (s - 1.0) / s);
    if (!(share_k < 1.0))
      throw NoSolutionError("k_of_mu: required marginal product " + format_double(R) +
                            " is outside the attainable CES range at mu = " + format_double(mu));
    const double B = task_integral(m, s, t.alpha);
    y = std::pow(B, 1.0 / (s - 1.0)) * std::pow(1.0 - share_k, -s / (s - 1.0));
  }
  const double k = x * y;
  if (!(k > 0.0) || !std::isfinite(k))
    throw NoSolutionError("k_of_mu: no positive capital stock at mu = " + format_double(mu));
  return k;
}

namespace {

struct MarketTerms {
  double rho_tilde;
  double lambda;
};

MarketTerms market_terms(const ModelParams& p) {
  const auto& t = p.tech();
  return {effective_discount(p.pref().rho, t.alpha, t.m_dot, t.g), effective_separation(p.match(), t)};
}

double supply_at(double theta, const ProductionPoint& pp, const ModelParams& p, const MarketTerms& mt) {
  const auto& in = p.inst();
  const Tightness th(theta);
  const double q = q_fill(th, p.match().iota);
  const double f = theta * q;
  const double pna = psi(gamma_na(p.pref().gamma_f), mt.rho_tilde, mt.lambda, f);
  const double pnb = psi(gamma_nb(p.pref().gamma_f, q), mt.rho_tilde, mt.lambda, f);
  const double pn = (in.t_w == 0.0 && theta == 0.0) ? pna : psi_n(in.t_w, th, pna, pnb);
  const double wn = wage_individual(in.b, pn, pp.y_l);
  if (in.p_union == 0.0) return wn;
  const double pu = psi(in.gamma_u, mt.rho_tilde, mt.lambda, f);
  const double wu = wage_collective(in.b, pu, pp.y_l, pp.y_hat, mt.rho_tilde, mt.lambda);
  return wage_aggregate(in.p_union, wn, wu);
}

double demand_at(double theta, const ProductionPoint& pp, const ModelParams& p, const MarketTerms& mt) {
  return pp.y_l - (mt.rho_tilde + mt.lambda) * p.match().xi / q_fill(Tightness(theta), p.match().iota);
}

}  // namespace

double wage_supply(double theta, const ProductionPoint& pp, const ModelParams& p) {
  return supply_at(theta, pp, p, market_terms(p));
}

double wage_demand(double theta, const ProductionPoint& pp, const ModelParams& p) {
  return demand_at(theta, pp, p, market_terms(p));
}

namespace {

Clearing refine(const std::function<double(double)>& gap, double lo, double hi, double glo, double ghi,
                const std::function<double(double)>& demand) {
  if (glo == 0.0) return {lo, demand(lo)};
  if (ghi == 0.0) return {hi, demand(hi)};
  std::uintmax_t iters = 300;
  auto tol = [](double a, double b) {
    return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(b);
  };
  auto [a, b] = boost::math::tools::toms748_solve(gap, lo, hi, glo, ghi, tol, iters);
  const double th = std::abs(gap(a)) <= std::abs(gap(b)) ? a : b;
  return {th, demand(th)};
}

}  // namespace

Clearing theta_clearing(const ProductionPoint& pp, const ModelParams& p) {
  const MarketTerms mt = market_terms(p);
  std::function<double(double)> gap = [&](double th) { return supply_at(th, pp, p, mt) - demand_at(th, pp, p, mt); };
  std::function<double(double)> demand = [&](double th) { return demand_at(th, pp, p, mt); };

  const double g0 = gap(0.0);
  if (g0 >= 0.0)
    throw NoSolutionError("theta_clearing: wage supply exceeds labor demand for every theta (gap at theta->0 = " +
                          format_double(g0) + ")");
  double lo = 0.0;
  double glo = g0;
  double hi = 1.0;
  double ghi = gap(hi);
  while (ghi < 0.0) {
    lo = hi;
    glo = ghi;
    hi *= 2.0;
    if (hi > 1e12) throw NoSolutionError("theta_clearing: labor demand exceeds wage supply up to theta = 1e12");
    ghi = gap(hi);
  }
  return refine(gap, lo, hi, glo, ghi, demand);
}

Clearing theta_clearing(const ProductionPoint& pp, const ModelParams& p, double theta_hint) {
  if (!(theta_hint > 0.0) || !std::isfinite(theta_hint)) return theta_clearing(pp, p);
  const MarketTerms mt = market_terms(p);
  std::function<double(double)> gap = [&](double th) { return supply_at(th, pp, p, mt) - demand_at(th, pp, p, mt); };
  std::function<double(double)> demand = [&](double th) { return demand_at(th, pp, p, mt); };
  const double lo = theta_hint * (1.0 - 1e-3);
  const double hi = theta_hint * (1.0 + 1e-3);
  const double glo = gap(lo);
  const double ghi = gap(hi);
  if (glo <= 0.0 && ghi >= 0.0) return refine(gap, lo, hi, glo, ghi, demand);
  return theta_clearing(pp, p);
}

Clearing theta_clearing(double k_hat, const ModelParams& p) { return theta_clearing(y_hat(k_hat, p.tech()), p); }

double rate_of_return_map(double mu, const ModelParams& p) {
  const ProductionPoint pp = y_hat(k_of_mu(mu, p.tech()), p.tech());
  const Clearing c = theta_clearing(pp, p);
  return pp.y_l / c.wage - 1.0;
}

SteadyState solve_steady(const ModelParams& p, const SolveOptions& opt) {
  require_stationary(p);
  double mu = opt.mu0;
  double residual = 0.0;
  int it = 0;
  for (;; ++it) {
    if (it >= opt.max_iter)
      throw NonConvergenceError("solve_steady: no fixed point after " + std::to_string(opt.max_iter) +
                                    " iterations (residual " + format_double(residual) + ")",
                                residual);
    const double next = rate_of_return_map(mu, p);
    residual = std::abs(next - mu);
    if (residual < opt.tol) break;
    mu = (1.0 - opt.damping) * next + opt.damping * mu;
  }

  const auto& t = p.tech();
  SteadyState ss;
  ss.mu = mu;
  ss.k_hat = k_of_mu(mu, t);
  const ProductionPoint pp = y_hat(ss.k_hat, t);
  const Clearing c = theta_clearing(pp, p);
  ss.theta = c.theta;
  ss.wage = c.wage;
  ss.y_hat = pp.y_hat;
  ss.y_l = pp.y_l;
  ss.lambda_eff = effective_separation(p.match(), t);
  ss.u_rate = beveridge_u(ss.lambda_eff, Tightness(ss.theta), p.match().iota);
  ss.v_rate = ss.theta * ss.u_rate;
  ss.labor_share = ss.wage / ss.y_hat;
  ss.r_profit = t.q_rel * ss.y_hat * mu / (ss.k_hat * (1.0 + mu));
  const double L = 1.0 - ss.u_rate;
  ss.c_hat = mu * ss.y_hat / (1.0 + mu) - t.g * ss.k_hat / t.q_rel - p.match().xi * ss.v_rate / L - p.inst().tau / L;
  ss.m = t.m;
  ss.iterations = it;
  ss.residual = std::abs(pp.y_l / c.wage - 1.0 - mu);
  return ss;
}

EquilibriumDiagnostics harrod_diagnostics(const SteadyState& ss, const ModelParams& p) {
  const auto& t = p.tech();
  EquilibriumDiagnostics d;
  const double L = 1.0 - ss.u_rate;
  d.chi = t.q_rel * (p.match().xi * ss.v_rate / L + p.inst().tau / L) / ss.k_hat;
  d.r_profit = t.q_rel * ss.y_hat * ss.mu / (ss.k_hat * (1.0 + ss.mu));
  d.g_over_delta = t.g / t.delta;
  d.harrod_s = t.g / (d.r_profit - d.chi);
  // ĉ = 0 ⇔ μ/(1+μ) = k̂(g+χ)/(qŷ)
  d.mu_min = 1.0 / (t.q_rel * ss.y_hat / (ss.k_hat * (t.g + d.chi)) - 1.0);
  d.c_hat = ss.c_hat;

  if (!(ss.c_hat >= 0.0))
    d.reason = "negative capitalist consumption (c_hat = " + format_double(ss.c_hat) + ")";
  else if (!(ss.mu > d.g_over_delta))
    d.reason = "mu* = " + format_double(ss.mu) + " does not exceed g/delta = " + format_double(d.g_over_delta);
  else if (!(d.g_over_delta > d.mu_min))
    d.reason = "g/delta = " + format_double(d.g_over_delta) + " does not exceed mu_min = " + format_double(d.mu_min);
  d.feasible = d.reason.empty();
  return d;
}

double steady_state_defect(const SteadyState& ss, const ModelParams& p) {
  const double f = f_find(Tightness(ss.theta), p.match().iota);
  double worst = std::abs(ss.wage * (1.0 + ss.mu) - ss.y_l) / std::abs(ss.y_l);
  worst = std::max(worst, std::abs(ss.u_rate - ss.lambda_eff / (ss.lambda_eff + f)));
  worst = std::max(worst, std::abs(ss.labor_share - ss.wage / ss.y_hat));
  worst = std::max(worst, std::abs(ss.v_rate - ss.theta * ss.u_rate));
  return worst;
}

}  // namespace powereq
