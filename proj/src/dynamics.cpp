#include "powereq/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <Eigen/Dense>
#include <boost/math/tools/toms748_solve.hpp>

#include "powereq/errors.hpp"
#include "powereq/matching.hpp"
#include "powereq/production.hpp"

namespace powereq {

std::string to_string(ShockKind k) {
  switch (k) {
    case ShockKind::None: return "none";
    case ShockKind::Automation: return "automation";
    case ShockKind::Growth: return "growth";
    case ShockKind::Mobility: return "t_w";
    case ShockKind::OutsideOption: return "b";
    case ShockKind::UnionProbability: return "p_union";
  }
  return "none";
}

ShockKind shock_kind_from_string(const std::string& s) {
  for (ShockKind k : {ShockKind::None, ShockKind::Automation, ShockKind::Growth, ShockKind::Mobility,
                      ShockKind::OutsideOption, ShockKind::UnionProbability})
    if (to_string(k) == s) return k;
  throw ValidationError("shock.kind", "unknown shock kind '" + s + "' (none|automation|growth|t_w|b|p_union)");
}

std::string to_string(AutomationRegime r) {
  return r == AutomationRegime::CapitalizationDominant ? "capitalization-dominant" : "displacement-dominant";
}

namespace {

void check_shock(const ShockSpec& s) {
  if (!std::isfinite(s.magnitude))
    throw ValidationError("shock.magnitude", "shock magnitude must be finite");
  if (!(s.t_shock >= 0.0)) throw ValidationError("shock.t_shock", "t_shock must be non-negative");
  if (s.kind == ShockKind::Automation && !(s.ramp_months >= 1.0))
    throw ValidationError("shock.ramp_months",
                          "automation ramp must last at least 1 month (got " + format_double(s.ramp_months) + ")");
}

ParamBundle shifted(const ModelParams& pre, const ShockSpec& s) {
  ParamBundle b = pre.bundle();
  switch (s.kind) {
    case ShockKind::None: break;
    case ShockKind::Automation: b.tech.m += s.magnitude; break;
    case ShockKind::Growth: b.tech.g += s.magnitude; break;
    case ShockKind::Mobility: b.inst.t_w += s.magnitude; break;
    case ShockKind::OutsideOption: b.inst.b += s.magnitude; break;
    case ShockKind::UnionProbability: b.inst.p_union += s.magnitude; break;
  }
  return b;
}

}  // namespace

ModelParams post_shock_params(const ModelParams& pre, const ShockSpec& shock) {
  check_shock(shock);
  ParamBundle b = shifted(pre, shock);
  b.tech.m_dot = 0.0;
  return validate_params(b);
}

ModelParams params_at(const ModelParams& pre, const ShockSpec& shock, double t) {
  if (shock.kind == ShockKind::None || t < shock.t_shock) return pre;
  const double s = t - shock.t_shock;
  if (shock.kind == ShockKind::Automation && s < shock.ramp_months) {
    ParamBundle b = pre.bundle();
    b.tech.m += shock.magnitude * s / shock.ramp_months;
    b.tech.m_dot = shock.magnitude / shock.ramp_months;
    return validate_params(b);
  }
  ParamBundle b = shifted(pre, shock);
  b.tech.m_dot = 0.0;
  return validate_params(b);
}

namespace {

struct Eval {
  DynState dx;
  double theta = 0.0;
  double wage = 0.0;
  double mu = 0.0;
  double y_hat = 0.0;
};

Eval evaluate(const DynState& x, const ModelParams& p, double theta_hint) {
  const auto& t = p.tech();
  const ProductionPoint pp = y_hat(x.k, t);
  const Clearing cl = theta_hint > 0.0 ? theta_clearing(pp, p, theta_hint) : theta_clearing(pp, p);
  const double lam = effective_separation(p.match(), t);
  const double f = f_find(Tightness(cl.theta), p.match().iota);
  const double L = 1.0 - x.U;
  const double V = cl.theta * x.U;
  const double mu = pp.y_l / cl.wage - 1.0;
  const double dU = lam * L - f * x.U;
  const double delta_t = t.delta + t.m_dot / (1.0 - t.m);
  const double g_t = t.g - t.alpha * t.m_dot - dU / L;

  Eval e;
  e.dx.U = dU;
  e.dx.k = t.q_rel * (pp.y_hat - x.c - cl.wage - p.match().xi * V / L - p.inst().tau / L) - (delta_t + g_t) * x.k;
  e.dx.c = x.c / p.pref().epsilon * (t.q_rel * pp.y_k - delta_t * (1.0 + mu));
  e.theta = cl.theta;
  e.wage = cl.wage;
  e.mu = mu;
  e.y_hat = pp.y_hat;
  return e;
}

DynState axpy(const DynState& x, double h, const DynState& d) {
  return {x.U + h * d.U, x.k + h * d.k, x.c + h * d.c};
}

bool admissible(const DynState& x) {
  return std::isfinite(x.U) && std::isfinite(x.k) && std::isfinite(x.c) && x.k > 0.0 && x.c > 0.0 && x.U > 0.0 &&
         x.U < 1.0;
}

PathPoint describe(double t, const DynState& x, const ModelParams& p, double theta_hint) {
  const Eval e = evaluate(x, p, theta_hint);
  PathPoint pt;
  pt.t = t;
  pt.U = x.U;
  pt.L = 1.0 - x.U;
  pt.theta = e.theta;
  pt.V = e.theta * x.U;
  pt.k_hat = x.k;
  pt.c_hat = x.c;
  pt.mu = e.mu;
  pt.wage = e.wage;
  pt.y_hat = e.y_hat;
  pt.labor_share = e.wage / e.y_hat;
  pt.capital_output_annual = x.k / (p.tech().q_rel * e.y_hat) / 12.0;
  pt.m = p.tech().m;
  pt.m_dot = p.tech().m_dot;
  return pt;
}

enum class Outcome { Completed, Failed, Diverged };

struct Run {
  Outcome outcome = Outcome::Completed;
  long step = 0;  // failing step (1-based) when Failed
  double t = 0.0;
  DynState x;
  double theta = 0.0;
};

// Integrates n steps of RK4 from (t0, x0). `record` receives every state
// (including the start) when non-null. `diverged` may stop the run early.
template <class Stop>
Run integrate(const ModelParams& pre, const ShockSpec& shock, double t0, DynState x0, long n, double dt,
              double theta0, std::vector<std::pair<double, DynState>>* record, Stop diverged) {
  Run r;
  r.x = x0;
  r.t = t0;
  r.theta = theta0;
  if (record) record->emplace_back(t0, x0);
  for (long i = 0; i < n; ++i) {
    const double t = t0 + static_cast<double>(i) * dt;
    try {
      const ModelParams p0 = params_at(pre, shock, t);
      const ModelParams ph = params_at(pre, shock, t + 0.5 * dt);
      const ModelParams p1 = params_at(pre, shock, t + dt);
      const Eval e1 = evaluate(r.x, p0, r.theta);
      const DynState x2 = axpy(r.x, 0.5 * dt, e1.dx);
      if (!admissible(x2)) throw NoSolutionError("stage left the admissible region");
      const Eval e2 = evaluate(x2, ph, e1.theta);
      const DynState x3 = axpy(r.x, 0.5 * dt, e2.dx);
      if (!admissible(x3)) throw NoSolutionError("stage left the admissible region");
      const Eval e3 = evaluate(x3, ph, e2.theta);
      const DynState x4 = axpy(r.x, dt, e3.dx);
      if (!admissible(x4)) throw NoSolutionError("stage left the admissible region");
      const Eval e4 = evaluate(x4, p1, e3.theta);
      DynState nx{r.x.U + dt / 6.0 * (e1.dx.U + 2.0 * e2.dx.U + 2.0 * e3.dx.U + e4.dx.U),
                  r.x.k + dt / 6.0 * (e1.dx.k + 2.0 * e2.dx.k + 2.0 * e3.dx.k + e4.dx.k),
                  r.x.c + dt / 6.0 * (e1.dx.c + 2.0 * e2.dx.c + 2.0 * e3.dx.c + e4.dx.c)};
      if (!admissible(nx)) throw NoSolutionError("state left the admissible region");
      r.x = nx;
      r.theta = e4.theta;
    } catch (const Error&) {
      r.outcome = Outcome::Failed;
      r.step = i + 1;
      r.t = t + dt;
      return r;
    }
    r.t = t0 + static_cast<double>(i + 1) * dt;
    if (record) record->emplace_back(r.t, r.x);
    if (diverged(r.x)) {
      r.outcome = Outcome::Diverged;
      return r;
    }
  }
  return r;
}

struct Saddle {
  double eigenvalue = 0.0;
  Eigen::Vector3d left = Eigen::Vector3d::Zero();
  bool found = false;
};

Saddle unstable_direction(const DynState& xs, const ModelParams& p, double theta) {
  const std::array<double, 3> base{xs.U, xs.k, xs.c};
  Eigen::Matrix3d J;
  for (int j = 0; j < 3; ++j) {
    const double h = 1e-6 * std::max(std::abs(base[j]), 1e-3);
    std::array<double, 3> up = base;
    std::array<double, 3> dn = base;
    up[j] += h;
    dn[j] -= h;
    const DynState fu = evaluate({up[0], up[1], up[2]}, p, theta).dx;
    const DynState fd = evaluate({dn[0], dn[1], dn[2]}, p, theta).dx;
    J(0, j) = (fu.U - fd.U) / (2.0 * h);
    J(1, j) = (fu.k - fd.k) / (2.0 * h);
    J(2, j) = (fu.c - fd.c) / (2.0 * h);
  }
  Eigen::EigenSolver<Eigen::Matrix3d> es(J.transpose());
  Saddle s;
  int best = -1;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(es.eigenvalues()(i).imag()) > 1e-12) continue;
    if (es.eigenvalues()(i).real() > 0.0 && (best < 0 || es.eigenvalues()(i).real() > s.eigenvalue)) {
      best = i;
      s.eigenvalue = es.eigenvalues()(i).real();
    }
  }
  if (best >= 0) {
    s.left = es.eigenvectors().col(best).real();
    s.found = true;
  }
  return s;
}

}  // namespace

DynState path_rhs(const DynState& x, const ModelParams& p, double* theta_out) {
  const Eval e = evaluate(x, p, -1.0);
  if (theta_out) *theta_out = e.theta;
  return e.dx;
}

PathResult integrate_path(const SteadyState& initial, const ShockSpec& shock, const ModelParams& pre,
                          const PathOptions& opt) {
  check_shock(shock);
  if (!(opt.dt > 0.0) || !(opt.horizon > 0.0)) throw ValidationError("dt", "dt and horizon must be positive");
  if (opt.stride < 1) throw ValidationError("stride", "stride must be at least 1");

  const ModelParams post = post_shock_params(pre, shock);
  PathResult res;
  res.target = solve_steady(post);
  const SteadyState& tgt = res.target;

  const long n_pre = std::lround(shock.t_shock / opt.dt);
  const long n_post = std::lround(opt.horizon / opt.dt);
  const DynState x_init{initial.u_rate, initial.k_hat, initial.c_hat};
  auto never = [](const DynState&) { return false; };

  std::vector<std::pair<double, DynState>> trace;
  Run pre_run = integrate(pre, ShockSpec{}, 0.0, x_init, n_pre, opt.dt, initial.theta, &trace, never);
  if (pre_run.outcome == Outcome::Failed)
    throw BlowUpError("pre-shock path left the admissible region at step " + std::to_string(pre_run.step),
                      pre_run.step, pre_run.t);
  trace.pop_back();  // the shock-time state is re-emitted by the post-shock run
  const double t_s = pre_run.t;
  const DynState xs{tgt.u_rate, tgt.k_hat, tgt.c_hat};

  auto run_from = [&](double c0, std::vector<std::pair<double, DynState>>* rec, bool allow_stop) {
    DynState x0 = pre_run.x;
    x0.c = c0;
    auto far = [&](const DynState& x) {
      return allow_stop && (std::abs(x.k - xs.k) > 0.5 * xs.k || std::abs(x.c - xs.c) > 0.5 * std::abs(xs.c));
    };
    return integrate(pre, shock, t_s, x0, n_post, opt.dt, pre_run.theta, rec, far);
  };

  double c0 = pre_run.x.c;
  const bool null_shock = shock.kind == ShockKind::None || shock.magnitude == 0.0;
  if (null_shock) {
    c0 = pre_run.x.c;
  } else if (!(tgt.c_hat > 0.0)) {
    // No saddle path exists: keep consumption where it was and let the
    // accumulation identity fail.
    c0 = pre_run.x.c;
  } else {
    const Saddle sd = unstable_direction(xs, post, tgt.theta);
    res.unstable_eigenvalue = sd.eigenvalue;
    res.shooting_used = true;
    // +1: ĉ(0⁺) too high, −1: too low
    auto side = [&](const Run& r) -> double {
      if (r.outcome == Outcome::Failed) return 1.0;
      if (r.outcome == Outcome::Diverged || !sd.found) return r.x.c > xs.c ? 1.0 : -1.0;
      const Eigen::Vector3d d(r.x.U - xs.U, r.x.k - xs.k, r.x.c - xs.c);
      const double proj = sd.left.dot(d);
      return (proj > 0.0) == (sd.left(2) > 0.0) ? 1.0 : -1.0;
    };
    auto projection = [&](double c) {
      const Run r = run_from(c, nullptr, true);
      if (r.outcome != Outcome::Completed) return side(r) * std::numeric_limits<double>::infinity();
      const Eigen::Vector3d d(r.x.U - xs.U, r.x.k - xs.k, r.x.c - xs.c);
      return sd.left(2) > 0.0 ? sd.left.dot(d) : -sd.left.dot(d);
    };

    double lo = 0.5 * std::min(pre_run.x.c, xs.c);
    double hi = 1.5 * std::max(pre_run.x.c, xs.c);
    double plo = projection(lo);
    double phi = projection(hi);
    for (int i = 0; i < 60 && plo > 0.0; ++i) {
      lo *= 0.5;
      plo = projection(lo);
    }
    for (int i = 0; i < 60 && phi < 0.0; ++i) {
      hi *= 2.0;
      phi = projection(hi);
    }
    if (!(plo <= 0.0 && phi >= 0.0))
      throw NonConvergenceError("integrate_path: could not bracket the saddle path", 0.0);
    // Bisect until both ends complete the horizon, then let TOMS 748 finish
    // on the (continuous) unstable projection.
    int guard = 0;
    while ((std::isinf(plo) || std::isinf(phi)) && hi - lo > 1e-15 * hi && guard++ < 200) {
      const double mid = 0.5 * (lo + hi);
      const double pm = projection(mid);
      if (pm == 0.0) {
        lo = hi = mid;
        break;
      }
      (pm < 0.0 ? lo : hi) = mid;
      (pm < 0.0 ? plo : phi) = pm;
    }
    if (lo == hi || std::isinf(plo) || std::isinf(phi)) {
      c0 = 0.5 * (lo + hi);
    } else {
      // the projection is only smooth down to round-off, so stop a few ulps short
      std::uintmax_t it = 60;
      auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-14 * std::abs(b); };
      auto [a, b] = boost::math::tools::toms748_solve(projection, lo, hi, plo, phi, tol, it);
      c0 = 0.5 * (a + b);
    }
  }
  res.c_jump = c0;

  std::vector<std::pair<double, DynState>> post_trace;
  const Run fin = run_from(c0, &post_trace, false);
  if (fin.outcome == Outcome::Failed) {
    const long step = n_pre + fin.step;
    throw BlowUpError("economically unfeasible path: k_hat or c_hat left the positive orthant at step " +
                          std::to_string(step) + " (t = " + format_double(fin.t) + " months)",
                      step, fin.t);
  }
  trace.insert(trace.end(), post_trace.begin(), post_trace.end());

  const double dk = std::abs(fin.x.k - xs.k) / std::abs(xs.k);
  const double dU = std::abs(fin.x.U - xs.U) / std::abs(xs.U);
  const double dc = std::abs(fin.x.c - xs.c) / std::abs(xs.c);
  const double miss = std::max({dk, dU, dc});
  if (opt.endpoint_tol > 0.0 && !(miss < opt.endpoint_tol))
    throw NonConvergenceError("integrate_path: endpoint misses the post-shock steady state by " +
                                  format_double(miss) + " (relative)",
                              miss);

  double theta_hint = initial.theta;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i % static_cast<std::size_t>(opt.stride) != 0 && i + 1 != trace.size()) continue;
    const auto& [t, x] = trace[i];
    // the state at t_s carries the post-jump ĉ, so evaluate it with the shock in force
    const ModelParams p = params_at(pre, shock, t);
    PathPoint pt = describe(t, x, p, theta_hint);
    theta_hint = pt.theta;
    res.points.push_back(pt);
  }
  return res;
}

RegimeReport classify_automation_regime(const ModelParams& p, const ShockSpec& shock) {
  check_shock(shock);
  if (shock.kind != ShockKind::Automation)
    throw ValidationError("shock.kind", "regime classification needs an automation shock");
  const double m_dot = shock.magnitude / shock.ramp_months;
  const double h = 1e-6 * std::max(std::abs(m_dot), 1e-3);
  auto lambda_at = [&](double md) {
    TechnologyParams t = p.tech();
    t.m_dot = md;
    return effective_separation(p.match(), t);
  };
  RegimeReport r;
  r.alpha = p.tech().alpha;
  r.d_lambda_d_m_dot = (lambda_at(m_dot + h) - lambda_at(m_dot - h)) / (2.0 * h);
  r.regime = std::abs(r.d_lambda_d_m_dot) < r.alpha ? AutomationRegime::CapitalizationDominant
                                                     : AutomationRegime::DisplacementDominant;
  return r;
}

}  // namespace powereq
