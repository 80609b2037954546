#include "powereq/regions.hpp"

#include <cmath>
#include <cstdint>
#include <boost/math/tools/toms748_solve.hpp>

#include "powereq/errors.hpp"
#include "powereq/production.hpp"

namespace powereq {

namespace {

// Solves 1 − m + E_c(m) = target on [0,1] where E_c(m) = (e^{cm} − 1)/c.
// The left side is monotone in m; returns 0 or 1 at the clamps.
double exact_curve(double c, double target) {
  auto h = [&](double m) {
    const double e = std::abs(c * m) < 1e-8 ? m * (1.0 + c * m / 2.0) : std::expm1(c * m) / c;
    return 1.0 - m + e - target;
  };
  const double h0 = h(0.0);
  const double h1 = h(1.0);
  if (h0 == 0.0 || h0 * h1 > 0.0) return std::abs(h0) <= std::abs(h1) ? 0.0 : 1.0;
  if (h1 == 0.0) return 1.0;
  std::uintmax_t it = 200;
  auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-15; };
  auto [a, b] = boost::math::tools::toms748_solve(h, 0.0, 1.0, h0, h1, tol, it);
  return 0.5 * (a + b);
}

}  // namespace

RegionBoundaries automation_region(double q_rel, double m, double mu, const TechnologyParams& t) {
  const double s = t.sigma;
  if (std::abs(s - 1.0) < kUnitSigmaBand)
    throw ValidationError("sigma", "automation regions are undefined at sigma = 1");
  if (!(mu > -1.0)) throw ValidationError("mu", "mu must exceed -1 (got " + format_double(mu) + ")");
  if (!(q_rel > 0.0)) throw ValidationError("q_rel", "q_rel must be positive (got " + format_double(q_rel) + ")");

  RegionBoundaries rb;
  rb.q_bar = t.delta * (1.0 + mu) / t.a_k;
  rb.q_min = rb.q_bar * std::pow(task_integral(1.0, s, t.alpha), 1.0 / (1.0 - s));
  rb.q_max = rb.q_min * std::exp(t.alpha);
  const double slack = 1e-12 * rb.q_max;
  if (q_rel < rb.q_min - slack || q_rel > rb.q_max + slack)
    throw ValidationError("q_rel", "region undefined: q = " + format_double(q_rel) + " outside [" +
                                       format_double(rb.q_min) + ", " + format_double(rb.q_max) + "]");

  const double rpow = std::pow(rb.q_bar / q_rel, s - 1.0);
  const double a = t.alpha * (s - 1.0);
  const double bar_sq = 2.0 * (1.0 - rpow) / (t.alpha * (1.0 - s));
  const double tilde_sq = 2.0 * (1.0 - rpow) / (t.alpha * (s - 1.0));
  if (q_rel <= rb.q_bar) {
    rb.m_bar = std::sqrt(std::max(0.0, bar_sq));
    rb.m_bar_exact = exact_curve(a, rpow);
  }
  if (q_rel >= rb.q_bar) {
    rb.m_tilde = std::sqrt(std::max(0.0, tilde_sq));
    rb.m_tilde_exact = exact_curve(-a, rpow);
  }

  if (q_rel <= rb.q_bar && m <= rb.m_bar)
    rb.region = 1;
  else if (q_rel > rb.q_bar && m <= rb.m_tilde)
    rb.region = 3;
  else
    rb.region = 2;
  return rb;
}

}  // namespace powereq
