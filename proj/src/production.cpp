#include "powereq/production.hpp"

#include <cmath>

#include "powereq/errors.hpp"

namespace powereq {

namespace {

bool unit_sigma(double sigma) { return std::abs(sigma - 1.0) < kUnitSigmaBand; }

// E(x) = (e^{ax} − 1)/a, with the series near a = 0
double scaled_expm1(double a, double x) {
  const double ax = a * x;
  if (std::abs(ax) < 1e-5) return x * (1.0 + ax / 2.0 + ax * ax / 6.0 + ax * ax * ax / 24.0);
  return std::expm1(ax) / a;
}

}  // namespace

double task_integral(double m, double sigma, double alpha) {
  if (unit_sigma(sigma)) {
    const double am = alpha * (sigma - 1.0) * m;
    return m * (1.0 + am / 2.0 + am * am / 6.0);
  }
  return scaled_expm1(alpha * (sigma - 1.0), m);
}

ProductionPoint y_hat(double k_hat, const TechnologyParams& tech) {
  if (!(k_hat > 0.0) || !std::isfinite(k_hat))
    throw ValidationError("k_hat", "k_hat must be positive (got " + format_double(k_hat) + ")");
  const double s = tech.sigma;
  const double m = tech.m;
  const double A = tech.a_k;
  if (m >= 1.0 && s < 1.0)
    throw ValidationError("m", "m = 1 with sigma < 1 leaves no capital tasks (degenerate economy)");

  ProductionPoint p;
  p.k_hat = k_hat;
  if (m <= 0.0) {
    p.y_hat = A * k_hat;
    p.y_k = A;
    p.y_l = 0.0;
    return p;
  }
  if (unit_sigma(s)) {
    const double y = std::exp((1.0 - m) * std::log(A * k_hat / (1.0 - m)) - m * std::log(m));
    p.y_hat = y;
    p.y_k = (1.0 - m) * y / k_hat;
    p.y_l = m * y;
    return p;
  }
  const double r = (s - 1.0) / s;
  const double B = task_integral(m, s, tech.alpha);
  const double cap = std::pow(1.0 - m, 1.0 / s) * std::pow(A * k_hat, r);
  const double lab = std::pow(B, 1.0 / s);
  const double y = std::pow(cap + lab, 1.0 / r);
  p.y_hat = y;
  p.y_k = std::pow(y / k_hat, 1.0 / s) * std::pow(1.0 - m, 1.0 / s) * std::pow(A, r);
  // y_L from the labor term directly avoids cancellation in ŷ − k̂ŷ_k̂
  p.y_l = y * lab / (cap + lab);
  return p;
}

double labor_share(double mu, double k_hat, const TechnologyParams& tech) {
  if (!(mu > -1.0)) throw ValidationError("mu", "mu must exceed -1 (got " + format_double(mu) + ")");
  if (!(k_hat > 0.0)) throw ValidationError("k_hat", "k_hat must be positive (got " + format_double(k_hat) + ")");
  const double s = tech.sigma;
  const double B = task_integral(tech.m, s, tech.alpha);
  if (B == 0.0) return 0.0;
  const double ratio = unit_sigma(s) ? (1.0 - tech.m) / B
                                     : std::pow((1.0 - tech.m) / B, 1.0 / s) *
                                           std::pow(tech.a_k * k_hat, (s - 1.0) / s);
  return 1.0 / ((1.0 + mu) * (1.0 + ratio));
}

TechUnemployment tech_unemployment(double L, double m, double m_dot, double M_dot, const TechnologyParams& tech) {
  if (!(L >= 0.0 && L <= 1.0)) throw ValidationError("L", "L must lie in [0,1] (got " + format_double(L) + ")");
  if (!(m + m_dot >= 0.0 && m + m_dot <= 1.0))
    throw ValidationError("m_dot", "m + m_dot must lie in [0,1] (got " + format_double(m + m_dot) + ")");
  if (m <= 0.0) throw ValidationError("m", "technological unemployment is singular at m = 0");
  const double a = tech.alpha * (tech.sigma - 1.0);
  const double ratio = scaled_expm1(a, m + m_dot) / scaled_expm1(a, m);
  TechUnemployment out;
  // 1 − e^{a(Ṁ−ṁ)}·ratio, written to keep precision when the product is near 1
  const double log_prod = a * (M_dot - m_dot) + std::log(ratio);
  out.per_worker = -std::expm1(log_prod);
  out.displaced = L * out.per_worker;
  return out;
}

double effective_separation(const MatchingParams& match, const TechnologyParams& tech) {
  const double M_dot = tech.g / tech.alpha;
  return match.lambda0 + tech_unemployment(1.0, tech.m, tech.m_dot, M_dot, tech).per_worker;
}

double separation_slope_m_dot(const TechnologyParams& tech) {
  if (tech.m <= 0.0) throw ValidationError("m", "separation slope is singular at m = 0");
  const double a = tech.alpha * (tech.sigma - 1.0);
  const double M_dot = tech.g / tech.alpha;
  const double E = scaled_expm1(a, tech.m);
  return -std::exp(a * (M_dot - tech.m_dot)) / E;
}

}  // namespace powereq
