#include "powereq/bargaining.hpp"

#include <cmath>

#include "powereq/errors.hpp"
#include "powereq/params.hpp"

namespace powereq {

double effective_discount(double rho, double alpha, double m_dot, double g) { return rho + alpha * m_dot - g; }

double gamma_na(double gamma_f) { return gamma_f / (1.0 + gamma_f); }

double gamma_nb(double gamma_f, double q_theta) {
  return gamma_f * (1.0 - q_theta) / (1.0 + gamma_f + q_theta * (1.0 - gamma_f));
}

double psi(double gamma, double rho_tilde, double lambda_eff, double f_theta) {
  const double d = rho_tilde + lambda_eff;
  if (!(d > 0.0))
    throw ValidationError("rho_tilde", "rho_tilde + lambda must be positive (got " + format_double(d) + ")");
  if (std::isinf(f_theta)) return 1.0;
  return gamma * (d + f_theta) / (d + gamma * f_theta);
}

double psi_n(double t_w, Tightness theta, double psi_na, double psi_nb) {
  const double th = theta.value();
  if (t_w == 0.0 && th == 0.0) throw ValidationError("t_w", "psi_n weights undefined when t_w = theta = 0");
  return (t_w * psi_nb + th * psi_na) / (t_w + th);
}

double wage_individual(double b, double psi_n, double y_l) {
  if (!(y_l > b))
    throw NoSolutionError("surplus exhausted: y_L = " + format_double(y_l) + " <= b = " + format_double(b));
  return b + psi_n * (y_l - b);
}

double wage_collective(double b, double psi_u, double y_l, double y_hat, double rho_tilde, double lambda_eff) {
  if (!(rho_tilde > 0.0))
    throw ValidationError("rho_tilde", "collective wage needs rho_tilde > 0 (got " + format_double(rho_tilde) + ")");
  if (!(y_l > b))
    throw NoSolutionError("surplus exhausted: y_L = " + format_double(y_l) + " <= b = " + format_double(b));
  return b + psi_u * (y_l - b + (rho_tilde + lambda_eff) / rho_tilde * (y_hat - y_l));
}

double wage_aggregate(double p_union, double w_n, double w_u) { return w_n + p_union * (w_u - w_n); }

double wage_premium(double psi_u, double psi_n, double y_l, double b, double y_hat, double rho_tilde,
                    double lambda_eff) {
  if (!(rho_tilde > 0.0))
    throw ValidationError("rho_tilde", "collective wage needs rho_tilde > 0 (got " + format_double(rho_tilde) + ")");
  return (psi_u - psi_n) * (y_l - b) + psi_u * (rho_tilde + lambda_eff) / rho_tilde * (y_hat - y_l);
}

BargainingPowers bargaining_powers(double gamma_f, double gamma_u, double t_w, Tightness theta, double iota,
                                   double rho_tilde, double lambda_eff) {
  BargainingPowers bp;
  const double q = q_fill(theta, iota);
  const double f = theta.value() * q;
  bp.gamma_na = gamma_na(gamma_f);
  bp.gamma_nb = gamma_nb(gamma_f, q);
  bp.psi_na = psi(bp.gamma_na, rho_tilde, lambda_eff, f);
  bp.psi_nb = psi(bp.gamma_nb, rho_tilde, lambda_eff, f);
  bp.psi_n = psi_n(t_w, theta, bp.psi_na, bp.psi_nb);
  bp.psi_u = psi(gamma_u, rho_tilde, lambda_eff, f);
  return bp;
}

}  // namespace powereq
