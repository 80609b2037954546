#pragma once

#include "powereq/matching.hpp"

namespace powereq {

struct BargainingPowers {
  double gamma_na = 0.0;
  double gamma_nb = 0.0;
  double psi_na = 0.0;
  double psi_nb = 0.0;
  double psi_n = 0.0;
  double psi_u = 0.0;
};

/// ρ̃ = ρ + αṁ − g.
double effective_discount(double rho, double alpha, double m_dot, double g);

double gamma_na(double gamma_f);
double gamma_nb(double gamma_f, double q_theta);

/// Ψ = Γ(ρ̃+λ+f)/(ρ̃+λ+Γf); one kernel for Ψ^na, Ψ^nb and Ψ^u.
double psi(double gamma, double rho_tilde, double lambda_eff, double f_theta);

/// (T^w Ψ^nb + θ Ψ^na)/(T^w + θ).
double psi_n(double t_w, Tightness theta, double psi_na, double psi_nb);

double wage_individual(double b, double psi_n, double y_l);
double wage_collective(double b, double psi_u, double y_l, double y_hat, double rho_tilde, double lambda_eff);
double wage_aggregate(double p_union, double w_n, double w_u);
double wage_premium(double psi_u, double psi_n, double y_l, double b, double y_hat, double rho_tilde,
                    double lambda_eff);

/// All powers at one labor-market state.
BargainingPowers bargaining_powers(double gamma_f, double gamma_u, double t_w, Tightness theta, double iota,
                                   double rho_tilde, double lambda_eff);

}  // namespace powereq
