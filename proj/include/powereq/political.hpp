#pragma once

#include <array>
#include <vector>

namespace powereq {

using Payoff2x2 = std::array<std::array<double, 2>, 2>;

/// Worker–government game. u_w[j][i]: worker payoff when the government plays
/// S = j+1 and workers choose 𝒰 = i+1. u_g[j][i]: government payoff for the
/// same cell.
struct PoliticalGame {
  Payoff2x2 u_w{};
  Payoff2x2 u_g{};
  double lambda_w = 0.0;
  double lambda_g = 0.0;
};

struct QreSolution {
  double p_union = 0.5;    // P(𝒰 = 1)
  double p_support = 0.5;  // P^G(S = 1)
  double residual = 0.0;
  int iterations = 0;
};

struct QreOptions {
  double damping = 0.5;
  int max_iter = 10000;
  double tol = 1e-13;
};

void validate_game(const PoliticalGame& g);

/// One application of both logit maps to (p_union, p_support).
std::array<double, 2> logit_response(const PoliticalGame& g, double p_union, double p_support);

/// Damped iteration from (0.5, 0.5).
QreSolution solve_qre(const PoliticalGame& g, const QreOptions& opt = {});

/// Game family whose government row S = 1 shifts by slope·φ:
/// u_g(φ) = u_g + φ·g_slope, u_w(φ) = u_w + φ·w_slope.
struct ThreatFamily {
  PoliticalGame base;
  Payoff2x2 w_slope{};
  Payoff2x2 g_slope{};

  PoliticalGame at(double phi) const;
};

/// Illustrative payoffs: U^{1,1}_W = 1 + 0.75φ, other worker
/// cells 1, λ^W = 6; U^{1,1}_G = 0.5 + 0.5φ, U^{1,2}_G = 0.3 + 0.5φ,
/// U^{2,1}_G = 0.3, U^{2,2}_G = 0.5, λ^G = 11.
ThreatFamily illustrative_threat_family();

struct SweepRow {
  double phi = 0.0;
  QreSolution qre;
  std::array<double, 4> joint{};  // (𝒰,S) = (1,1), (1,2), (2,1), (2,2)
};

std::vector<SweepRow> threat_sweep(const ThreatFamily& family, const std::vector<double>& phi_grid,
                                   const QreOptions& opt = {});

}  // namespace powereq
