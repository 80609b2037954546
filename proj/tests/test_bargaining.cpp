#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "powereq/bargaining.hpp"
#include "powereq/errors.hpp"
#include "powereq/matching.hpp"

using namespace powereq;

namespace {

// Firm's best offer under alternating moves with a worker replacement lag T = 1/q:
// M = S(T+1)/(T(1+γ)+(1−γ)); the worker keeps 1 − M/S.
double gamma_nb_oracle(double gamma_f, double q) {
  const double T = 1.0 / q;
  return 1.0 - (T + 1.0) / (T * (1.0 + gamma_f) + (1.0 - gamma_f));
}

}  // namespace

TEST(Gamma, NoBreakdownShare) {
  EXPECT_NEAR(gamma_na(0.45), 0.310344827586207, 1e-15);
  EXPECT_DOUBLE_EQ(gamma_na(1.0), 0.5);
  EXPECT_NEAR(gamma_na(1e-12), 0.0, 1e-12);
}

TEST(Gamma, BreakdownShare) {
  EXPECT_DOUBLE_EQ(gamma_nb(0.45, 1.0), 0.0);
  EXPECT_NEAR(gamma_nb(0.45, 0.0), gamma_na(0.45), 1e-15);
  EXPECT_NEAR(gamma_nb(0.45, 0.574349177498517), 0.108468051817418, 1e-15);
  for (double g : {0.1, 0.45, 0.9})
    for (double q : {0.05, 0.3, 0.574349177498517, 0.95}) EXPECT_NEAR(gamma_nb(g, q), gamma_nb_oracle(g, q), 1e-14);
}

TEST(Psi, Kernel) {
  EXPECT_DOUBLE_EQ(psi(0.3, 0.02, 0.02, 0.0), 0.3);
  EXPECT_DOUBLE_EQ(psi(0.3, 0.02, 0.02, INFINITY), 1.0);
  EXPECT_NEAR(psi(0.3, 0.02, 0.02, 1e12), 1.0, 1e-9);
  EXPECT_NEAR(psi(0.3103, 0.0436 - 0.0207, 0.0207, 0.4), 0.820707607917959, 1e-12);
  EXPECT_THROW(psi(0.3, -0.05, 0.02, 0.4), ValidationError);
}

TEST(Psi, MixtureLimits) {
  const double na = 0.8, nb = 0.4;
  EXPECT_DOUBLE_EQ(psi_n(0.0, Tightness(0.6), na, nb), na);
  EXPECT_DOUBLE_EQ(psi_n(4.0, Tightness(0.0), na, nb), nb);
  EXPECT_THROW(psi_n(0.0, Tightness(0.0), na, nb), ValidationError);
}

TEST(Psi, MobilityDerivative) {
  const double rt = 0.0022, lam = 0.0207, iota = 1.25;
  const double tw = 4.0, th = 0.6;
  auto at = [&](double t) { return bargaining_powers(0.45, 0.5, t, Tightness(th), iota, rt, lam); };
  const BargainingPowers bp = at(tw);
  const double closed = (bp.psi_nb - bp.psi_n) / (tw + th);
  const double h = 1e-6;
  const double fd = (at(tw + h).psi_n - at(tw - h).psi_n) / (2 * h);
  EXPECT_NEAR(fd, closed, 1e-9);
  EXPECT_LE(closed, 0.0);
}

TEST(Psi, OrderingOnRandomInputs) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double gf = 0.01 + 2.0 * U(rng);
    const double th = 1e-4 + 20.0 * U(rng);
    const double tw = 20.0 * U(rng);
    const double rt = 1e-4 + 0.05 * U(rng);
    const double lam = 1e-3 + 0.05 * U(rng);
    const BargainingPowers bp = bargaining_powers(gf, 0.5, tw, Tightness(th), 1.25, rt, lam);
    EXPECT_LE(bp.psi_nb, bp.psi_n + 1e-15);
    EXPECT_LE(bp.psi_n, bp.psi_na + 1e-15);
  }
}

TEST(Wages, Individual) {
  EXPECT_DOUBLE_EQ(wage_individual(0.06, 0.0, 1.0), 0.06);
  EXPECT_DOUBLE_EQ(wage_individual(0.06, 1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(wage_individual(0.06, 0.5, 1.0), 0.53);
  EXPECT_THROW(wage_individual(1.0, 0.5, 1.0), NoSolutionError);
}

TEST(Wages, Collective) {
  EXPECT_DOUBLE_EQ(wage_collective(0.06, 0.7, 1.0, 1.0, 0.002, 0.02), wage_individual(0.06, 0.7, 1.0));
  EXPECT_DOUBLE_EQ(wage_collective(0.06, 0.0, 1.0, 1.6, 0.002, 0.02), 0.06);
  // b + Ψ(y_L − b + (ρ̃+λ)/ρ̃·(ŷ − y_L)), exceeds ŷ
  const double w = wage_collective(0.06, 0.8, 1.0, 1.6, 0.0022, 0.0207);
  EXPECT_NEAR(w, 5.80836363636364, 1e-12);
  EXPECT_GT(w, 1.6);
  EXPECT_THROW(wage_collective(0.06, 0.8, 1.0, 1.6, 0.0, 0.0207), ValidationError);
}

TEST(Wages, AggregateAndPremium) {
  EXPECT_DOUBLE_EQ(wage_aggregate(0.0, 0.5, 0.7), 0.5);
  EXPECT_DOUBLE_EQ(wage_aggregate(1.0, 0.5, 0.7), 0.7);
  EXPECT_NEAR(wage_aggregate(0.25, 0.5, 0.7), 0.55, 1e-15);
  EXPECT_DOUBLE_EQ(wage_premium(0.5, 0.5, 1.0, 0.06, 1.0, 0.0022, 0.0207), 0.0);
  EXPECT_NEAR(wage_premium(0.5, 0.5, 1.0, 0.06, 1.6, 0.0022, 0.0207), 3.12272727272727, 1e-12);
}

TEST(Wages, PremiumIsCollectiveMinusIndividual) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double b = 0.1 * U(rng), yl = 0.2 + U(rng), yh = yl + U(rng);
    const double pu = U(rng), pn = U(rng), rt = 1e-3 + 0.05 * U(rng), lam = 0.01 + 0.02 * U(rng);
    const double diff = wage_collective(b, pu, yl, yh, rt, lam) - wage_individual(b, pn, yl);
    EXPECT_NEAR(wage_premium(pu, pn, yl, b, yh, rt, lam), diff, 1e-12 * std::max(1.0, std::abs(diff)));
  }
}

TEST(Discount, Effective) {
  EXPECT_DOUBLE_EQ(effective_discount(0.0222, 1.4, 0.0, 0.0017), 0.0222 - 0.0017);
  EXPECT_DOUBLE_EQ(effective_discount(0.0222, 1.4, 0.001, 0.0), 0.0222 + 0.0014);
}
