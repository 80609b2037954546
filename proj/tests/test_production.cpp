#include <gtest/gtest.h>

#include <cmath>

#include "powereq/equilibrium.hpp"
#include "powereq/errors.hpp"
#include "powereq/params.hpp"
#include "powereq/production.hpp"

using namespace powereq;

namespace {

TechnologyParams tech(double sigma = 0.6, double m = 0.86) {
  TechnologyParams t = baseline_params().tech();
  t.sigma = sigma;
  t.m = m;
  return t;
}

// midpoint-rule ∫_0^m e^{α(σ−1)i} di
double integral_oracle(double m, double sigma, double alpha) {
  const int n = 20000;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::exp(alpha * (sigma - 1.0) * (i + 0.5) * m / n);
  return s * m / n;
}

}  // namespace

TEST(TaskIntegral, Limits) {
  EXPECT_DOUBLE_EQ(task_integral(0.0, 0.6, 1.4), 0.0);
  EXPECT_NEAR(task_integral(0.88, 1.0, 1.4), 0.88, 1e-15);
  EXPECT_NEAR(task_integral(0.88, 1.0 + 1e-9, 1.4), 0.88, 1e-8);
  // 30-digit evaluation of (e^{-0.4928} - 1)/(-0.56)
  EXPECT_NEAR(task_integral(0.88, 0.6, 1.4), 0.694797429399398, 1e-14);
}

TEST(TaskIntegral, MatchesQuadrature) {
  for (double s : {0.3, 0.6, 0.999999, 1.2, 2.5})
    for (double m : {0.1, 0.5, 0.88}) EXPECT_NEAR(task_integral(m, s, 1.4), integral_oracle(m, s, 1.4), 1e-9);
}

TEST(Output, EulerIdentityOnGrid) {
  for (double s : {0.6, 1.0, 1.2})
    for (int i = 0; i < 100; ++i) {
      const double k = 0.1 * std::pow(1.08, i);
      const ProductionPoint p = y_hat(k, tech(s));
      EXPECT_NEAR(k * p.y_k + p.y_l, p.y_hat, 1e-10 * p.y_hat) << "sigma=" << s << " k=" << k;
      EXPECT_GT(p.y_hat, 0.0);
      EXPECT_GT(p.y_k, 0.0);
      EXPECT_GT(p.y_l, 0.0);
    }
}

TEST(Output, MarginalProductMatchesFiniteDifference) {
  const TechnologyParams t = tech();
  const double k = 13.0, h = 1e-5;
  const double fd = (y_hat(k + h, t).y_hat - y_hat(k - h, t).y_hat) / (2 * h);
  EXPECT_NEAR(y_hat(k, t).y_k, fd, 1e-9);
}

TEST(Output, NoAutomationCollapsesToCapital) {
  const TechnologyParams t = tech(0.6, 0.0);
  const ProductionPoint p = y_hat(5.0, t);
  EXPECT_DOUBLE_EQ(p.y_hat, t.a_k * 5.0);
  EXPECT_DOUBLE_EQ(p.y_k, t.a_k);
  // continuity from small m
  EXPECT_NEAR(y_hat(5.0, tech(0.6, 1e-9)).y_k, t.a_k, 1e-6);
}

TEST(Output, HomogeneityAndConcavity) {
  const TechnologyParams t = tech();
  const ProductionPoint a = y_hat(10.0, t);
  const ProductionPoint b = y_hat(20.0, t);
  EXPECT_LT(b.y_hat, 2.0 * a.y_hat);
  EXPECT_GT(b.y_l, a.y_l);
  EXPECT_LT(b.y_k, a.y_k);
}

TEST(Output, RejectsDegenerateInputs) {
  EXPECT_THROW(y_hat(0.0, tech()), ValidationError);
  EXPECT_THROW(y_hat(1.0, tech(0.6, 1.0)), ValidationError);
}

TEST(LaborShare, Limits) {
  const TechnologyParams t = tech();
  EXPECT_LT(labor_share(1e9, 10.0, t), 1e-9);
  // capital term vanishes as k -> 0 when tasks are gross substitutes
  const TechnologyParams t2 = tech(1.2);
  EXPECT_NEAR(labor_share(0.3, 1e-12, t2), 1.0 / 1.3, 1e-3);
  // with complements capital becomes the bottleneck and the share vanishes instead
  EXPECT_LT(labor_share(0.3, 1e-12, t), 1e-3);
}

TEST(LaborShare, ConsistentWithOutputSplit) {
  const TechnologyParams t = tech();
  for (double k : {2.0, 10.0, 40.0})
    for (double mu : {0.1, 0.45}) {
      const ProductionPoint p = y_hat(k, t);
      EXPECT_NEAR(labor_share(mu, k, t), p.y_l / (1.0 + mu) / p.y_hat, 1e-12);
    }
}

TEST(LaborShare, TableAveragesAtRateOfReturn) {
  // k chosen so that q·y_k = δ(1+μ) at μ = 0.45, average automation 0.88
  const TechnologyParams t = tech(0.6, 0.88);
  const double k = k_of_mu(0.45, t);
  EXPECT_NEAR(t.q_rel * y_hat(k, t).y_k, t.delta * 1.45, 1e-14);
  const double share = labor_share(0.45, k, t);
  EXPECT_GE(share, 0.60);
  EXPECT_LE(share, 0.66);
}

TEST(TechUnemployment, NoChangeNoDisplacement) {
  const auto u = tech_unemployment(0.95, 0.86, 0.0, 0.0, tech());
  EXPECT_DOUBLE_EQ(u.displaced, 0.0);
}

TEST(TechUnemployment, GrowthExample) {
  const TechnologyParams t = tech();
  const auto u = tech_unemployment(0.9, 0.86, 0.0, 0.0017 / 1.4, t);
  EXPECT_NEAR(u.per_worker, 6.79768852396426e-4, 1e-15);
  EXPECT_NEAR(u.per_worker, -std::expm1((0.6 - 1.0) * 0.0017), 1e-16);
  EXPECT_NEAR(u.displaced, 0.9 * u.per_worker, 1e-18);
  EXPECT_LT(tech_unemployment(0.9, 0.86, 0.0, 0.0017 / 1.4, tech(1.2)).per_worker, 0.0);
}

TEST(TechUnemployment, RejectsSingularAndOutOfRange) {
  EXPECT_THROW(tech_unemployment(0.9, 0.0, 0.0, 0.001, tech()), ValidationError);
  EXPECT_THROW(tech_unemployment(1.1, 0.5, 0.0, 0.001, tech()), ValidationError);
  EXPECT_THROW(tech_unemployment(0.9, 0.9, 0.2, 0.001, tech()), ValidationError);
}

TEST(Separation, EffectiveRate) {
  MatchingParams mt = baseline_params().match();
  TechnologyParams t = tech();
  EXPECT_NEAR(effective_separation(mt, t), 0.0206797688523964, 1e-15);
  t.g = 0.0;
  EXPECT_DOUBLE_EQ(effective_separation(mt, t), mt.lambda0);
  t = tech(1.2);
  EXPECT_LT(effective_separation(mt, t), mt.lambda0);
}

TEST(Separation, SlopeMatchesFiniteDifference) {
  TechnologyParams t = tech();
  const MatchingParams mt = baseline_params().match();
  const double h = 1e-6;
  TechnologyParams up = t, dn = t;
  up.m_dot = h;
  dn.m_dot = -h;
  const double fd = (effective_separation(mt, up) - effective_separation(mt, dn)) / (2 * h);
  EXPECT_NEAR(separation_slope_m_dot(t), fd, 1e-7);
}
