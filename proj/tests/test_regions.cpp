#include <gtest/gtest.h>

#include <cmath>

#include "powereq/equilibrium.hpp"
#include "powereq/errors.hpp"
#include "powereq/regions.hpp"

using namespace powereq;

namespace {

TechnologyParams base_tech() { return baseline_params().tech(); }

}  // namespace

TEST(Regions, ThresholdCapitalCost) {
  TechnologyParams t = base_tech();
  t.delta = 0.00565;
  const RegionBoundaries r = automation_region(0.35, 0.86, 0.5, t);
  EXPECT_NEAR(r.q_bar, 0.00565 * 1.5 / 0.022, 1e-15);
  EXPECT_NEAR(r.q_bar, 0.385227272727273, 1e-12);
  EXPECT_LT(r.q_min, r.q_bar);
  EXPECT_GT(r.q_max, r.q_bar);
  EXPECT_NEAR(r.q_max / r.q_min, std::exp(t.alpha), 1e-12);
}

TEST(Regions, CurvesVanishAtThreshold) {
  const TechnologyParams t = base_tech();
  const double mu = 0.368;
  const double qb = automation_region(0.35, 0.86, mu, t).q_bar;
  const RegionBoundaries r = automation_region(qb, 0.86, mu, t);
  EXPECT_NEAR(r.m_bar, 0.0, 1e-12);
  EXPECT_NEAR(r.m_tilde, 0.0, 1e-12);
  EXPECT_NEAR(r.m_bar_exact, 0.0, 1e-12);
  EXPECT_NEAR(r.m_tilde_exact, 0.0, 1e-12);
}

TEST(Regions, BaselineIsRegionTwo) {
  const ModelParams p = baseline_params();
  const SteadyState ss = solve_steady(p);
  EXPECT_EQ(automation_region(p.tech().q_rel, p.tech().m, ss.mu, p.tech()).region, 2);
  // Table average automation with a range of plausible returns
  for (double mu : {0.3, 0.368, 0.45, 0.55}) EXPECT_EQ(automation_region(0.35, 0.88, mu, p.tech()).region, 2);
}

TEST(Regions, CurvesMonotoneOnTheirBranches) {
  const TechnologyParams t = base_tech();
  const double mu = 0.368;
  const RegionBoundaries r0 = automation_region(0.35, 0.86, mu, t);
  double prev_bar = 2.0, prev_bar_x = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double q = r0.q_min + (r0.q_bar - r0.q_min) * i / 200.0;
    const RegionBoundaries r = automation_region(q, 0.86, mu, t);
    EXPECT_LT(r.m_bar, prev_bar);
    EXPECT_LT(r.m_bar_exact, prev_bar_x);
    prev_bar = r.m_bar;
    prev_bar_x = r.m_bar_exact;
  }
  double prev_tilde = -1.0, prev_tilde_x = -1.0;
  for (int i = 1; i <= 200; ++i) {
    const double q = r0.q_bar + (r0.q_max - r0.q_bar) * i / 200.0;
    const RegionBoundaries r = automation_region(q, 0.86, mu, t);
    EXPECT_GT(r.m_tilde, prev_tilde);
    EXPECT_GT(r.m_tilde_exact, prev_tilde_x);
    prev_tilde = r.m_tilde;
    prev_tilde_x = r.m_tilde_exact;
  }
}

TEST(Regions, ExactCurvesReachUnityAtEnds) {
  const TechnologyParams t = base_tech();
  const RegionBoundaries r0 = automation_region(0.35, 0.86, 0.368, t);
  EXPECT_NEAR(automation_region(r0.q_min, 0.86, 0.368, t).m_bar_exact, 1.0, 1e-9);
  EXPECT_NEAR(automation_region(r0.q_max, 0.86, 0.368, t).m_tilde_exact, 1.0, 1e-9);
}

TEST(Regions, TaylorCurvesNearUnityForMildCurvature) {
  // second-order curves stay within 0.05 of the exact endpoint when α(σ−1) is small
  TechnologyParams t = base_tech();
  t.sigma = 0.9;
  const RegionBoundaries r0 = automation_region(0.35, 0.86, 0.368, t);
  EXPECT_NEAR(automation_region(r0.q_min, 0.86, 0.368, t).m_bar, 1.0, 0.05);
  EXPECT_NEAR(automation_region(r0.q_max, 0.86, 0.368, t).m_tilde, 1.0, 0.05);
}

TEST(Regions, Classification) {
  const TechnologyParams t = base_tech();
  const RegionBoundaries r0 = automation_region(0.35, 0.86, 0.368, t);
  const double q_low = r0.q_min + 0.1 * (r0.q_bar - r0.q_min);
  const double q_high = r0.q_bar + 0.9 * (r0.q_max - r0.q_bar);
  EXPECT_EQ(automation_region(q_low, 0.05, 0.368, t).region, 1);
  EXPECT_EQ(automation_region(q_high, 0.05, 0.368, t).region, 3);
  EXPECT_EQ(automation_region(q_low, 0.99, 0.368, t).region, 2);
}

TEST(Regions, Validation) {
  TechnologyParams t = base_tech();
  const RegionBoundaries r0 = automation_region(0.35, 0.86, 0.368, t);
  EXPECT_THROW(automation_region(0.5 * r0.q_min, 0.86, 0.368, t), ValidationError);
  EXPECT_THROW(automation_region(2.0 * r0.q_max, 0.86, 0.368, t), ValidationError);
  t.sigma = 1.0;
  EXPECT_THROW(automation_region(0.35, 0.86, 0.368, t), ValidationError);
}
