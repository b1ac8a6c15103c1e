// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "splitcc/estimator.hpp"
#include "splitcc/noise.hpp"

namespace splitcc {
namespace {

struct CountRow {
  int electrons, orbitals;
  long long tccsd, eccc;
};

// Published overlap counts per active space (electrons, spatial orbitals).
const CountRow kCounts[] = {
    {2, 2, 4, 4},           {4, 4, 27, 36},          {4, 6, 93, 225},
    {6, 6, 118, 381},       {4, 8, 199, 784},        {6, 8, 316, 2436},
    {8, 8, 361, 3355},      {10, 10, 876, 21126},    {12, 10, 805, 17255},
    {12, 12, 1819, 98694},  {10, 14, 2836, 243376},  {6, 16, 2068, 97956},
    {8, 16, 3193, 285255},  {10, 16, 4236, 555336},  {12, 16, 5071, 840796},
};

TEST(CountOverlaps, PublishedTable) {
  for (const auto& r : kCounts) {
    const int z = r.electrons / 2;
    EXPECT_EQ(count_overlaps(r.orbitals, z, z, SplitMethod::tccsd), r.tccsd);
    EXPECT_EQ(count_overlaps(r.orbitals, z, z, SplitMethod::eccc), r.eccc);
  }
}

TEST(CountOverlaps, BruteForceSmall) {
  // Direct count of determinants within rank 2 / rank 4 of the reference.
  for (int n = 1; n <= 6; ++n)
    for (int za = 0; za <= n; ++za)
      for (int zb = 0; zb <= n; ++zb) {
        long long t = 0, e = 0;
        for (unsigned a = 0; a < (1u << n); ++a)
          for (unsigned b = 0; b < (1u << n); ++b) {
            if (std::popcount(a) != za || std::popcount(b) != zb) continue;
            const unsigned ra = (1u << za) - 1, rb = (1u << zb) - 1;
            const int rank = (std::popcount(a ^ ra) + std::popcount(b ^ rb)) / 2;
            t += rank <= 2;
            e += rank <= 4;
          }
        ASSERT_EQ(count_overlaps(n, za, zb, SplitMethod::tccsd), t);
        ASSERT_EQ(count_overlaps(n, za, zb, SplitMethod::eccc), e);
      }
  EXPECT_THROW(count_overlaps(2, 3, 1, SplitMethod::tccsd), std::invalid_argument);
}

TEST(Prefactor, LinearMapAndFloor) {
  EXPECT_NEAR(prefactor_from_t1diag(0.003971), 0.6526989, 1e-12);
  EXPECT_NEAR(prefactor_from_t1diag(0.046208), 16.5295872, 1e-9);
  EXPECT_EQ(prefactor_from_t1diag(0.0), kPrefactorFloor);
  EXPECT_THROW(prefactor_from_t1diag(-1e-3), std::invalid_argument);
}

TEST(PredictError, LinearInSigma) {
  EXPECT_EQ(predict_error(1.0, 118, 56, 0.0), 0.0);
  EXPECT_NEAR(predict_error(2.0, 118, 56, 2e-3), 4.0 * predict_error(1.0, 118, 56, 1e-3),
              1e-18);
}

ShotBudgetQuery query(double t1) {
  ShotBudgetQuery q;
  q.t1_diag = t1;
  q.target_error = 1e-3;
  q.d = 118;
  q.N = 56;
  q.n = 12;
  return q;
}

// The error predicted at the shot-derived sigma equals the target.
TEST(ShotBudget, RoundTrip) {
  for (double t1 : {0.0, 0.004, 0.02, 0.05}) {
    const ShotBudgetQuery q = query(t1);
    const ShotBudget b = shot_budget(q);
    const double sigma = std::sqrt(variance_from_shots(q.n, b.s_exact));
    EXPECT_NEAR(predict_error(b.a, q.d, q.N, sigma), q.target_error, 1e-12);
    EXPECT_EQ(b.s, static_cast<long long>(std::ceil(b.s_exact - 1e-9 * b.s_exact)));
  }
}

TEST(ShotBudget, Monotonicity) {
  ShotBudgetQuery q = query(0.01);
  const double s1 = shot_budget(q).s_exact;
  q.target_error = 1e-2;
  EXPECT_NEAR(shot_budget(q).s_exact, s1 / 100.0, 1e-9 * s1);
  q = query(0.01);
  double prev = 0.0;
  for (double t1 : {0.003, 0.005, 0.01, 0.02, 0.04}) {
    q.t1_diag = t1;
    const double s = shot_budget(q).s_exact;
    EXPECT_GT(s, prev);
    prev = s;
  }
  const ShotBudget b = shot_budget(query(0.02));
  EXPECT_LT(b.s_low, b.s);
  EXPECT_GT(b.s_high, b.s);
}

TEST(ShotBudget, Preconditions) {
  ShotBudgetQuery q = query(0.01);
  q.assume_half_filling = false;
  EXPECT_THROW(shot_budget(q), std::invalid_argument);
  q = query(0.01);
  q.target_error = 0.0;
  EXPECT_THROW(shot_budget(q), std::invalid_argument);
  q = query(0.01);
  q.n = 0;
  EXPECT_THROW(shot_budget(q), std::invalid_argument);
}

TEST(CurveBudget, SumsRows) {
  const CurveBudget one = total_curve_budget({0.01}, 118, 56, 12, 1e-3);
  EXPECT_EQ(one.total, shot_budget(query(0.01)).s);
  const CurveBudget zeros = total_curve_budget({0.0, 0.0}, 118, 56, 12, 1e-3);
  EXPECT_EQ(zeros.rows[0].a, kPrefactorFloor);
  EXPECT_GT(zeros.total, 0);
  EXPECT_EQ(zeros.total, 2 * zeros.rows[0].s);
}

std::vector<PowerLawRecord> synthetic(double a, double beta, double gamma) {
  std::vector<PowerLawRecord> out;
  int k = 0;
  for (double d : {4.0, 27.0, 118.0, 361.0})
    for (double N : {8.0, 20.0, 56.0}) {
      const double sigma = 1e-3 * (1 + k % 3);
      const std::string label = "m" + std::to_string(k % 4);
      out.push_back({label, d, N, sigma, a * std::pow(d, beta) * std::pow(N, gamma) * sigma});
      ++k;
    }
  return out;
}

TEST(FitPowerLaw, NoiselessRecovery) {
  const PowerLawModel m = fit_power_law(synthetic(2.0, 0.3, -1.0), 200, 3);
  EXPECT_NEAR(m.beta, 0.3, 1e-10);
  EXPECT_NEAR(m.gamma, -1.0, 1e-10);
  EXPECT_NEAR(m.a_global, 2.0, 1e-9);
  for (const auto& [label, a] : m.per_label_prefactors) EXPECT_NEAR(a, 2.0, 1e-9);
  EXPECT_LT(m.beta_err, 1e-8);
}

TEST(FitPowerLaw, ScaleEquivariance) {
  auto recs = synthetic(2.0, 0.3, -1.0);
  // Perturb so the fit is not exact.
  for (std::size_t k = 0; k < recs.size(); ++k) recs[k].mean_abs_error *= 1.0 + 0.1 * std::sin(k);
  const PowerLawModel m = fit_power_law(recs, 100, 1);
  for (auto& r : recs) r.mean_abs_error *= 7.0;
  const PowerLawModel s = fit_power_law(recs, 100, 1);
  EXPECT_NEAR(s.beta, m.beta, 1e-10);
  EXPECT_NEAR(s.gamma, m.gamma, 1e-10);
  EXPECT_NEAR(s.a_global, 7.0 * m.a_global, 1e-9 * s.a_global);
  for (const auto& [label, a] : m.per_label_prefactors) {
    EXPECT_NEAR(s.per_label_prefactors.at(label), 7.0 * a, 1e-9 * a);
  }
  EXPECT_GT(m.beta_err, 0.0);
}

TEST(FitPowerLaw, SingleLabelConsistency) {
  auto recs = synthetic(2.0, 0.3, -1.0);
  for (auto& r : recs) r.label = "only";
  for (std::size_t k = 0; k < recs.size(); ++k) recs[k].mean_abs_error *= 1.0 + 0.05 * std::cos(k);
  const PowerLawModel m = fit_power_law(recs, 0);
  EXPECT_NEAR(m.per_label_prefactors.at("only"), m.a_global, 1e-10 * m.a_global);
}

TEST(FitPowerLaw, DegenerateRejected) {
  auto recs = synthetic(2.0, 0.3, -1.0);
  for (auto& r : recs) r.d = 118;
  EXPECT_THROW(fit_power_law(recs), std::invalid_argument);
  // d and N perfectly collinear in log space.
  std::vector<PowerLawRecord> col;
  for (double x : {2.0, 4.0, 8.0}) col.push_back({"a", x, x * x, 1e-3, 1e-3});
  EXPECT_THROW(fit_power_law(col), std::invalid_argument);
}

}  // namespace
}  // namespace splitcc
