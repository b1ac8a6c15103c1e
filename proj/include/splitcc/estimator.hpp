// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace splitcc {

enum class SplitMethod { tccsd, eccc };

/// Number of distinct determinant overlaps (reference included) consumed by
/// the method for an active space of n spatial orbitals.
long long count_overlaps(int n_spatial_active, int n_alpha, int n_beta,
                         SplitMethod method);

/// Number of rank-nu excitations of zeta electrons among n spin-restricted
/// orbitals: C(zeta, nu) * C(n - zeta, nu).
long long excitations_per_spin(int n, int zeta, int nu);

inline constexpr double kPrefactorFloor = 0.1;

/// Linear map from the T1 diagnostic to the error prefactor, floored.
double prefactor_from_t1diag(double t1_diag, double floor = kPrefactorFloor);

struct PowerLawModel {
  double beta = 0.277;
  double gamma = -1.074;
  double beta_err = 0.054;
  double gamma_err = 0.116;
  /// Intercept exp(c) of the global fit.
  double a_global = 1.0;
  std::map<std::string, double> per_label_prefactors;
};

/// a * d^beta * N^gamma * sigma.
double predict_error(double a, double d, double N, double sigma,
                     const PowerLawModel& model = {});

struct ShotBudgetQuery {
  double t1_diag = 0.0;
  double target_error = 1e-3;
  double d = 0.0;
  double N = 0.0;
  int n = 0;
  bool assume_half_filling = true;
};

struct ShotBudget {
  double a = 0.0;
  double s_exact = 0.0;
  long long s = 0;
  long long s_low = 0;
  long long s_high = 0;
};

ShotBudget shot_budget(const ShotBudgetQuery& query, const PowerLawModel& model = {});

struct CurveBudget {
  std::vector<ShotBudget> rows;
  long long total = 0;
};

CurveBudget total_curve_budget(const std::vector<double>& t1_diags, double d,
                               double N, int n, double target_error,
                               const PowerLawModel& model = {});

struct PowerLawRecord {
  std::string label;
  double d = 0.0;
  double N = 0.0;
  double sigma = 0.0;
  double mean_abs_error = 0.0;
};

/// Global log-log fit of error/sigma = a d^beta N^gamma, per-label prefactor
/// refit at fixed exponents, bootstrap errors over records.
PowerLawModel fit_power_law(const std::vector<PowerLawRecord>& records,
                            int n_bootstrap = 1000, std::uint64_t seed = 0);

}  // namespace splitcc
