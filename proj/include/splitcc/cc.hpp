// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "splitcc/cluster.hpp"
#include "splitcc/integrals.hpp"

namespace splitcc {

enum class T1T3Mode {
  /// T1*T3 doubles term evaluated once from the external t1.
  frozen,
  /// T1*T3 doubles term re-evaluated from the current t1 every iteration.
  iterative,
};

struct SolverConfig {
  int max_iterations = 200;
  double residual_tolerance = 1e-8;
  int diis_depth = 8;
  int diis_start = 2;
  /// Added to the magnitude of the orbital-energy denominators.
  double level_shift = 0.0;
  T1T3Mode t1t3_mode = T1T3Mode::iterative;
  /// Consecutive residual increases treated as divergence.
  int divergence_window = 10;
};

struct IterationRecord {
  int iteration = 0;
  double energy = 0.0;
  double residual_norm = 0.0;
};

struct CCResult {
  double e_hf = 0.0;
  double e_total = 0.0;
  double e_correlation = 0.0;
  AmplitudeSet amplitudes;
  int iterations = 0;
  double final_residual_norm = 0.0;
  bool converged = false;
  bool diverged = false;
  std::vector<IterationRecord> trace;
};

struct TCCResult {
  CCResult base;
  double e_as = 0.0;
  double e_ext = 0.0;
};

/// Correlation energy from t1/t2 with the Fock matrix of `basis`.
double cc_energy(const AmplitudeSet& amps, const SpinOrbitalBasis& basis);

/// Energy functional restricted to terms whose indices are all frozen
/// (active) amplitudes.
double cc_energy_frozen_block(const AmplitudeSet& amps,
                              const SpinOrbitalBasis& basis);

/// Singles and doubles projections <Phi_mu|e^{-T} H e^{T}|Phi_0> for the
/// amplitudes, including t3/t4 contributions when present.
struct CCResiduals {
  Eigen::MatrixXd r1;
  std::vector<double> r2;
};
CCResiduals compute_residuals(const SpinOrbitalBasis& basis,
                              const AmplitudeSet& amps);

CCResult solve_ccsd(const SpinOrbitalBasis& basis, const SolverConfig& config = {},
                    const std::optional<AmplitudeSet>& initial = std::nullopt);

/// CCSD with the masked t1/t2 block of `frozen` held fixed.
TCCResult solve_tccsd(const SpinOrbitalBasis& basis, const AmplitudeSet& frozen,
                      const SolverConfig& config = {});

/// CCSD-like solve of the CCSDTQ singles/doubles projections with fixed
/// external t3/t4. The external t1/t2 are used as initial guess only when
/// `use_external_guess` is set.
CCResult solve_eccc(const SpinOrbitalBasis& basis, const AmplitudeSet& external,
                    const SolverConfig& config = {}, bool use_external_guess = false);

struct Diagnostics {
  double t1_diag = 0.0;
  double d1_diag = 0.0;
};
Diagnostics diagnostics(const Eigen::MatrixXd& t1, int n_correlated_electrons);

}  // namespace splitcc
