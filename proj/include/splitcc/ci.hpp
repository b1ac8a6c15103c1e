// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "splitcc/determinant.hpp"
#include "splitcc/integrals.hpp"

namespace splitcc {

/// <bra|H|ket> by Slater-Condon rules on blocked spin-orbital bit strings.
double hamiltonian_element(const SpinOrbitalBasis& basis, std::uint64_t bra,
                           std::uint64_t ket);

/// Diagonal element <D|H|D>, including the core energy.
double diagonal_energy(const SpinOrbitalBasis& basis, std::uint64_t bits);

/// All determinants with the given electron counts, optionally restricted to
/// at most `max_rank` total excitations from `reference`. Ordered by
/// (alpha, beta) string value.
std::vector<Determinant> enumerate_determinants(
    int n_spatial, int n_alpha, int n_beta,
    std::optional<int> max_rank = std::nullopt,
    std::optional<Determinant> reference = std::nullopt);

struct CIVector {
  int n_spatial = 0;
  std::vector<Determinant> basis;
  std::vector<std::complex<double>> coefficients;
  Determinant reference;

  double norm() const;
  /// Coefficient of `d`, zero if `d` is not in the basis.
  std::complex<double> coefficient(const Determinant& d) const;
  bool is_real(double tolerance = 0.0) const;
};

struct CIOptions {
  /// Bases up to this size are diagonalized densely.
  std::size_t dense_limit = 1500;
  double residual_tolerance = 1e-10;
  int max_iterations = 200;
  int max_subspace = 60;
};

struct CISolution {
  std::vector<double> energies;
  std::vector<CIVector> states;
  int iterations = 0;
};

/// Lowest `n_roots` eigenpairs of H projected onto `dets`. The reference of
/// each state is the aufbau determinant of `basis`. Coefficients are real and
/// the largest-magnitude coefficient of each state is positive.
CISolution solve_ci(const SpinOrbitalBasis& basis,
                    std::span<const Determinant> dets, int n_roots = 1,
                    const CIOptions& options = {});

/// Fixes the global sign so the largest-magnitude coefficient is positive.
void fix_sign(std::vector<double>& coefficients);

}  // namespace splitcc
