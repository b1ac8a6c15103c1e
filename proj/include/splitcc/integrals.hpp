// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <filesystem>
#include <istream>
#include <vector>

namespace splitcc {

/// Spatial-orbital integrals as stored in an FCIDUMP file.
struct MolecularIntegrals {
  int n_spatial = 0;
  int n_electrons = 0;
  int ms2 = 0;
  Eigen::MatrixXd h;
  /// Chemists' notation (pq|rs), dense n^4, all 8 symmetry images populated.
  std::vector<double> eri;
  double e_core = 0.0;
  std::vector<int> orbital_symmetries;

  double eri_at(int p, int q, int r, int s) const {
    const std::size_t n = static_cast<std::size_t>(n_spatial);
    return eri[((p * n + q) * n + r) * n + s];
  }
};

MolecularIntegrals parse_fcidump(std::istream& in);
MolecularIntegrals read_fcidump(const std::filesystem::path& path);

/// Spin-orbital layout. Blocked: alpha orbitals 0..n-1, beta n..2n-1.
enum class SpinOrdering { blocked, interleaved };

/// Antisymmetrized spin-orbital Hamiltonian plus its reference determinant.
struct SpinOrbitalBasis {
  int n_spatial = 0;
  int n_alpha = 0;
  int n_beta = 0;
  Eigen::MatrixXd h;
  /// <pq||rs>, dense N^4.
  std::vector<double> g;
  double e_core = 0.0;
  /// Occupied spin orbitals in ascending order.
  std::vector<int> reference_occupation;
  SpinOrdering ordering = SpinOrdering::blocked;

  int n_spin_orbitals() const { return 2 * n_spatial; }
  int n_electrons() const { return n_alpha + n_beta; }

  double g_at(int p, int q, int r, int s) const {
    const std::size_t n = static_cast<std::size_t>(2 * n_spatial);
    return g[((p * n + q) * n + r) * n + s];
  }
};

/// Spin orbital index of spatial orbital `p` with spin 0 (alpha) or 1 (beta).
inline int spin_orbital(int p, int spin, int n_spatial) {
  return p + spin * n_spatial;
}
inline int spin_of(int so, int n_spatial) { return so >= n_spatial ? 1 : 0; }
inline int spatial_of(int so, int n_spatial) {
  return so >= n_spatial ? so - n_spatial : so;
}

SpinOrbitalBasis to_spin_orbitals(const MolecularIntegrals& mi,
                                  SpinOrdering ordering = SpinOrdering::blocked);

struct FockResult {
  Eigen::MatrixXd fock;
  double e_hf = 0.0;
};

FockResult build_fock(const SpinOrbitalBasis& basis);

struct ActiveSpaceSpec {
  std::vector<int> active_spatial_orbitals;
  int n_active_alpha = 0;
  int n_active_beta = 0;

  int size() const { return static_cast<int>(active_spatial_orbitals.size()); }
};

/// Throws PreconditionError unless `spec` is a valid active window of `basis`.
void validate_active_space(const SpinOrbitalBasis& basis,
                           const ActiveSpaceSpec& spec);

struct ActiveHamiltonian {
  /// Active-space basis; its e_core equals e_frozen_core.
  SpinOrbitalBasis basis;
  double e_frozen_core = 0.0;
};

ActiveHamiltonian build_active_hamiltonian(const SpinOrbitalBasis& basis,
                                           const ActiveSpaceSpec& spec);

}  // namespace splitcc
