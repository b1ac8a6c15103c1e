// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <vector>

#include "splitcc/ci.hpp"
#include "splitcc/determinant.hpp"

namespace splitcc {

struct OverlapEntry {
  double value = 0.0;
  std::optional<double> variance;
};

/// Overlaps <Phi_label|Psi> keyed by canonical excitation labels in the
/// spin-orbital numbering of `n_spatial` orbitals.
struct OverlapSet {
  int n_spatial = 0;
  Determinant reference;
  double c0 = 1.0;
  std::optional<double> c0_variance;
  std::map<ExcitationLabel, OverlapEntry> entries;

  /// Value for `label`, zero if absent. Rank 0 returns c0.
  double value(const ExcitationLabel& label) const;
  int max_rank() const;
  std::uint64_t reference_bits() const { return spin_bits(reference, n_spatial); }
};

/// Maps active spatial orbital t to full-space spatial orbital.
struct OrbitalMap {
  int n_spatial_full = 0;
  std::vector<int> active_to_full;
  /// Full-space reference (inactive core plus the mapped active reference).
  Determinant full_reference;
};

/// Orbital map of an active window inside `full`.
OrbitalMap make_orbital_map(const SpinOrbitalBasis& full,
                            const ActiveSpaceSpec& spec);

inline constexpr double kDefaultC0Threshold = 1e-6;

/// Fermi-vacuum overlaps of every determinant of `state` within `max_rank`
/// excitations of its reference. Throws PreconditionError if |c0| is below
/// `c0_threshold` or the state is not real.
OverlapSet extract_overlaps(const CIVector& state, int max_rank,
                            const std::optional<OrbitalMap>& active_map = {},
                            double c0_threshold = kDefaultC0Threshold);

/// Rebuilds determinant coefficients from overlaps (inverse of
/// extract_overlaps without an orbital map).
CIVector synthesize_civector(const OverlapSet& overlaps);

/// Every S_z-conserving canonical label of rank `rank` with occupied indices
/// from `occupied` and virtual indices from `virtuals` (both ascending).
std::vector<ExcitationLabel> enumerate_labels(const std::vector<int>& occupied,
                                              const std::vector<int>& virtuals,
                                              int rank, int n_spatial);

}  // namespace splitcc
