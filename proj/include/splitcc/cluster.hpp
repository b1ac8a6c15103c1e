// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "splitcc/ci.hpp"
#include "splitcc/determinant.hpp"
#include "splitcc/integrals.hpp"
#include "splitcc/overlaps.hpp"

namespace splitcc {

/// Occupied/virtual partition of the spin orbitals of a reference.
struct AmplitudeSpace {
  int n_spatial = 0;
  std::vector<int> occupied;
  std::vector<int> virtuals;
  /// Spin orbital -> position in `occupied` / `virtuals`, or -1.
  std::vector<int> occ_pos;
  std::vector<int> vir_pos;

  int o() const { return static_cast<int>(occupied.size()); }
  int v() const { return static_cast<int>(virtuals.size()); }
  std::uint64_t reference_bits() const;
  Determinant reference() const;
};

AmplitudeSpace make_space(int n_spatial, std::uint64_t reference_bits);
AmplitudeSpace make_space(const SpinOrbitalBasis& basis);

/// Cluster amplitudes. t1 is o x v; t2 is stored densely as [i][j][a][b]
/// with all antisymmetric images populated. t3/t4 are keyed by canonical
/// labels in spin-orbital numbering.
struct AmplitudeSet {
  AmplitudeSpace space;
  Eigen::MatrixXd t1;
  std::vector<double> t2;
  std::map<ExcitationLabel, double> t3;
  std::map<ExcitationLabel, double> t4;
  /// Freezing masks over t1 (o*v) and t2 (o*o*v*v); empty means none frozen.
  std::vector<char> frozen_t1;
  std::vector<char> frozen_t2;

  static AmplitudeSet zeros(const AmplitudeSpace& space);

  std::size_t t2_index(int i, int j, int a, int b) const {
    const std::size_t o = space.o(), v = space.v();
    return ((i * o + j) * v + a) * v + b;
  }
  double t2_at(int i, int j, int a, int b) const { return t2[t2_index(i, j, a, b)]; }
  /// Writes `value` at (i,j,a,b) and its three antisymmetric images.
  void set_t2(int i, int j, int a, int b, double value);

  bool t1_frozen(int i, int a) const {
    return !frozen_t1.empty() && frozen_t1[i * space.v() + a];
  }
  bool t2_frozen(int i, int j, int a, int b) const {
    return !frozen_t2.empty() && frozen_t2[t2_index(i, j, a, b)];
  }
  bool has_frozen() const;

  /// Amplitude for a canonical label of any rank 1..4 (zero if absent).
  double amplitude(const ExcitationLabel& label) const;
};

/// Cluster analysis: overlaps (divided by c0) to amplitudes through
/// `max_rank`. Throws PreconditionError if |c0| < c0_threshold.
AmplitudeSet ci_to_cc(const OverlapSet& overlaps, int max_rank,
                      double c0_threshold = kDefaultC0Threshold);

/// Inverse cluster analysis: e^T coefficients through `max_rank`, c0 = 1.
OverlapSet cc_to_ci(const AmplitudeSet& amps, int max_rank);

/// Signed sum over all partitions of the label into cluster blocks, i.e. the
/// coefficient of E(label) in e^T. With `connected_term` false the
/// single-block term t(label) is omitted.
double partition_sum(const AmplitudeSet& amps, const ExcitationLabel& label,
                     bool connected_term);

/// Rotates by the phase of the largest-magnitude coefficient, keeps the real
/// part and renormalizes. Throws std::invalid_argument for a zero vector.
CIVector phase_align(const CIVector& state);

enum class FilterRule {
  /// Zero an entry unless |value| > k * sigma.
  keep_significant,
  /// Zero an entry if |value| > k * sigma.
  literal,
};

struct FilterReport {
  std::size_t n_zeroed_by_variance = 0;
  std::size_t n_dropped_disconnected = 0;
  double k = 0.0;
  double ci_zero_threshold = 0.0;
};

std::pair<OverlapSet, FilterReport> filter_variance(
    const OverlapSet& overlaps, double k = 2.0,
    FilterRule rule = FilterRule::keep_significant);

/// Removes t3/t4 entries whose overlap satisfies |c| <= threshold, where the
/// threshold is max(ci_zero_threshold, k * sigma) for entries with variance.
std::pair<AmplitudeSet, FilterReport> drop_disconnected(
    const AmplitudeSet& amps, const OverlapSet& overlaps,
    double ci_zero_threshold = 1e-12, double k = 2.0);

enum class EmbedMode {
  /// Freeze the active t1/t2 block.
  tailored,
  /// Freeze nothing.
  external,
};

/// Maps active-space amplitudes into the full space. Input amplitudes may
/// already be in full numbering, in which case only the mask is applied.
AmplitudeSet embed_active(const AmplitudeSet& amps, const ActiveSpaceSpec& spec,
                          const SpinOrbitalBasis& full_space,
                          EmbedMode mode = EmbedMode::tailored);

}  // namespace splitcc
