// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace splitcc {

/// Occupation pair over spatial orbitals; bit p set means orbital p occupied.
struct Determinant {
  std::uint64_t alpha = 0;
  std::uint64_t beta = 0;

  auto operator<=>(const Determinant&) const = default;
};

/// Blocked spin-orbital bit string: alpha bits 0..n-1, beta bits n..2n-1.
inline std::uint64_t spin_bits(const Determinant& d, int n_spatial) {
  return d.alpha | (d.beta << n_spatial);
}

inline Determinant from_spin_bits(std::uint64_t bits, int n_spatial) {
  const std::uint64_t mask =
      n_spatial >= 64 ? ~0ULL : ((1ULL << n_spatial) - 1ULL);
  return {bits & mask, (bits >> n_spatial) & mask};
}

/// Aufbau determinant with the lowest n_alpha / n_beta orbitals occupied.
Determinant aufbau(int n_alpha, int n_beta);

std::vector<int> occupied_list(std::uint64_t bits);

/// Number of spin orbitals in which `a` differs from `b`, divided by two.
inline int excitation_rank(std::uint64_t a, std::uint64_t b) {
  return std::popcount(a ^ b) / 2;
}

/// Canonical excitation label. Occupied and virtual spin-orbital indices are
/// strictly ascending; rank 0 denotes the reference.
struct ExcitationLabel {
  std::uint8_t rank = 0;
  std::array<std::uint8_t, 4> occ{};
  std::array<std::uint8_t, 4> virt{};

  static constexpr int kMaxRank = 4;

  ExcitationLabel() = default;
  /// Sorts the index lists; throws std::invalid_argument on duplicates,
  /// mismatched lengths or rank above kMaxRank.
  ExcitationLabel(const std::vector<int>& occupied,
                  const std::vector<int>& virtuals);

  std::vector<int> occupied() const { return {occ.begin(), occ.begin() + rank}; }
  std::vector<int> virtuals() const {
    return {virt.begin(), virt.begin() + rank};
  }

  friend bool operator==(const ExcitationLabel& a, const ExcitationLabel& b) {
    return a.rank == b.rank && a.occ == b.occ && a.virt == b.virt;
  }
  friend bool operator<(const ExcitationLabel& a, const ExcitationLabel& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    if (a.occ != b.occ) return a.occ < b.occ;
    return a.virt < b.virt;
  }
};

/// Sign of a_p acting on `bits` (number of occupied orbitals below p).
inline int fermion_sign(std::uint64_t bits, int p) {
  const std::uint64_t below = p == 0 ? 0ULL : (bits & ((1ULL << p) - 1ULL));
  return (std::popcount(below) & 1) ? -1 : 1;
}

/// Applies a_{r_k} ... a_{r_1} then a^dag_{s_k} ... a^dag_{s_1} in the order
/// a^dag_{s_1} ... a^dag_{s_k} a_{r_k} ... a_{r_1} |bits>. Returns the
/// resulting bit string and sign, or nullopt if the result vanishes.
struct SignedBits {
  std::uint64_t bits = 0;
  int sign = 1;
};
std::optional<SignedBits> apply_excitation(std::uint64_t bits,
                                           const int* annihilate,
                                           const int* create, int count);

/// Parity (+1/-1) of the permutation sorting `seq` ascending; 0 if `seq`
/// contains a repeated value.
int sort_parity(std::vector<int>& seq);

/// Fermi-vacuum phase: E(label)|ref> = phase * |canonical determinant|.
/// E(O,V) = a^dag_{v1} ... a^dag_{vk} a_{ok} ... a_{o1}.
/// Throws std::invalid_argument if the label is inconsistent with `ref`.
int excitation_phase(std::uint64_t reference_bits,
                     const ExcitationLabel& label);
int excitation_phase(const Determinant& reference, int n_spatial,
                     const ExcitationLabel& label);

/// Determinant reached from the reference by `label` (bits only, no sign).
std::uint64_t excite_bits(std::uint64_t reference_bits,
                          const ExcitationLabel& label);

/// Label of `target` relative to `reference` (rank <= kMaxRank).
ExcitationLabel label_between(std::uint64_t reference_bits,
                              std::uint64_t target_bits);

/// Net alpha-count difference between virtual and occupied indices; labels
/// with zero imbalance conserve S_z.
int spin_imbalance(const ExcitationLabel& label, int n_spatial);

}  // namespace splitcc
