// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#include "splitcc/determinant.hpp"

#include <algorithm>
#include <stdexcept>

namespace splitcc {

Determinant aufbau(int n_alpha, int n_beta) {
  auto low = [](int k) { return k >= 64 ? ~0ULL : ((1ULL << k) - 1ULL); };
  return {low(n_alpha), low(n_beta)};
}

std::vector<int> occupied_list(std::uint64_t bits) {
  std::vector<int> out;
  while (bits) {
    out.push_back(std::countr_zero(bits));
    bits &= bits - 1;
  }
  return out;
}

ExcitationLabel::ExcitationLabel(const std::vector<int>& occupied,
                                 const std::vector<int>& virtuals) {
  if (occupied.size() != virtuals.size()) {
    throw std::invalid_argument("excitation label: occ/virt length mismatch");
  }
  if (occupied.size() > static_cast<std::size_t>(kMaxRank)) {
    throw std::invalid_argument("excitation label: rank above 4");
  }
  rank = static_cast<std::uint8_t>(occupied.size());
  std::vector<int> o = occupied, v = virtuals;
  std::sort(o.begin(), o.end());
  std::sort(v.begin(), v.end());
  for (std::size_t i = 0; i < o.size(); ++i) {
    if (o[i] < 0 || o[i] > 63 || v[i] < 0 || v[i] > 63) {
      throw std::invalid_argument("excitation label: index out of range");
    }
    if (i > 0 && (o[i] == o[i - 1] || v[i] == v[i - 1])) {
      throw std::invalid_argument("excitation label: repeated index");
    }
    occ[i] = static_cast<std::uint8_t>(o[i]);
    virt[i] = static_cast<std::uint8_t>(v[i]);
  }
}

std::optional<SignedBits> apply_excitation(std::uint64_t bits,
                                           const int* annihilate,
                                           const int* create, int count) {
  int sign = 1;
  for (int k = 0; k < count; ++k) {
    const std::uint64_t m = 1ULL << annihilate[k];
    if (!(bits & m)) return std::nullopt;
    sign *= fermion_sign(bits, annihilate[k]);
    bits &= ~m;
  }
  for (int k = count - 1; k >= 0; --k) {
    const std::uint64_t m = 1ULL << create[k];
    if (bits & m) return std::nullopt;
    sign *= fermion_sign(bits, create[k]);
    bits |= m;
  }
  return SignedBits{bits, sign};
}

int sort_parity(std::vector<int>& seq) {
  int parity = 1;
  // Insertion sort counting transpositions; sequences here have length <= 8.
  for (std::size_t i = 1; i < seq.size(); ++i) {
    for (std::size_t j = i; j > 0 && seq[j - 1] >= seq[j]; --j) {
      if (seq[j - 1] == seq[j]) return 0;
      std::swap(seq[j - 1], seq[j]);
      parity = -parity;
    }
  }
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (seq[i - 1] == seq[i]) return 0;
  }
  return parity;
}

int excitation_phase(std::uint64_t reference_bits,
                     const ExcitationLabel& label) {
  int ann[ExcitationLabel::kMaxRank];
  int cre[ExcitationLabel::kMaxRank];
  for (int k = 0; k < label.rank; ++k) {
    ann[k] = label.occ[k];
    cre[k] = label.virt[k];
  }
  const auto r = apply_excitation(reference_bits, ann, cre, label.rank);
  if (!r) {
    throw std::invalid_argument(
        "excitation label inconsistent with reference occupation");
  }
  return r->sign;
}

int excitation_phase(const Determinant& reference, int n_spatial,
                     const ExcitationLabel& label) {
  return excitation_phase(spin_bits(reference, n_spatial), label);
}

std::uint64_t excite_bits(std::uint64_t reference_bits,
                          const ExcitationLabel& label) {
  std::uint64_t bits = reference_bits;
  for (int k = 0; k < label.rank; ++k) {
    bits &= ~(1ULL << label.occ[k]);
    bits |= 1ULL << label.virt[k];
  }
  return bits;
}

ExcitationLabel label_between(std::uint64_t reference_bits,
                              std::uint64_t target_bits) {
  const auto holes = occupied_list(reference_bits & ~target_bits);
  const auto parts = occupied_list(target_bits & ~reference_bits);
  return ExcitationLabel(holes, parts);
}

int spin_imbalance(const ExcitationLabel& label, int n_spatial) {
  int d = 0;
  for (int k = 0; k < label.rank; ++k) {
    d += label.virt[k] < n_spatial ? 1 : 0;
    d -= label.occ[k] < n_spatial ? 1 : 0;
  }
  return d;
}

}  // namespace splitcc
