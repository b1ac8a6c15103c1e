// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#include "splitcc/overlaps.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "splitcc/errors.hpp"

namespace splitcc {

double OverlapSet::value(const ExcitationLabel& label) const {
  if (label.rank == 0) return c0;
  const auto it = entries.find(label);
  return it == entries.end() ? 0.0 : it->second.value;
}

int OverlapSet::max_rank() const {
  int r = 0;
  for (const auto& [label, e] : entries) r = std::max<int>(r, label.rank);
  return r;
}

OrbitalMap make_orbital_map(const SpinOrbitalBasis& full,
                            const ActiveSpaceSpec& spec) {
  validate_active_space(full, spec);
  OrbitalMap m;
  m.n_spatial_full = full.n_spatial;
  m.active_to_full = spec.active_spatial_orbitals;
  std::uint64_t bits = 0;
  for (int so : full.reference_occupation) bits |= 1ULL << so;
  m.full_reference = from_spin_bits(bits, full.n_spatial);
  return m;
}

OverlapSet extract_overlaps(const CIVector& state, int max_rank,
                            const std::optional<OrbitalMap>& active_map,
                            double c0_threshold) {
  if (max_rank < 0 || max_rank > ExcitationLabel::kMaxRank) {
    throw std::invalid_argument("max_rank must lie in [0, 4]");
  }
  if (!state.is_real(0.0)) {
    throw PreconditionError("extract_overlaps needs a real state; phase_align first");
  }
  const int n = state.n_spatial;
  const std::uint64_t ref = spin_bits(state.reference, n);
  const double c0 = state.coefficient(state.reference).real();
  if (std::abs(c0) < c0_threshold) {
    throw PreconditionError("reference coefficient below c0 threshold");
  }

  OverlapSet out;
  out.c0 = c0;
  if (active_map) {
    if (static_cast<int>(active_map->active_to_full.size()) != n) {
      throw std::invalid_argument("orbital map size differs from state width");
    }
    out.n_spatial = active_map->n_spatial_full;
    out.reference = active_map->full_reference;
  } else {
    out.n_spatial = n;
    out.reference = state.reference;
  }
  auto to_full = [&](int so) {
    if (!active_map) return so;
    const int spin = spin_of(so, n);
    return active_map->active_to_full[spatial_of(so, n)] +
           spin * active_map->n_spatial_full;
  };

  for (std::size_t k = 0; k < state.basis.size(); ++k) {
    const std::uint64_t bits = spin_bits(state.basis[k], n);
    const int rank = excitation_rank(bits, ref);
    if (rank == 0 || rank > max_rank) continue;
    const ExcitationLabel local = label_between(ref, bits);
    const double value =
        excitation_phase(ref, local) * state.coefficients[k].real();
    if (!active_map) {
      out.entries[local] = {value, std::nullopt};
      continue;
    }
    std::vector<int> occ, vir;
    for (int i = 0; i < rank; ++i) {
      occ.push_back(to_full(local.occ[i]));
      vir.push_back(to_full(local.virt[i]));
    }
    const int parity = sort_parity(occ) * sort_parity(vir);
    out.entries[ExcitationLabel(occ, vir)] = {parity * value, std::nullopt};
  }
  return out;
}

CIVector synthesize_civector(const OverlapSet& overlaps) {
  CIVector v;
  v.n_spatial = overlaps.n_spatial;
  v.reference = overlaps.reference;
  const std::uint64_t ref = overlaps.reference_bits();
  v.basis.push_back(overlaps.reference);
  v.coefficients.emplace_back(overlaps.c0);
  for (const auto& [label, e] : overlaps.entries) {
    v.basis.push_back(from_spin_bits(excite_bits(ref, label), overlaps.n_spatial));
    v.coefficients.emplace_back(excitation_phase(ref, label) * e.value);
  }
  return v;
}

std::vector<ExcitationLabel> enumerate_labels(const std::vector<int>& occupied,
                                              const std::vector<int>& virtuals,
                                              int rank, int n_spatial) {
  std::vector<ExcitationLabel> out;
  if (rank < 1 || rank > ExcitationLabel::kMaxRank) return out;
  std::vector<std::vector<int>> occ_sets, vir_sets;
  std::vector<int> cur;
  std::function<void(const std::vector<int>&, std::size_t,
                     std::vector<std::vector<int>>&)>
      combos = [&](const std::vector<int>& pool, std::size_t start,
                   std::vector<std::vector<int>>& sink) {
        if (static_cast<int>(cur.size()) == rank) {
          sink.push_back(cur);
          return;
        }
        for (std::size_t i = start; i < pool.size(); ++i) {
          cur.push_back(pool[i]);
          combos(pool, i + 1, sink);
          cur.pop_back();
        }
      };
  combos(occupied, 0, occ_sets);
  combos(virtuals, 0, vir_sets);
  auto n_alpha = [&](const std::vector<int>& s) {
    return std::count_if(s.begin(), s.end(), [&](int p) { return p < n_spatial; });
  };
  for (const auto& o : occ_sets) {
    const auto no = n_alpha(o);
    for (const auto& v : vir_sets) {
      if (n_alpha(v) == no) out.emplace_back(o, v);
    }
  }
  return out;
}

}  // namespace splitcc
