// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#include "splitcc/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "splitcc/errors.hpp"

namespace splitcc {

std::uint64_t AmplitudeSpace::reference_bits() const {
  std::uint64_t bits = 0;
  for (int i : occupied) bits |= 1ULL << i;
  return bits;
}

Determinant AmplitudeSpace::reference() const {
  return from_spin_bits(reference_bits(), n_spatial);
}

AmplitudeSpace make_space(int n_spatial, std::uint64_t reference_bits) {
  AmplitudeSpace s;
  s.n_spatial = n_spatial;
  const int nso = 2 * n_spatial;
  s.occ_pos.assign(nso, -1);
  s.vir_pos.assign(nso, -1);
  for (int p = 0; p < nso; ++p) {
    if (reference_bits & (1ULL << p)) {
      s.occ_pos[p] = s.o();
      s.occupied.push_back(p);
    } else {
      s.vir_pos[p] = s.v();
      s.virtuals.push_back(p);
    }
  }
  return s;
}

AmplitudeSpace make_space(const SpinOrbitalBasis& basis) {
  std::uint64_t bits = 0;
  for (int so : basis.reference_occupation) bits |= 1ULL << so;
  return make_space(basis.n_spatial, bits);
}

AmplitudeSet AmplitudeSet::zeros(const AmplitudeSpace& space) {
  AmplitudeSet a;
  a.space = space;
  const std::size_t o = space.o(), v = space.v();
  a.t1 = Eigen::MatrixXd::Zero(o, v);
  a.t2.assign(o * o * v * v, 0.0);
  return a;
}

void AmplitudeSet::set_t2(int i, int j, int a, int b, double value) {
  t2[t2_index(i, j, a, b)] = value;
  t2[t2_index(j, i, a, b)] = -value;
  t2[t2_index(i, j, b, a)] = -value;
  t2[t2_index(j, i, b, a)] = value;
}

bool AmplitudeSet::has_frozen() const {
  return std::any_of(frozen_t1.begin(), frozen_t1.end(), [](char c) { return c; }) ||
         std::any_of(frozen_t2.begin(), frozen_t2.end(), [](char c) { return c; });
}

double AmplitudeSet::amplitude(const ExcitationLabel& label) const {
  switch (label.rank) {
    case 1: {
      const int i = space.occ_pos[label.occ[0]], a = space.vir_pos[label.virt[0]];
      return (i < 0 || a < 0) ? 0.0 : t1(i, a);
    }
    case 2: {
      const int i = space.occ_pos[label.occ[0]], j = space.occ_pos[label.occ[1]];
      const int a = space.vir_pos[label.virt[0]], b = space.vir_pos[label.virt[1]];
      return (i < 0 || j < 0 || a < 0 || b < 0) ? 0.0 : t2_at(i, j, a, b);
    }
    case 3: {
      const auto it = t3.find(label);
      return it == t3.end() ? 0.0 : it->second;
    }
    case 4: {
      const auto it = t4.find(label);
      return it == t4.end() ? 0.0 : it->second;
    }
    default:
      return 0.0;
  }
}

namespace {

using Index = std::vector<int>;

// Sign of concatenating sorted `head` with sorted `tail` into sorted order.
int merge_parity(const Index& head, const Index& tail) {
  int inversions = 0;
  for (int h : head)
    for (int t : tail)
      if (t < h) ++inversions;
  return (inversions & 1) ? -1 : 1;
}

// Sum over partitions of (occ, vir) into blocks, each block contributing its
// amplitude. The block holding occ[0] is enumerated first; `skip_whole`
// omits the block equal to the full label at the top level.
double partitions(const AmplitudeSet& amps, const Index& occ, const Index& vir,
                  bool skip_whole) {
  const int n = static_cast<int>(occ.size());
  if (n == 0) return 1.0;
  double total = 0.0;
  // Subsets of occ containing occ[0] encoded as masks over occ[1..n-1].
  for (unsigned om = 0; om < (1u << (n - 1)); ++om) {
    Index s{occ[0]}, rest_o;
    for (int k = 1; k < n; ++k) {
      if (om & (1u << (k - 1))) s.push_back(occ[k]);
      else rest_o.push_back(occ[k]);
    }
    const int k = static_cast<int>(s.size());
    if (skip_whole && k == n) continue;
    for (unsigned vm = 0; vm < (1u << n); ++vm) {
      if (std::popcount(vm) != k) continue;
      Index w, rest_v;
      for (int q = 0; q < n; ++q) {
        if (vm & (1u << q)) w.push_back(vir[q]);
        else rest_v.push_back(vir[q]);
      }
      const double t = amps.amplitude(ExcitationLabel(s, w));
      if (t == 0.0) continue;
      const double sub = partitions(amps, rest_o, rest_v, false);
      if (sub == 0.0) continue;
      total += merge_parity(s, rest_o) * merge_parity(w, rest_v) * t * sub;
    }
  }
  return total;
}

// Occupied / virtual spin orbitals touched by any key of `labels`.
template <typename Map, typename Pred>
std::pair<Index, Index> support_of(const Map& labels, Pred keep) {
  std::set<int> o, v;
  for (const auto& [label, x] : labels) {
    if (!keep(x)) continue;
    for (int k = 0; k < label.rank; ++k) {
      o.insert(label.occ[k]);
      v.insert(label.virt[k]);
    }
  }
  return {Index(o.begin(), o.end()), Index(v.begin(), v.end())};
}

void check_rank(int max_rank) {
  if (max_rank < 1 || max_rank > ExcitationLabel::kMaxRank) {
    throw std::invalid_argument("max_rank must lie in [1, 4]");
  }
}

}  // namespace

double partition_sum(const AmplitudeSet& amps, const ExcitationLabel& label,
                     bool connected_term) {
  return partitions(amps, label.occupied(), label.virtuals(), !connected_term);
}

AmplitudeSet ci_to_cc(const OverlapSet& overlaps, int max_rank,
                      double c0_threshold) {
  check_rank(max_rank);
  if (std::abs(overlaps.c0) < c0_threshold) {
    throw PreconditionError("reference coefficient below c0 threshold");
  }
  const double inv_c0 = 1.0 / overlaps.c0;
  const int n = overlaps.n_spatial;
  AmplitudeSet amps =
      AmplitudeSet::zeros(make_space(n, overlaps.reference_bits()));
  const auto& sp = amps.space;

  for (const auto& [label, e] : overlaps.entries) {
    if (label.rank != 1) continue;
    const int i = sp.occ_pos[label.occ[0]], a = sp.vir_pos[label.virt[0]];
    if (i < 0 || a < 0) throw std::invalid_argument("label inconsistent with reference");
    amps.t1(i, a) = e.value * inv_c0;
  }
  if (max_rank >= 2) {
    const int o = sp.o(), v = sp.v();
    for (int i = 0; i < o; ++i)
      for (int j = i + 1; j < o; ++j)
        for (int a = 0; a < v; ++a)
          for (int b = a + 1; b < v; ++b) {
            const double disc = amps.t1(i, a) * amps.t1(j, b) -
                                amps.t1(i, b) * amps.t1(j, a);
            const ExcitationLabel label(
                {sp.occupied[i], sp.occupied[j]}, {sp.virtuals[a], sp.virtuals[b]});
            const double c = overlaps.value(label) * inv_c0;
            if (c != 0.0 || disc != 0.0) amps.set_t2(i, j, a, b, c - disc);
          }
  }
  if (max_rank >= 3) {
    const auto [occ, vir] = support_of(overlaps.entries, [](const auto&) { return true; });
    for (int rank = 3; rank <= max_rank; ++rank) {
      auto& target = rank == 3 ? amps.t3 : amps.t4;
      for (const auto& label : enumerate_labels(occ, vir, rank, n)) {
        const double c = overlaps.value(label) * inv_c0;
        const double t = c - partition_sum(amps, label, false);
        if (t != 0.0) target[label] = t;
      }
    }
  }
  return amps;
}

OverlapSet cc_to_ci(const AmplitudeSet& amps, int max_rank) {
  check_rank(max_rank);
  const auto& sp = amps.space;
  const int n = sp.n_spatial;
  OverlapSet out;
  out.n_spatial = n;
  out.reference = sp.reference();
  out.c0 = 1.0;

  std::set<int> o_set, v_set;
  for (int i = 0; i < sp.o(); ++i)
    for (int a = 0; a < sp.v(); ++a)
      if (amps.t1(i, a) != 0.0) {
        o_set.insert(sp.occupied[i]);
        v_set.insert(sp.virtuals[a]);
      }
  const int o = sp.o(), v = sp.v();
  for (int i = 0; i < o; ++i)
    for (int j = i + 1; j < o; ++j)
      for (int a = 0; a < v; ++a)
        for (int b = a + 1; b < v; ++b)
          if (amps.t2_at(i, j, a, b) != 0.0) {
            o_set.insert({sp.occupied[i], sp.occupied[j]});
            v_set.insert({sp.virtuals[a], sp.virtuals[b]});
          }
  const auto nonzero = [](double x) { return x != 0.0; };
  for (const auto* m : {&amps.t3, &amps.t4}) {
    const auto [mo, mv] = support_of(*m, nonzero);
    o_set.insert(mo.begin(), mo.end());
    v_set.insert(mv.begin(), mv.end());
  }
  const Index occ(o_set.begin(), o_set.end()), vir(v_set.begin(), v_set.end());
  for (int rank = 1; rank <= max_rank; ++rank) {
    for (const auto& label : enumerate_labels(occ, vir, rank, n)) {
      out.entries[label] = {partition_sum(amps, label, true), std::nullopt};
    }
  }
  return out;
}

}  // namespace splitcc
