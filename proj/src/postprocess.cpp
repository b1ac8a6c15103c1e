// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "splitcc/cluster.hpp"
#include "splitcc/errors.hpp"

namespace splitcc {

CIVector phase_align(const CIVector& state) {
  if (state.coefficients.empty()) throw std::invalid_argument("empty CI vector");
  std::size_t best = 0;
  for (std::size_t i = 1; i < state.coefficients.size(); ++i) {
    if (std::abs(state.coefficients[i]) > std::abs(state.coefficients[best])) best = i;
  }
  const double mag = std::abs(state.coefficients[best]);
  if (mag == 0.0) throw std::invalid_argument("zero CI vector");
  const std::complex<double> rot = std::conj(state.coefficients[best]) / mag;

  CIVector out = state;
  double norm2 = 0.0;
  for (auto& c : out.coefficients) {
    c = (c * rot).real();
    norm2 += std::norm(c);
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& c : out.coefficients) c *= scale;
  return out;
}

std::pair<OverlapSet, FilterReport> filter_variance(const OverlapSet& overlaps,
                                                    double k, FilterRule rule) {
  if (k < 0.0) throw std::invalid_argument("significance multiple must be >= 0");
  OverlapSet out = overlaps;
  FilterReport report;
  report.k = k;
  for (auto& [label, e] : out.entries) {
    if (!e.variance) continue;
    if (*e.variance < 0.0) throw std::invalid_argument("negative variance");
    if (k == 0.0) continue;
    const double bound = k * std::sqrt(*e.variance);
    const bool significant = std::abs(e.value) > bound;
    const bool zero = rule == FilterRule::keep_significant ? !significant : significant;
    if (zero && e.value != 0.0) {
      e.value = 0.0;
      ++report.n_zeroed_by_variance;
    }
  }
  return {std::move(out), report};
}

std::pair<AmplitudeSet, FilterReport> drop_disconnected(
    const AmplitudeSet& amps, const OverlapSet& overlaps,
    double ci_zero_threshold, double k) {
  AmplitudeSet out = amps;
  FilterReport report;
  report.k = k;
  report.ci_zero_threshold = ci_zero_threshold;
  auto prune = [&](std::map<ExcitationLabel, double>& m) {
    for (auto it = m.begin(); it != m.end();) {
      double threshold = ci_zero_threshold;
      double c = 0.0;
      const auto e = overlaps.entries.find(it->first);
      if (e != overlaps.entries.end()) {
        c = e->second.value;
        if (e->second.variance) {
          threshold = std::max(threshold, k * std::sqrt(*e->second.variance));
        }
      }
      if (std::abs(c) <= threshold) {
        it = m.erase(it);
        ++report.n_dropped_disconnected;
      } else {
        ++it;
      }
    }
  };
  prune(out.t3);
  prune(out.t4);
  return {std::move(out), report};
}

AmplitudeSet embed_active(const AmplitudeSet& amps, const ActiveSpaceSpec& spec,
                          const SpinOrbitalBasis& full_space, EmbedMode mode) {
  validate_active_space(full_space, spec);
  const int n = full_space.n_spatial;
  const int k = spec.size();
  AmplitudeSet out = AmplitudeSet::zeros(make_space(full_space));
  const auto& fs = out.space;

  // Local spin orbital of `amps` -> full spin orbital.
  std::vector<int> to_full;
  const int n_local = amps.space.n_spatial;
  if (n_local == k) {
    to_full.resize(2 * k);
    for (int t = 0; t < k; ++t) {
      to_full[t] = spec.active_spatial_orbitals[t];
      to_full[t + k] = spec.active_spatial_orbitals[t] + n;
    }
  } else if (n_local == n) {
    to_full.resize(2 * n);
    for (int p = 0; p < 2 * n; ++p) to_full[p] = p;
  } else {
    throw std::invalid_argument("amplitudes match neither active nor full space");
  }

  std::vector<char> in_active(2 * n, 0);
  for (int p : spec.active_spatial_orbitals) {
    in_active[p] = 1;
    in_active[p + n] = 1;
  }
  const auto& ls = amps.space;
  std::vector<int> occ_map(ls.o()), vir_map(ls.v());
  for (int i = 0; i < ls.o(); ++i) {
    const int p = to_full[ls.occupied[i]];
    occ_map[i] = fs.occ_pos[p];
    if (occ_map[i] < 0) throw std::invalid_argument("active reference inconsistent with full reference");
  }
  for (int a = 0; a < ls.v(); ++a) {
    const int p = to_full[ls.virtuals[a]];
    vir_map[a] = fs.vir_pos[p];
    if (vir_map[a] < 0) throw std::invalid_argument("active reference inconsistent with full reference");
  }
  auto check_active = [&](int local_so, double value) {
    if (value != 0.0 && !in_active[to_full[local_so]]) {
      throw std::invalid_argument("amplitude index outside the active window");
    }
  };

  for (int i = 0; i < ls.o(); ++i)
    for (int a = 0; a < ls.v(); ++a) {
      const double t = amps.t1(i, a);
      check_active(ls.occupied[i], t);
      check_active(ls.virtuals[a], t);
      out.t1(occ_map[i], vir_map[a]) = t;
    }
  for (int i = 0; i < ls.o(); ++i)
    for (int j = 0; j < ls.o(); ++j)
      for (int a = 0; a < ls.v(); ++a)
        for (int b = 0; b < ls.v(); ++b) {
          const double t = amps.t2_at(i, j, a, b);
          if (t == 0.0) continue;
          for (int so : {ls.occupied[i], ls.occupied[j], ls.virtuals[a], ls.virtuals[b]}) {
            check_active(so, t);
          }
          out.t2[out.t2_index(occ_map[i], occ_map[j], vir_map[a], vir_map[b])] = t;
        }
  auto map_sparse = [&](const std::map<ExcitationLabel, double>& src,
                        std::map<ExcitationLabel, double>& dst) {
    for (const auto& [label, t] : src) {
      std::vector<int> o, v;
      for (int q = 0; q < label.rank; ++q) {
        check_active(label.occ[q], t);
        check_active(label.virt[q], t);
        o.push_back(to_full[label.occ[q]]);
        v.push_back(to_full[label.virt[q]]);
      }
      const int parity = sort_parity(o) * sort_parity(v);
      dst[ExcitationLabel(o, v)] = parity * t;
    }
  };
  map_sparse(amps.t3, out.t3);
  map_sparse(amps.t4, out.t4);

  if (mode == EmbedMode::tailored) {
    const int o = fs.o(), v = fs.v();
    out.frozen_t1.assign(static_cast<std::size_t>(o) * v, 0);
    out.frozen_t2.assign(out.t2.size(), 0);
    for (int i = 0; i < o; ++i)
      for (int a = 0; a < v; ++a)
        out.frozen_t1[i * v + a] =
            in_active[fs.occupied[i]] && in_active[fs.virtuals[a]];
    for (int i = 0; i < o; ++i)
      for (int j = 0; j < o; ++j)
        for (int a = 0; a < v; ++a)
          for (int b = 0; b < v; ++b)
            out.frozen_t2[out.t2_index(i, j, a, b)] =
                i != j && a != b && in_active[fs.occupied[i]] && in_active[fs.occupied[j]] &&
                in_active[fs.virtuals[a]] && in_active[fs.virtuals[b]];
  }
  return out;
}

}  // namespace splitcc
