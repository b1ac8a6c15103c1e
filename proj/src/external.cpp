// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

// Projections <Phi_1|H|X> and <Phi_2|H|X> for X = T3|0>, T4|0>, T1 T3|0>,
// evaluated determinant by determinant with Slater-Condon rules.

#include <algorithm>
#include <map>
#include <stdexcept>

#include "cc_internal.hpp"
#include "splitcc/ci.hpp"

namespace splitcc::detail {

namespace {

// Adds `value` to the doubles residual at canonical label (i<j, a<b) and its
// antisymmetric images.
void add_double(const AmplitudeSpace& sp, const ExcitationLabel& label, double value,
                std::vector<double>& r2) {
  const std::size_t o = sp.o(), v = sp.v();
  const int i = sp.occ_pos[label.occ[0]], j = sp.occ_pos[label.occ[1]];
  const int a = sp.vir_pos[label.virt[0]], b = sp.vir_pos[label.virt[1]];
  auto id = [&](int p, int q, int r, int s) { return ((p * o + q) * v + r) * v + s; };
  r2[id(i, j, a, b)] += value;
  r2[id(j, i, a, b)] -= value;
  r2[id(i, j, b, a)] -= value;
  r2[id(j, i, b, a)] += value;
}

// Contributions of the ket `coeff * |ket_bits>` (a determinant of rank 3 or
// 4 relative to `ref`) to the singles and doubles projections.
class Projector {
 public:
  Projector(const SpinOrbitalBasis& basis, const AmplitudeSpace& sp)
      : basis_(basis), sp_(sp), ref_(sp.reference_bits()) {}

  void project(std::uint64_t ket, double coeff, Eigen::MatrixXd* r1,
               std::vector<double>* r2) const {
    const auto holes = occupied_list(ref_ & ~ket);
    const auto parts = occupied_list(ket & ~ref_);
    const int rank = static_cast<int>(holes.size());
    auto emit = [&](std::uint64_t bra) {
      const int target = excitation_rank(bra, ref_);
      if (target == 1 && !r1) return;
      if (target == 2 && !r2) return;
      const double h = hamiltonian_element(basis_, bra, ket);
      if (h == 0.0) return;
      const ExcitationLabel label = label_between(ref_, bra);
      const double val = coeff * excitation_phase(ref_, label) * h;
      if (target == 1) {
        (*r1)(sp_.occ_pos[label.occ[0]], sp_.vir_pos[label.virt[0]]) += val;
      } else {
        add_double(sp_, label, val, *r2);
      }
    };
    auto bit = [](int p) { return 1ULL << p; };

    // Remove two particles and refill two holes: rank drops by two.
    for (std::size_t p1 = 0; p1 < parts.size(); ++p1)
      for (std::size_t p2 = p1 + 1; p2 < parts.size(); ++p2)
        for (std::size_t h1 = 0; h1 < holes.size(); ++h1)
          for (std::size_t h2 = h1 + 1; h2 < holes.size(); ++h2)
            emit((ket & ~bit(parts[p1]) & ~bit(parts[p2])) | bit(holes[h1]) | bit(holes[h2]));
    if (rank != 3 || !r2) return;

    // Rank 3 -> 2: one particle-hole annihilation plus at most one
    // rank-preserving substitution.
    std::vector<int> free_virt, spectators;
    for (int a : sp_.virtuals)
      if (!(ket & bit(a))) free_virt.push_back(a);
    for (int m : sp_.occupied)
      if (ket & bit(m)) spectators.push_back(m);
    for (int p : parts)
      for (int h : holes) emit((ket & ~bit(p)) | bit(h));
    for (std::size_t p1 = 0; p1 < parts.size(); ++p1)
      for (std::size_t p2 = p1 + 1; p2 < parts.size(); ++p2)
        for (int h : holes)
          for (int a : free_virt)
            emit((ket & ~bit(parts[p1]) & ~bit(parts[p2])) | bit(h) | bit(a));
    for (int p : parts)
      for (std::size_t h1 = 0; h1 < holes.size(); ++h1)
        for (std::size_t h2 = h1 + 1; h2 < holes.size(); ++h2)
          for (int m : spectators)
            emit((ket & ~bit(p) & ~bit(m)) | bit(holes[h1]) | bit(holes[h2]));
  }

  std::uint64_t reference() const { return ref_; }

 private:
  const SpinOrbitalBasis& basis_;
  const AmplitudeSpace& sp_;
  std::uint64_t ref_;
};

// Antisymmetrized product [t1 ^ s1]_{ijab} added with `scale` to r2.
void add_t1_wedge(const Eigen::MatrixXd& t1, const Eigen::MatrixXd& s1, double scale,
                  int o, int v, std::vector<double>& r2) {
  auto id = [&](int i, int j, int a, int b) {
    return ((static_cast<std::size_t>(i) * o + j) * v + a) * v + b;
  };
  for (int i = 0; i < o; ++i)
    for (int j = 0; j < o; ++j)
      for (int a = 0; a < v; ++a)
        for (int b = 0; b < v; ++b)
          r2[id(i, j, a, b)] += scale * (t1(i, a) * s1(j, b) - t1(i, b) * s1(j, a) -
                                         t1(j, a) * s1(i, b) + t1(j, b) * s1(i, a));
}

}  // namespace

ExternalCorrection::ExternalCorrection(const SpinOrbitalBasis& basis,
                                       const AmplitudeSet& external, T1T3Mode mode)
    : basis_(&basis), space_(external.space), mode_(mode) {
  const int o = space_.o(), v = space_.v();
  r1_t3_ = Eigen::MatrixXd::Zero(o, v);
  r2_fixed_.assign(static_cast<std::size_t>(o) * o * v * v, 0.0);
  empty_ = external.t3.empty() && external.t4.empty();
  if (empty_) return;

  const Projector proj(basis, space_);
  const std::uint64_t ref = proj.reference();
  for (const auto& [label, t] : external.t3) {
    if (t == 0.0) continue;
    const double c = t * excitation_phase(ref, label);
    t3_.emplace_back(label, t);
    proj.project(excite_bits(ref, label), c, &r1_t3_, &r2_fixed_);
  }
  for (const auto& [label, t] : external.t4) {
    if (t == 0.0) continue;
    proj.project(excite_bits(ref, label), t * excitation_phase(ref, label), nullptr,
                 &r2_fixed_);
  }
  if (mode_ == T1T3Mode::frozen) add_t1t3(external.t1, r2_fixed_);
}

void ExternalCorrection::add_t1t3(const Eigen::MatrixXd& t1, std::vector<double>& r2) const {
  if (t3_.empty()) return;
  const int o = space_.o(), v = space_.v();
  const std::uint64_t ref = space_.reference_bits();
  // Coefficients of T1 T3 |0> on canonical rank-4 labels.
  std::map<ExcitationLabel, double> quads;
  for (int k = 0; k < o; ++k)
    for (int c = 0; c < v; ++c) {
      const double s = t1(k, c);
      if (s == 0.0) continue;
      const int K = space_.occupied[k], C = space_.virtuals[c];
      for (const auto& [label, t] : t3_) {
        std::vector<int> occ{K}, vir{C};
        for (int q = 0; q < 3; ++q) {
          occ.push_back(label.occ[q]);
          vir.push_back(label.virt[q]);
        }
        const int sign = sort_parity(occ) * sort_parity(vir);
        if (sign == 0) continue;
        quads[ExcitationLabel(occ, vir)] += sign * s * t;
      }
    }
  const Projector proj(*basis_, space_);
  for (const auto& [label, y] : quads) {
    if (y == 0.0) continue;
    proj.project(excite_bits(ref, label), y * excitation_phase(ref, label), nullptr, &r2);
  }
  // Remove the disconnected piece t1 ^ <Phi_1|H T3|0>.
  add_t1_wedge(t1, r1_t3_, -1.0, o, v, r2);
}

void ExternalCorrection::add(const Eigen::MatrixXd& t1, Eigen::MatrixXd& r1,
                             std::vector<double>& r2) const {
  if (empty_) return;
  r1 += r1_t3_;
  for (std::size_t k = 0; k < r2.size(); ++k) r2[k] += r2_fixed_[k];
  if (mode_ == T1T3Mode::iterative) add_t1t3(t1, r2);
}

}  // namespace splitcc::detail
