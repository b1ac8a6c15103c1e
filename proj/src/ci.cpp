// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#include "splitcc/ci.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "splitcc/errors.hpp"

namespace splitcc {

double diagonal_energy(const SpinOrbitalBasis& basis, std::uint64_t bits) {
  const auto occ = occupied_list(bits);
  double e = basis.e_core;
  for (int i : occ) {
    e += basis.h(i, i);
    for (int j : occ) e += 0.5 * basis.g_at(i, j, i, j);
  }
  return e;
}

double hamiltonian_element(const SpinOrbitalBasis& basis, std::uint64_t bra,
                           std::uint64_t ket) {
  const std::uint64_t removed = ket & ~bra;
  const std::uint64_t added = bra & ~ket;
  const int rank = std::popcount(removed);
  if (rank != std::popcount(added)) return 0.0;
  if (rank == 0) return diagonal_energy(basis, ket);
  if (rank == 1) {
    const int r = std::countr_zero(removed);
    const int s = std::countr_zero(added);
    const auto sb = apply_excitation(ket, &r, &s, 1);
    double v = basis.h(s, r);
    std::uint64_t rest = ket & ~removed;
    while (rest) {
      const int m = std::countr_zero(rest);
      rest &= rest - 1;
      v += basis.g_at(s, m, r, m);
    }
    return sb->sign * v;
  }
  if (rank == 2) {
    int r[2], s[2];
    r[0] = std::countr_zero(removed);
    r[1] = std::countr_zero(removed & (removed - 1));
    s[0] = std::countr_zero(added);
    s[1] = std::countr_zero(added & (added - 1));
    const auto sb = apply_excitation(ket, r, s, 2);
    return sb->sign * basis.g_at(s[0], s[1], r[0], r[1]);
  }
  return 0.0;
}

namespace {

void append_strings(int n, int k, std::vector<std::uint64_t>& out) {
  if (k == 0) {
    out.push_back(0);
    return;
  }
  if (k > n) return;
  std::uint64_t v = (1ULL << k) - 1ULL;
  const std::uint64_t limit = 1ULL << n;
  while (v < limit) {
    out.push_back(v);
    // Gosper's hack: next integer with the same popcount.
    const std::uint64_t c = v & (~v + 1ULL);
    const std::uint64_t r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }
}

Determinant reference_of(const SpinOrbitalBasis& basis) {
  std::uint64_t bits = 0;
  for (int so : basis.reference_occupation) bits |= 1ULL << so;
  return from_spin_bits(bits, basis.n_spatial);
}

CIVector make_state(const SpinOrbitalBasis& basis,
                    std::span<const Determinant> dets,
                    std::vector<double> coeffs) {
  fix_sign(coeffs);
  CIVector v;
  v.n_spatial = basis.n_spatial;
  v.basis.assign(dets.begin(), dets.end());
  v.coefficients.assign(coeffs.begin(), coeffs.end());
  v.reference = reference_of(basis);
  return v;
}

// Sparse Hamiltonian built by generating singles and doubles of each
// determinant and looking them up in the basis.
Eigen::SparseMatrix<double> sparse_hamiltonian(
    const SpinOrbitalBasis& basis, const std::vector<std::uint64_t>& bits) {
  const int nso = basis.n_spin_orbitals();
  const std::uint64_t all = nso >= 64 ? ~0ULL : ((1ULL << nso) - 1ULL);
  std::unordered_map<std::uint64_t, int> index;
  index.reserve(bits.size() * 2);
  for (std::size_t i = 0; i < bits.size(); ++i) index[bits[i]] = static_cast<int>(i);

  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t col = 0; col < bits.size(); ++col) {
    const std::uint64_t ket = bits[col];
    trip.emplace_back(col, col, diagonal_energy(basis, ket));
    const auto occ = occupied_list(ket);
    const auto vir = occupied_list(all & ~ket);
    auto add = [&](std::uint64_t bra) {
      auto it = index.find(bra);
      if (it == index.end() || it->second <= static_cast<int>(col)) return;
      const double v = hamiltonian_element(basis, bra, ket);
      if (v != 0.0) {
        trip.emplace_back(it->second, col, v);
        trip.emplace_back(col, it->second, v);
      }
    };
    for (std::size_t a = 0; a < occ.size(); ++a) {
      const std::uint64_t k1 = ket & ~(1ULL << occ[a]);
      for (int v1 : vir) add(k1 | (1ULL << v1));
      for (std::size_t b = a + 1; b < occ.size(); ++b) {
        const std::uint64_t k2 = k1 & ~(1ULL << occ[b]);
        for (std::size_t c = 0; c < vir.size(); ++c) {
          for (std::size_t d = c + 1; d < vir.size(); ++d) {
            add(k2 | (1ULL << vir[c]) | (1ULL << vir[d]));
          }
        }
      }
    }
  }
  Eigen::SparseMatrix<double> H(bits.size(), bits.size());
  H.setFromTriplets(trip.begin(), trip.end());
  return H;
}

CISolution davidson(const SpinOrbitalBasis& basis,
                    std::span<const Determinant> dets, int n_roots,
                    const CIOptions& options) {
  const int n = basis.n_spatial;
  std::vector<std::uint64_t> bits(dets.size());
  for (std::size_t i = 0; i < dets.size(); ++i) bits[i] = spin_bits(dets[i], n);
  const auto H = sparse_hamiltonian(basis, bits);
  const Eigen::Index dim = H.rows();
  const Eigen::VectorXd diag = H.diagonal();

  // Guess vectors: unit vectors on the lowest diagonal elements plus a small
  // fixed spread, so that no symmetry sector is absent from the subspace.
  std::vector<Eigen::Index> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return diag[a] < diag[b]; });
  const int n_guess = std::min<Eigen::Index>(dim, std::max(2 * n_roots, n_roots + 4));
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(dim, n_guess);
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> spread(-1e-3, 1e-3);
  for (int k = 0; k < n_guess; ++k) {
    for (Eigen::Index i = 0; i < dim; ++i) V(i, k) = spread(rng);
    V(order[k], k) += 1.0;
  }
  V = Eigen::HouseholderQR<Eigen::MatrixXd>(V).householderQ() *
      Eigen::MatrixXd::Identity(dim, n_guess);
  Eigen::MatrixXd HV = H * V;

  Eigen::VectorXd theta;
  Eigen::MatrixXd X;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    const Eigen::MatrixXd S = V.transpose() * HV;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (S + S.transpose()));
    theta = es.eigenvalues().head(n_roots);
    const Eigen::MatrixXd y = es.eigenvectors().leftCols(n_roots);
    X = V * y;
    const Eigen::MatrixXd R = HV * y - X * theta.asDiagonal();

    std::vector<Eigen::VectorXd> corrections;
    double max_res = 0.0;
    for (int k = 0; k < n_roots; ++k) {
      const double rn = R.col(k).norm();
      max_res = std::max(max_res, rn);
      if (rn <= options.residual_tolerance) continue;
      Eigen::VectorXd c(dim);
      for (Eigen::Index i = 0; i < dim; ++i) {
        double den = diag[i] - theta[k];
        if (std::abs(den) < 1e-8) den = den < 0 ? -1e-8 : 1e-8;
        c[i] = R(i, k) / den;
      }
      corrections.push_back(std::move(c));
    }
    if (max_res <= options.residual_tolerance) {
      CISolution out;
      out.iterations = iter;
      for (int k = 0; k < n_roots; ++k) {
        out.energies.push_back(theta[k]);
        std::vector<double> c(X.col(k).data(), X.col(k).data() + dim);
        out.states.push_back(make_state(basis, dets, std::move(c)));
      }
      return out;
    }
    if (V.cols() + static_cast<Eigen::Index>(corrections.size()) >
        options.max_subspace) {
      // Restart from the current Ritz vectors.
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
      V = qr.householderQ() * Eigen::MatrixXd::Identity(dim, n_roots);
      HV = H * V;
    }
    for (auto& c : corrections) {
      for (int pass = 0; pass < 2; ++pass) c -= V * (V.transpose() * c);
      const double cn = c.norm();
      if (cn < 1e-12) continue;
      c /= cn;
      V.conservativeResize(Eigen::NoChange, V.cols() + 1);
      V.col(V.cols() - 1) = c;
      HV.conservativeResize(Eigen::NoChange, HV.cols() + 1);
      HV.col(HV.cols() - 1) = H * c;
    }
  }
  throw ConvergenceError("Davidson did not converge within the iteration cap");
}

}  // namespace

void fix_sign(std::vector<double>& coefficients) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < coefficients.size(); ++i) {
    if (std::abs(coefficients[i]) > std::abs(coefficients[best]) + 1e-14) {
      best = i;
    }
  }
  if (!coefficients.empty() && coefficients[best] < 0) {
    for (double& c : coefficients) c = -c;
  }
}

std::vector<Determinant> enumerate_determinants(
    int n_spatial, int n_alpha, int n_beta, std::optional<int> max_rank,
    std::optional<Determinant> reference) {
  if (n_alpha < 0 || n_beta < 0 || n_alpha > n_spatial || n_beta > n_spatial) {
    throw std::invalid_argument("electron counts exceed orbital count");
  }
  if (n_spatial > 32) throw std::invalid_argument("at most 32 spatial orbitals");
  if (max_rank && !reference) {
    throw std::invalid_argument("max_rank requires a reference determinant");
  }
  std::vector<std::uint64_t> as, bs;
  append_strings(n_spatial, n_alpha, as);
  append_strings(n_spatial, n_beta, bs);
  std::vector<Determinant> out;
  for (auto a : as) {
    for (auto b : bs) {
      if (max_rank) {
        const int r = (std::popcount(a ^ reference->alpha) +
                       std::popcount(b ^ reference->beta)) / 2;
        if (r > *max_rank) continue;
      }
      out.push_back({a, b});
    }
  }
  return out;
}

double CIVector::norm() const {
  double s = 0.0;
  for (const auto& c : coefficients) s += std::norm(c);
  return std::sqrt(s);
}

std::complex<double> CIVector::coefficient(const Determinant& d) const {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i] == d) return coefficients[i];
  }
  return 0.0;
}

bool CIVector::is_real(double tolerance) const {
  return std::all_of(coefficients.begin(), coefficients.end(),
                     [&](const auto& c) { return std::abs(c.imag()) <= tolerance; });
}

CISolution solve_ci(const SpinOrbitalBasis& basis,
                    std::span<const Determinant> dets, int n_roots,
                    const CIOptions& options) {
  if (dets.empty()) throw std::invalid_argument("empty determinant basis");
  if (n_roots < 1 || static_cast<std::size_t>(n_roots) > dets.size()) {
    throw std::invalid_argument("n_roots out of range");
  }
  const int n = basis.n_spatial;
  const std::uint64_t width_mask = n >= 32 ? ~0ULL : ((1ULL << n) - 1ULL);
  for (const auto& d : dets) {
    if ((d.alpha & ~width_mask) || (d.beta & ~width_mask)) {
      throw std::invalid_argument("determinant wider than the orbital basis");
    }
  }
  if (dets.size() > options.dense_limit) {
    return davidson(basis, dets, n_roots, options);
  }

  const Eigen::Index dim = static_cast<Eigen::Index>(dets.size());
  std::vector<std::uint64_t> bits(dets.size());
  for (std::size_t i = 0; i < dets.size(); ++i) bits[i] = spin_bits(dets[i], n);
  Eigen::MatrixXd H(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = hamiltonian_element(basis, bits[i], bits[j]);
      H(i, j) = v;
      H(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("dense eigensolver failed");
  }
  CISolution out;
  for (int k = 0; k < n_roots; ++k) {
    out.energies.push_back(es.eigenvalues()[k]);
    const auto col = es.eigenvectors().col(k);
    std::vector<double> c(col.data(), col.data() + dim);
    out.states.push_back(make_state(basis, dets, std::move(c)));
  }
  return out;
}

}  // namespace splitcc
