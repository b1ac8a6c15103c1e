// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#include "splitcc/cc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "cc_internal.hpp"
#include "splitcc/errors.hpp"

namespace splitcc {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapR = Eigen::Map<RowMat>;
using CMapR = Eigen::Map<const RowMat>;

// Dense 4-index block, row-major.
struct Block {
  int d0 = 0, d1 = 0, d2 = 0, d3 = 0;
  std::vector<double> x;

  Block() = default;
  Block(int a, int b, int c, int d)
      : d0(a), d1(b), d2(c), d3(d), x(static_cast<std::size_t>(a) * b * c * d, 0.0) {}
  std::size_t idx(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * d1 + j) * d2 + k) * d3 + l;
  }
  double operator()(int i, int j, int k, int l) const { return x[idx(i, j, k, l)]; }
  double& operator()(int i, int j, int k, int l) { return x[idx(i, j, k, l)]; }
};

// Occupied/virtual blocks of the Fock matrix and antisymmetrized integrals.
struct MOBlocks {
  int o = 0, v = 0;
  double e_hf = 0.0;
  Eigen::MatrixXd f_oo, f_ov, f_vv;
  Block oooo, ooov, oovo, oovv, ovov, ovvo, ovvv, ovoo, vvvo, vvvv;
  Block aoef;  // <am||ef> as [a][m][e][f]
  RowMat ovvo_mejb;  // <mb||ej> packed as (m,e) x (j,b)
};

MOBlocks make_blocks(const SpinOrbitalBasis& basis, const AmplitudeSpace& sp) {
  MOBlocks m;
  m.o = sp.o();
  m.v = sp.v();
  const auto fr = build_fock(basis);
  m.e_hf = fr.e_hf;
  const auto& O = sp.occupied;
  const auto& V = sp.virtuals;
  auto sub = [&](const std::vector<int>& r, const std::vector<int>& c) {
    Eigen::MatrixXd out(r.size(), c.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) out(i, j) = fr.fock(r[i], c[j]);
    return out;
  };
  m.f_oo = sub(O, O);
  m.f_ov = sub(O, V);
  m.f_vv = sub(V, V);
  auto fill = [&](const std::vector<int>& A, const std::vector<int>& B,
                  const std::vector<int>& C, const std::vector<int>& D) {
    Block b(A.size(), B.size(), C.size(), D.size());
    for (int p = 0; p < b.d0; ++p)
      for (int q = 0; q < b.d1; ++q)
        for (int r = 0; r < b.d2; ++r)
          for (int s = 0; s < b.d3; ++s)
            b(p, q, r, s) = basis.g_at(A[p], B[q], C[r], D[s]);
    return b;
  };
  m.oooo = fill(O, O, O, O);
  m.ooov = fill(O, O, O, V);
  m.oovo = fill(O, O, V, O);
  m.oovv = fill(O, O, V, V);
  m.ovov = fill(O, V, O, V);
  m.ovvo = fill(O, V, V, O);
  m.ovvv = fill(O, V, V, V);
  m.ovoo = fill(O, V, O, O);
  m.vvvo = fill(V, V, V, O);
  m.vvvv = fill(V, V, V, V);
  m.aoef = fill(V, O, V, V);
  const int o = m.o, v = m.v;
  m.ovvo_mejb = RowMat(o * v, o * v);
  for (int mm = 0; mm < o; ++mm)
    for (int e = 0; e < v; ++e)
      for (int j = 0; j < o; ++j)
        for (int b = 0; b < v; ++b) m.ovvo_mejb(mm * v + e, j * v + b) = m.ovvo(mm, b, e, j);
  return m;
}

double energy(const MOBlocks& m, const Eigen::MatrixXd& t1, const std::vector<double>& t2) {
  const int o = m.o, v = m.v;
  double e = (m.f_ov.array() * t1.array()).sum();
  for (int i = 0; i < o; ++i)
    for (int j = 0; j < o; ++j)
      for (int a = 0; a < v; ++a)
        for (int b = 0; b < v; ++b) {
          const double g = m.oovv(i, j, a, b);
          if (g == 0.0) continue;
          e += 0.25 * g * t2[m.oovv.idx(i, j, a, b)] + 0.5 * g * t1(i, a) * t1(j, b);
        }
  return e;
}

// Singles and doubles projections of e^{-T} H e^{T} for T = T1 + T2.
void ccsd_residual(const MOBlocks& m, const Eigen::MatrixXd& t1,
                   const std::vector<double>& t2, Eigen::MatrixXd& r1,
                   std::vector<double>& r2) {
  const int o = m.o, v = m.v;
  const std::size_t n2 = t2.size();
  auto id = [&](int i, int j, int a, int b) {
    return ((static_cast<std::size_t>(i) * o + j) * v + a) * v + b;
  };

  std::vector<double> tau(n2), taut(n2);
  for (int i = 0; i < o; ++i)
    for (int j = 0; j < o; ++j)
      for (int a = 0; a < v; ++a)
        for (int b = 0; b < v; ++b) {
          const std::size_t k = id(i, j, a, b);
          const double x = t1(i, a) * t1(j, b) - t1(i, b) * t1(j, a);
          tau[k] = t2[k] + x;
          taut[k] = t2[k] + 0.5 * x;
        }
  const CMapR G(m.oovv.x.data(), o * o, v * v);
  const CMapR Tau(tau.data(), o * o, v * v);

  // F_ae
  Eigen::MatrixXd Fae = m.f_vv - 0.5 * t1.transpose() * m.f_ov;
  for (int mm = 0; mm < o; ++mm)
    for (int f = 0; f < v; ++f) {
      const double t = t1(mm, f);
      if (t == 0.0) continue;
      for (int a = 0; a < v; ++a)
        for (int e = 0; e < v; ++e) Fae(a, e) += t * m.ovvv(mm, a, f, e);
    }
  for (int mm = 0; mm < o; ++mm)
    for (int n = 0; n < o; ++n) {
      const CMapR A(taut.data() + id(mm, n, 0, 0), v, v);
      const CMapR B(m.oovv.x.data() + m.oovv.idx(mm, n, 0, 0), v, v);
      Fae.noalias() -= 0.5 * A * B.transpose();
    }

  // F_mi
  Eigen::MatrixXd Fmi = m.f_oo + 0.5 * m.f_ov * t1.transpose();
  for (int mm = 0; mm < o; ++mm)
    for (int n = 0; n < o; ++n)
      for (int i = 0; i < o; ++i)
        for (int e = 0; e < v; ++e) Fmi(mm, i) += t1(n, e) * m.ooov(mm, n, i, e);
  {
    const CMapR A(taut.data(), o, o * v * v);
    const CMapR B(m.oovv.x.data(), o, o * v * v);
    Fmi.noalias() += 0.5 * B * A.transpose();
  }

  // F_me
  Eigen::MatrixXd Fme = m.f_ov;
  for (int mm = 0; mm < o; ++mm)
    for (int n = 0; n < o; ++n)
      for (int e = 0; e < v; ++e)
        for (int f = 0; f < v; ++f) Fme(mm, e) += t1(n, f) * m.oovv(mm, n, e, f);

  // W_mnij as (mn) x (ij)
  RowMat Wmn = CMapR(m.oooo.x.data(), o * o, o * o);
  for (int mm = 0; mm < o; ++mm)
    for (int n = 0; n < o; ++n)
      for (int i = 0; i < o; ++i)
        for (int j = 0; j < o; ++j) {
          double x = 0.0;
          for (int e = 0; e < v; ++e) {
            x += t1(j, e) * m.ooov(mm, n, i, e) - t1(i, e) * m.ooov(mm, n, j, e);
          }
          Wmn(mm * o + n, i * o + j) += x;
        }
  Wmn.noalias() += 0.25 * G * Tau.transpose();

  // W_abef as (ab) x (ef)
  RowMat Wab = CMapR(m.vvvv.x.data(), v * v, v * v);
  {
    const RowMat Y = t1.transpose() * CMapR(m.ovvv.x.data(), o, v * v * v);
    for (int a = 0; a < v; ++a)
      for (int b = 0; b < v; ++b) {
        auto row = Wab.row(a * v + b);
        row += Y.row(b).segment(a * v * v, v * v) - Y.row(a).segment(b * v * v, v * v);
      }
    Wab.noalias() += 0.25 * Tau.transpose() * G;
  }

  // W_mbej as (me) x (jb)
  RowMat Wme = m.ovvo_mejb;
  for (int mm = 0; mm < o; ++mm)
    for (int e = 0; e < v; ++e)
      for (int j = 0; j < o; ++j)
        for (int b = 0; b < v; ++b) {
          double x = 0.0;
          for (int f = 0; f < v; ++f) x += t1(j, f) * m.ovvv(mm, b, e, f);
          for (int n = 0; n < o; ++n) x -= t1(n, b) * m.oovo(mm, n, e, j);
          Wme(mm * v + e, j * v + b) += x;
        }
  {
    RowMat A(o * v, o * v), B(o * v, o * v);
    for (int mm = 0; mm < o; ++mm)
      for (int e = 0; e < v; ++e)
        for (int n = 0; n < o; ++n)
          for (int f = 0; f < v; ++f) A(mm * v + e, n * v + f) = m.oovv(mm, n, e, f);
    for (int n = 0; n < o; ++n)
      for (int f = 0; f < v; ++f)
        for (int j = 0; j < o; ++j)
          for (int b = 0; b < v; ++b)
            B(n * v + f, j * v + b) = 0.5 * t2[id(j, n, f, b)] + t1(j, f) * t1(n, b);
    Wme.noalias() -= A * B;
  }

  // Singles.
  r1 = m.f_ov + t1 * Fae.transpose() - Fmi.transpose() * t1;
  for (int i = 0; i < o; ++i)
    for (int a = 0; a < v; ++a) {
      double x = 0.0;
      for (int mm = 0; mm < o; ++mm)
        for (int e = 0; e < v; ++e) {
          x += t2[id(i, mm, a, e)] * Fme(mm, e);
          x -= t1(mm, e) * m.ovov(mm, a, i, e);
        }
      for (int mm = 0; mm < o; ++mm)
        for (int n = 0; n < o; ++n)
          for (int e = 0; e < v; ++e) x -= 0.5 * t2[id(mm, n, a, e)] * m.oovo(n, mm, e, i);
      r1(i, a) += x;
    }
  {
    const CMapR T(t2.data(), o, o * v * v);
    const CMapR A(m.aoef.x.data(), v, o * v * v);
    r1.noalias() += 0.5 * T * A.transpose();
  }

  // Doubles.
  r2 = m.oovv.x;
  MapR R(r2.data(), o * o, v * v);
  R.noalias() += 0.5 * Wmn.transpose() * Tau;
  R.noalias() += 0.5 * Tau * Wab.transpose();

  {
    const Eigen::MatrixXd Fp = Fae - 0.5 * t1.transpose() * Fme;
    RowMat Z = CMapR(t2.data(), o * o * v, v) * Fp.transpose();
    const Eigen::MatrixXd Fpp = Fmi + 0.5 * Fme * t1.transpose();
    std::vector<double> Z2(n2);
    for (int i = 0; i < o; ++i) {
      MapR out(Z2.data() + id(i, 0, 0, 0), o, v * v);
      out.noalias() = Fpp.transpose() * CMapR(t2.data() + id(i, 0, 0, 0), o, v * v);
    }
    for (int i = 0; i < o; ++i)
      for (int j = 0; j < o; ++j)
        for (int a = 0; a < v; ++a)
          for (int b = 0; b < v; ++b) {
            r2[id(i, j, a, b)] += Z((i * o + j) * v + a, b) - Z((i * o + j) * v + b, a) -
                                  Z2[id(i, j, a, b)] + Z2[id(j, i, a, b)];
          }
  }

  {
    RowMat T(o * v, o * v);
    for (int i = 0; i < o; ++i)
      for (int a = 0; a < v; ++a)
        for (int mm = 0; mm < o; ++mm)
          for (int e = 0; e < v; ++e) T(i * v + a, mm * v + e) = t2[id(i, mm, a, e)];
    RowMat X = T * Wme;
    // Subtract sum_me t_ie t_ma <mb||ej>.
    RowMat Q1 = RowMat::Zero(o * o, o * v);  // (i,m) x (j,b)
    for (int i = 0; i < o; ++i)
      for (int mm = 0; mm < o; ++mm)
        for (int e = 0; e < v; ++e) {
          const double t = t1(i, e);
          if (t == 0.0) continue;
          Q1.row(i * o + mm) += t * m.ovvo_mejb.row(mm * v + e);
        }
    for (int i = 0; i < o; ++i)
      for (int a = 0; a < v; ++a)
        for (int mm = 0; mm < o; ++mm) {
          const double t = t1(mm, a);
          if (t == 0.0) continue;
          X.row(i * v + a) -= t * Q1.row(i * o + mm);
        }
    for (int i = 0; i < o; ++i)
      for (int j = 0; j < o; ++j)
        for (int a = 0; a < v; ++a)
          for (int b = 0; b < v; ++b)
            r2[id(i, j, a, b)] += X(i * v + a, j * v + b) - X(j * v + a, i * v + b) -
                                  X(i * v + b, j * v + a) + X(j * v + b, i * v + a);
  }

  for (int i = 0; i < o; ++i)
    for (int j = 0; j < o; ++j)
      for (int a = 0; a < v; ++a)
        for (int b = 0; b < v; ++b) {
          double x = 0.0;
          for (int e = 0; e < v; ++e) {
            x += t1(i, e) * m.vvvo(a, b, e, j) - t1(j, e) * m.vvvo(a, b, e, i);
          }
          for (int mm = 0; mm < o; ++mm) {
            x -= t1(mm, a) * m.ovoo(mm, b, i, j) - t1(mm, b) * m.ovoo(mm, a, i, j);
          }
          r2[id(i, j, a, b)] += x;
        }
}

// Packs the non-frozen unique amplitudes (t1 and i<j, a<b of t2).
class Packer {
 public:
  Packer(const AmplitudeSet& a) : o_(a.space.o()), v_(a.space.v()) {
    for (int i = 0; i < o_; ++i)
      for (int a1 = 0; a1 < v_; ++a1)
        if (!a.t1_frozen(i, a1)) s_.push_back(i * v_ + a1);
    for (int i = 0; i < o_; ++i)
      for (int j = i + 1; j < o_; ++j)
        for (int a1 = 0; a1 < v_; ++a1)
          for (int b = a1 + 1; b < v_; ++b)
            if (!a.t2_frozen(i, j, a1, b)) d_.push_back({i, j, a1, b});
  }
  std::size_t size() const { return s_.size() + d_.size(); }

  Eigen::VectorXd pack(const Eigen::MatrixXd& x1, const std::vector<double>& x2) const {
    Eigen::VectorXd out(size());
    std::size_t k = 0;
    for (int s : s_) out[k++] = x1(s / v_, s % v_);
    for (const auto& q : d_) out[k++] = x2[idx(q[0], q[1], q[2], q[3])];
    return out;
  }
  void unpack(const Eigen::VectorXd& in, Eigen::MatrixXd& x1, std::vector<double>& x2) const {
    std::size_t k = 0;
    for (int s : s_) x1(s / v_, s % v_) = in[k++];
    for (const auto& q : d_) {
      const double val = in[k++];
      const auto [i, j, a, b] = q;
      x2[idx(i, j, a, b)] = val;
      x2[idx(j, i, a, b)] = -val;
      x2[idx(i, j, b, a)] = -val;
      x2[idx(j, i, b, a)] = val;
    }
  }

 private:
  std::size_t idx(int i, int j, int a, int b) const {
    return ((static_cast<std::size_t>(i) * o_ + j) * v_ + a) * v_ + b;
  }
  int o_, v_;
  std::vector<int> s_;
  std::vector<std::array<int, 4>> d_;
};

class Diis {
 public:
  explicit Diis(int depth) : depth_(depth) {}
  Eigen::VectorXd extrapolate(const Eigen::VectorXd& x, const Eigen::VectorXd& err) {
    xs_.push_back(x);
    es_.push_back(err);
    if (static_cast<int>(xs_.size()) > depth_) {
      xs_.pop_front();
      es_.pop_front();
    }
    const int n = static_cast<int>(xs_.size());
    if (n < 2) return x;
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) B(i, j) = B(j, i) = es_[i].dot(es_[j]);
    const double scale = B.topLeftCorner(n, n).diagonal().maxCoeff();
    if (!(scale > 0.0)) return x;
    B.topLeftCorner(n, n) /= scale;
    B.row(n).head(n).setConstant(-1.0);
    B.col(n).head(n).setConstant(-1.0);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
    rhs[n] = -1.0;
    const Eigen::VectorXd c = B.colPivHouseholderQr().solve(rhs);
    if (!c.allFinite()) return x;
    Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
    for (int i = 0; i < n; ++i) out += c[i] * xs_[i];
    return out;
  }

 private:
  int depth_;
  std::deque<Eigen::VectorXd> xs_, es_;
};

void check_config(const SolverConfig& c) {
  if (!(c.residual_tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  if (c.max_iterations < 0) throw std::invalid_argument("max_iterations must be >= 0");
}

void check_space(const AmplitudeSet& a, const AmplitudeSpace& sp) {
  if (a.space.occupied != sp.occupied || a.space.virtuals != sp.virtuals) {
    throw std::invalid_argument("amplitudes do not match the orbital space");
  }
}

double max_abs(const Eigen::MatrixXd& r1, const std::vector<double>& r2) {
  double n = r1.size() ? r1.cwiseAbs().maxCoeff() : 0.0;
  for (double x : r2) n = std::max(n, std::abs(x));
  return n;
}

CCResult iterate(const SpinOrbitalBasis& basis, AmplitudeSet amps,
                 const SolverConfig& config, const detail::ExternalCorrection* ext) {
  check_config(config);
  const MOBlocks m = make_blocks(basis, amps.space);
  const int o = m.o, v = m.v;
  const Packer packer(amps);

  Eigen::VectorXd d_o = m.f_oo.diagonal(), d_v = m.f_vv.diagonal();
  CCResult res;
  res.e_hf = m.e_hf;
  Diis diis(config.diis_depth);
  double previous = std::numeric_limits<double>::infinity();
  int growth = 0;
  Eigen::MatrixXd r1;
  std::vector<double> r2;

  for (int it = 0;; ++it) {
    ccsd_residual(m, amps.t1, amps.t2, r1, r2);
    if (ext) ext->add(amps.t1, r1, r2);
    for (int i = 0; i < o; ++i)
      for (int a = 0; a < v; ++a)
        if (amps.t1_frozen(i, a)) r1(i, a) = 0.0;
    if (!amps.frozen_t2.empty()) {
      for (std::size_t k = 0; k < r2.size(); ++k)
        if (amps.frozen_t2[k]) r2[k] = 0.0;
    }
    const double norm = max_abs(r1, r2);
    const double e = energy(m, amps.t1, amps.t2);
    res.trace.push_back({it, m.e_hf + e, norm});
    res.iterations = it;
    res.final_residual_norm = norm;
    res.e_correlation = e;
    if (norm <= config.residual_tolerance) {
      res.converged = true;
      break;
    }
    if (!std::isfinite(norm) || !std::isfinite(e)) {
      res.diverged = true;
      break;
    }
    growth = norm > previous ? growth + 1 : 0;
    previous = norm;
    if (growth >= config.divergence_window) {
      res.diverged = true;
      break;
    }
    if (it >= config.max_iterations) break;

    for (int i = 0; i < o; ++i)
      for (int a = 0; a < v; ++a)
        if (!amps.t1_frozen(i, a)) {
          amps.t1(i, a) += r1(i, a) / (d_o[i] - d_v[a] - config.level_shift);
        }
    for (int i = 0; i < o; ++i)
      for (int j = 0; j < o; ++j)
        for (int a = 0; a < v; ++a)
          for (int b = 0; b < v; ++b) {
            const std::size_t k = amps.t2_index(i, j, a, b);
            if (amps.frozen_t2.empty() || !amps.frozen_t2[k]) {
              amps.t2[k] += r2[k] / (d_o[i] + d_o[j] - d_v[a] - d_v[b] - config.level_shift);
            }
          }
    if (config.diis_depth > 0 && it + 1 >= config.diis_start) {
      const Eigen::VectorXd x = diis.extrapolate(packer.pack(amps.t1, amps.t2),
                                                 packer.pack(r1, r2));
      packer.unpack(x, amps.t1, amps.t2);
    }
  }
  res.e_total = res.e_hf + res.e_correlation;
  res.amplitudes = std::move(amps);
  return res;
}

AmplitudeSet mp2_guess(const SpinOrbitalBasis& basis, const AmplitudeSpace& sp) {
  AmplitudeSet a = AmplitudeSet::zeros(sp);
  const auto fr = build_fock(basis);
  for (int i = 0; i < sp.o(); ++i)
    for (int j = 0; j < sp.o(); ++j)
      for (int x = 0; x < sp.v(); ++x)
        for (int y = 0; y < sp.v(); ++y) {
          const int I = sp.occupied[i], J = sp.occupied[j];
          const int A = sp.virtuals[x], B = sp.virtuals[y];
          const double den = fr.fock(I, I) + fr.fock(J, J) - fr.fock(A, A) -
                             fr.fock(B, B);
          a.t2[a.t2_index(i, j, x, y)] = basis.g_at(I, J, A, B) / den;
        }
  return a;
}

}  // namespace

double cc_energy(const AmplitudeSet& amps, const SpinOrbitalBasis& basis) {
  const auto sp = make_space(basis);
  check_space(amps, sp);
  const auto fr = build_fock(basis);
  const int o = sp.o(), v = sp.v();
  double e = 0.0;
  for (int i = 0; i < o; ++i)
    for (int a = 0; a < v; ++a) e += fr.fock(sp.occupied[i], sp.virtuals[a]) * amps.t1(i, a);
  for (int i = 0; i < o; ++i)
    for (int j = 0; j < o; ++j)
      for (int a = 0; a < v; ++a)
        for (int b = 0; b < v; ++b) {
          const double g = basis.g_at(sp.occupied[i], sp.occupied[j], sp.virtuals[a],
                                      sp.virtuals[b]);
          e += 0.25 * g * amps.t2_at(i, j, a, b) + 0.5 * g * amps.t1(i, a) * amps.t1(j, b);
        }
  return e;
}

double cc_energy_frozen_block(const AmplitudeSet& amps, const SpinOrbitalBasis& basis) {
  const auto sp = make_space(basis);
  check_space(amps, sp);
  const auto fr = build_fock(basis);
  const int o = sp.o(), v = sp.v();
  double e = 0.0;
  for (int i = 0; i < o; ++i)
    for (int a = 0; a < v; ++a)
      if (amps.t1_frozen(i, a)) e += fr.fock(sp.occupied[i], sp.virtuals[a]) * amps.t1(i, a);
  for (int i = 0; i < o; ++i)
    for (int j = 0; j < o; ++j)
      for (int a = 0; a < v; ++a)
        for (int b = 0; b < v; ++b) {
          const double g = basis.g_at(sp.occupied[i], sp.occupied[j], sp.virtuals[a],
                                      sp.virtuals[b]);
          if (amps.t2_frozen(i, j, a, b)) e += 0.25 * g * amps.t2_at(i, j, a, b);
          if (amps.t1_frozen(i, a) && amps.t1_frozen(j, b)) {
            e += 0.5 * g * amps.t1(i, a) * amps.t1(j, b);
          }
        }
  return e;
}

CCResiduals compute_residuals(const SpinOrbitalBasis& basis, const AmplitudeSet& amps) {
  const auto sp = make_space(basis);
  check_space(amps, sp);
  const MOBlocks m = make_blocks(basis, sp);
  CCResiduals r;
  ccsd_residual(m, amps.t1, amps.t2, r.r1, r.r2);
  if (!amps.t3.empty() || !amps.t4.empty()) {
    detail::ExternalCorrection ext(basis, amps, T1T3Mode::iterative);
    ext.add(amps.t1, r.r1, r.r2);
  }
  return r;
}

CCResult solve_ccsd(const SpinOrbitalBasis& basis, const SolverConfig& config,
                    const std::optional<AmplitudeSet>& initial) {
  const auto sp = make_space(basis);
  AmplitudeSet start;
  if (initial) {
    check_space(*initial, sp);
    start = *initial;
    start.t3.clear();
    start.t4.clear();
  } else {
    start = mp2_guess(basis, sp);
  }
  return iterate(basis, std::move(start), config, nullptr);
}

TCCResult solve_tccsd(const SpinOrbitalBasis& basis, const AmplitudeSet& frozen,
                      const SolverConfig& config) {
  const auto sp = make_space(basis);
  check_space(frozen, sp);
  AmplitudeSet start = mp2_guess(basis, sp);
  start.frozen_t1 = frozen.frozen_t1;
  start.frozen_t2 = frozen.frozen_t2;
  for (int i = 0; i < sp.o(); ++i)
    for (int a = 0; a < sp.v(); ++a)
      if (frozen.t1_frozen(i, a)) start.t1(i, a) = frozen.t1(i, a);
  for (std::size_t k = 0; k < start.t2.size(); ++k)
    if (!frozen.frozen_t2.empty() && frozen.frozen_t2[k]) start.t2[k] = frozen.t2[k];

  TCCResult out;
  out.base = iterate(basis, std::move(start), config, nullptr);
  out.e_as = cc_energy_frozen_block(out.base.amplitudes, basis);
  out.e_ext = out.base.e_correlation - out.e_as;
  return out;
}

CCResult solve_eccc(const SpinOrbitalBasis& basis, const AmplitudeSet& external,
                    const SolverConfig& config, bool use_external_guess) {
  const auto sp = make_space(basis);
  check_space(external, sp);
  AmplitudeSet start;
  if (use_external_guess) {
    start = AmplitudeSet::zeros(sp);
    start.t1 = external.t1;
    start.t2 = external.t2;
  } else {
    start = mp2_guess(basis, sp);
  }
  const detail::ExternalCorrection ext(basis, external, config.t1t3_mode);
  CCResult r = iterate(basis, std::move(start), config, ext.empty() ? nullptr : &ext);
  r.amplitudes.t3 = external.t3;
  r.amplitudes.t4 = external.t4;
  return r;
}

Diagnostics diagnostics(const Eigen::MatrixXd& t1, int n_correlated_electrons) {
  if (n_correlated_electrons <= 0) {
    throw std::invalid_argument("diagnostics need a positive electron count");
  }
  Diagnostics d;
  d.t1_diag = t1.norm() / std::sqrt(static_cast<double>(n_correlated_electrons));
  if (t1.size() > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(t1);
    d.d1_diag = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  }
  return d;
}

}  // namespace splitcc
