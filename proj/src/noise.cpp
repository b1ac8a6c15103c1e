// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#include "splitcc/noise.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace splitcc {

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kW0;
      key[1] += kW1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

PhiloxStream::PhiloxStream(std::uint64_t seed, std::uint32_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream) {}

std::uint32_t PhiloxStream::next_u32() {
  if (used_ == 4) {
    buffer_ = philox4x32({static_cast<std::uint32_t>(draw_),
                          static_cast<std::uint32_t>(draw_ >> 32), stream_, 0u},
                         key_);
    ++draw_;
    used_ = 0;
  }
  return buffer_[used_++];
}

double PhiloxStream::uniform() {
  // 53 random bits mapped to the open interval (0, 1).
  const std::uint64_t hi = next_u32() >> 5;
  const std::uint64_t lo = next_u32() >> 6;
  const std::uint64_t bits = (hi << 26) | lo;
  return (static_cast<double>(bits) + 0.5) / 9007199254740992.0;
}

double PhiloxStream::normal() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  return r * std::cos(phi);
}

double variance_from_shots(int n_qubits, double shots, bool half_filling) {
  if (!half_filling) {
    throw std::invalid_argument(
        "variance bound implemented for half filling only; supply sigma directly");
  }
  if (n_qubits <= 0) throw std::invalid_argument("n_qubits must be positive");
  if (!(shots >= 1.0)) throw std::invalid_argument("shots must be >= 1");
  return std::sqrt(2.0 * n_qubits) / shots;
}

double NoiseSpec::resolved_sigma() const {
  const bool from_shots = n_qubits.has_value() || shots.has_value();
  if (sigma.has_value() == from_shots) {
    throw std::invalid_argument("specify either sigma or (n_qubits, shots)");
  }
  if (sigma) {
    if (*sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
    return *sigma;
  }
  if (!n_qubits || !shots) throw std::invalid_argument("need both n_qubits and shots");
  return std::sqrt(variance_from_shots(*n_qubits, *shots));
}

OverlapSet perturb_overlaps(const OverlapSet& overlaps, const NoiseSpec& spec,
                            std::uint32_t stream) {
  const double sigma = spec.resolved_sigma();
  OverlapSet out = overlaps;
  if (sigma == 0.0) return out;
  const double var = sigma * sigma;
  PhiloxStream rng(spec.seed, stream);
  out.c0 += sigma * rng.normal();
  out.c0_variance = var;
  for (auto& [label, e] : out.entries) {
    e.value += sigma * rng.normal();
    e.variance = var;
  }
  return out;
}

NoisePoint sample_energy_error(const OverlapWorkflow& workflow,
                               const OverlapSet& exact_overlaps, double sigma,
                               int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  const auto [e_clean, clean_ok] = workflow(exact_overlaps);
  if (!clean_ok) throw std::runtime_error("clean workflow did not converge");
  NoisePoint p;
  p.sigma = sigma;
  p.n_samples = n_samples;
  double sum = 0.0;
  int used = 0;
  for (int s = 0; s < n_samples; ++s) {
    NoiseSpec spec;
    spec.sigma = sigma;
    spec.seed = seed;
    double err;
    bool ok;
    try {
      const auto [e, conv] = workflow(perturb_overlaps(exact_overlaps, spec,
                                                       static_cast<std::uint32_t>(s)));
      err = std::abs(e - e_clean);
      ok = conv && std::isfinite(err);
    } catch (const std::exception&) {
      err = std::numeric_limits<double>::quiet_NaN();
      ok = false;
    }
    p.errors.push_back(err);
    if (!ok) {
      ++p.n_nonconverged;
      continue;
    }
    sum += err;
    ++used;
  }
  p.mean_abs_error = used ? sum / used : std::numeric_limits<double>::quiet_NaN();
  return p;
}

namespace {

// Least-squares fit of log y = c + beta log x.
std::pair<double, double> loglog_fit(const std::vector<double>& lx,
                                     const std::vector<double>& ly) {
  const std::size_t n = lx.size();
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd b(n);
  for (std::size_t i = 0; i < n; ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = lx[i];
    b[i] = ly[i];
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  return {c[0], c[1]};
}

}  // namespace

SigmaFit fit_sigma_exponent(const std::vector<std::pair<double, double>>& points,
                            int n_bootstrap, std::uint64_t seed) {
  if (points.size() < 3) throw std::invalid_argument("need at least 3 points");
  std::vector<double> lx, ly;
  double lo = points.front().first, hi = lo;
  for (const auto& [s, e] : points) {
    if (!(s > 0.0) || !(e > 0.0)) throw std::invalid_argument("values must be positive");
    lx.push_back(std::log(s));
    ly.push_back(std::log(e));
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  if (hi / lo < 100.0 * (1.0 - 1e-12)) {
    throw std::invalid_argument("sigma values must span at least two decades");
  }
  SigmaFit fit;
  std::tie(fit.log_prefactor, fit.beta) = loglog_fit(lx, ly);

  PhiloxStream rng(seed, 0);
  std::vector<double> betas;
  const std::size_t n = points.size();
  for (int b = 0; b < n_bootstrap; ++b) {
    std::vector<double> bx, by;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t pick = rng.next_u32() % n;
      bx.push_back(lx[pick]);
      by.push_back(ly[pick]);
    }
    const auto [mn, mx] = std::minmax_element(bx.begin(), bx.end());
    if (*mx - *mn < 1e-12) continue;
    betas.push_back(loglog_fit(bx, by).second);
  }
  if (betas.size() > 1) {
    double mean = 0.0;
    for (double x : betas) mean += x;
    mean /= betas.size();
    double var = 0.0;
    for (double x : betas) var += (x - mean) * (x - mean);
    fit.beta_err = std::sqrt(var / (betas.size() - 1));
  }
  return fit;
}

}  // namespace splitcc
