// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "splitcc/overlaps.hpp"

namespace splitcc {

/// Philox4x32-10 counter-based generator (Salmon et al.).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Deterministic stream of uniform and normal variates. The key is the
/// 64-bit seed; the counter is (draw_lo, draw_hi, stream, 0), so each
/// stream index yields an independent sequence.
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint32_t stream);

  std::uint32_t next_u32();
  /// Uniform in the open interval (0, 1).
  double uniform();
  /// Standard normal by the Box-Muller transform.
  double normal();

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint32_t stream_;
  std::uint64_t draw_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  std::optional<double> spare_;
};

/// sigma^2 = sqrt(2n)/s for a half-filled register of n qubits.
double variance_from_shots(int n_qubits, double shots, bool half_filling = true);

struct NoiseSpec {
  std::optional<double> sigma;
  std::optional<int> n_qubits;
  std::optional<double> shots;
  std::uint64_t seed = 0;

  /// Standard deviation implied by the spec; throws if both or neither of
  /// sigma and (n_qubits, shots) are given.
  double resolved_sigma() const;
};

/// Adds independent N(0, sigma^2) noise to c0 and every entry; records the
/// variance on each entry. `stream` selects the substream.
OverlapSet perturb_overlaps(const OverlapSet& overlaps, const NoiseSpec& spec,
                            std::uint32_t stream = 0);

/// Energy evaluation of a post-processing workflow; returns the total energy
/// and whether the solver converged.
using OverlapWorkflow = std::function<std::pair<double, bool>(const OverlapSet&)>;

struct NoisePoint {
  double sigma = 0.0;
  double mean_abs_error = 0.0;
  int n_samples = 0;
  int n_nonconverged = 0;
  std::vector<double> errors;
};

/// Mean |E_noisy - E_clean| over `n_samples` perturbed copies; sample s uses
/// substream s of `seed`. Non-converged samples are counted and excluded
/// from the mean.
NoisePoint sample_energy_error(const OverlapWorkflow& workflow,
                               const OverlapSet& exact_overlaps, double sigma,
                               int n_samples, std::uint64_t seed);

struct SigmaFit {
  double beta = 0.0;
  double beta_err = 0.0;
  double log_prefactor = 0.0;
};

/// Log-log least-squares slope of error versus sigma with a bootstrap error.
SigmaFit fit_sigma_exponent(const std::vector<std::pair<double, double>>& points,
                            int n_bootstrap = 1000, std::uint64_t seed = 0);

struct NoiseStudyResult {
  std::vector<NoisePoint> points;
  SigmaFit fit;
};

}  // namespace splitcc
