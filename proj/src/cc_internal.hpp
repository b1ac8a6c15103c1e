// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

#include "splitcc/cc.hpp"

namespace splitcc::detail {

// Singles/doubles projections of the T3, T4 and T1*T3 terms of the CCSDTQ
// similarity-transformed Hamiltonian with fixed T3/T4.
class ExternalCorrection {
 public:
  ExternalCorrection(const SpinOrbitalBasis& basis, const AmplitudeSet& external,
                     T1T3Mode mode);

  bool empty() const { return empty_; }

  /// Adds the external contributions for the current t1 to r1/r2.
  void add(const Eigen::MatrixXd& t1, Eigen::MatrixXd& r1,
           std::vector<double>& r2) const;

 private:
  void add_t1t3(const Eigen::MatrixXd& t1, std::vector<double>& r2) const;

  const SpinOrbitalBasis* basis_;
  AmplitudeSpace space_;
  bool empty_ = true;
  T1T3Mode mode_;
  // Kets E(label)|0> of the t3 entries with sign and amplitude folded in.
  std::vector<std::pair<ExcitationLabel, double>> t3_;
  Eigen::MatrixXd r1_t3_;
  std::vector<double> r2_fixed_;
};

}  // namespace splitcc::detail
