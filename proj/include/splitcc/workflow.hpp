// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "splitcc/cc.hpp"
#include "splitcc/ci.hpp"
#include "splitcc/cluster.hpp"
#include "splitcc/estimator.hpp"
#include "splitcc/integrals.hpp"
#include "splitcc/noise.hpp"
#include "splitcc/overlaps.hpp"

namespace splitcc {

/// Window of `n_active` spatial orbitals around the Fermi level holding
/// `n_alpha` + `n_beta` active electrons.
ActiveSpaceSpec cas_window(const SpinOrbitalBasis& basis, int n_active, int n_alpha,
                           int n_beta);

/// Every orbital active.
ActiveSpaceSpec full_window(const SpinOrbitalBasis& basis);

struct CasciResult {
  double energy = 0.0;
  /// Ground state in active numbering.
  CIVector state;
  ActiveHamiltonian hamiltonian;
};

CasciResult run_casci(const SpinOrbitalBasis& basis, const ActiveSpaceSpec& spec,
                      const CIOptions& options = {});

/// Ground-state overlaps of the active space, active numbering.
OverlapSet casci_overlaps(const CasciResult& casci, int max_rank,
                          double c0_threshold = kDefaultC0Threshold);

TCCResult tccsd_from_overlaps(const SpinOrbitalBasis& basis, const ActiveSpaceSpec& spec,
                              const OverlapSet& overlaps, const SolverConfig& config = {},
                              double c0_threshold = kDefaultC0Threshold);

struct EcccOptions {
  /// Drop purely disconnected t3/t4 (Type II) instead of keeping them (Type I).
  bool type2 = true;
  double filter_k = 2.0;
  FilterRule filter_rule = FilterRule::keep_significant;
  double ci_zero_threshold = 1e-12;
  bool use_external_guess = false;
  double c0_threshold = kDefaultC0Threshold;
};

struct EcccRun {
  CCResult result;
  FilterReport report;
};

EcccRun eccc_from_overlaps(const SpinOrbitalBasis& basis, const ActiveSpaceSpec& spec,
                           const OverlapSet& overlaps, const SolverConfig& config = {},
                           const EcccOptions& options = {});

enum class Command {
  scf_info,
  casci,
  extract_overlaps,
  ccsd,
  tccsd,
  eccc,
  noise_sweep,
  shot_budget,
  count_overlaps,
  fit_powerlaw,
  curve,
};

std::optional<Command> parse_command(const std::string& name);
std::string command_name(Command c);

struct CurveInput {
  std::string label;
  std::string fcidump_path;
};

struct RunSpec {
  Command command = Command::ccsd;
  std::string fcidump_path;
  std::optional<ActiveSpaceSpec> active_space;
  /// (n_active, n_alpha, n_beta); resolved against the FCIDUMP when set.
  std::optional<std::array<int, 3>> cas;
  std::optional<std::string> overlaps_path;
  /// Where casci/tccsd/eccc write the overlaps they computed.
  std::optional<std::string> write_overlaps_path;
  int overlap_max_rank = 4;
  SolverConfig solver;
  EcccOptions eccc;
  std::optional<NoiseSpec> noise;
  std::string output_path;
  std::uint64_t seed = 0;

  // noise-sweep
  std::vector<double> sigmas;
  int n_samples = 30;
  std::string noise_method = "tccsd";

  // shot-budget / count-overlaps
  std::vector<std::pair<std::string, double>> t1_rows;
  std::optional<std::string> t1_csv_path;
  double d = 0.0;
  double N = 0.0;
  int n_qubits = 0;
  double target_error = 1e-3;
  PowerLawModel model;
  SplitMethod split_method = SplitMethod::tccsd;

  // fit-powerlaw
  std::optional<std::string> dataset_path;
  int n_bootstrap = 1000;

  // curve
  std::vector<CurveInput> curve;
  std::vector<std::string> curve_methods = {"ccsd", "tccsd"};
};

/// Executes `spec`, writing the primary artifact to spec.output_path (stdout
/// when empty). Returns the process exit status.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// Long-format CSV of label, method, status and energies per geometry.
void emit_curve(const RunSpec& spec, std::ostream& out);

std::vector<PowerLawRecord> read_powerlaw_csv(const std::string& path);

}  // namespace splitcc
