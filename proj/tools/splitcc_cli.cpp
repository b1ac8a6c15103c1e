// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

// splitcc command-line driver.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "splitcc/errors.hpp"
#include "splitcc/workflow.hpp"

namespace {

using splitcc::RunSpec;

struct Flags {
  std::string config, fcidump, overlaps, write_overlaps, output, method, t1_csv, dataset,
      t1t3_mode;
  std::vector<int> cas, active, active_electrons;
  std::vector<double> sigmas, t1;
  std::vector<std::string> geometries, methods;
  int max_rank = 4, samples = 30, n_qubits = 0, bootstrap = 1000, max_iter = 200,
      diis_depth = 8, diis_start = 2;
  double sigma = 0, shots = 0, filter_k = 2, d = 0, N = 0, target = 1e-3, tol = 1e-8,
         level_shift = 0, c0_threshold = 1e-6, beta = 0, gamma = 0, beta_err = 0,
         gamma_err = 0;
  unsigned long long seed = 0;
  bool type1 = false, type2 = false, filter_literal = false, external_guess = false;
};

splitcc::SplitMethod split_method(const std::string& m) {
  if (m == "tccsd") return splitcc::SplitMethod::tccsd;
  if (m == "eccc") return splitcc::SplitMethod::eccc;
  throw splitcc::PreconditionError("method must be tccsd or eccc");
}

splitcc::T1T3Mode t1t3_mode(const std::string& m) {
  if (m == "iterative") return splitcc::T1T3Mode::iterative;
  if (m == "frozen") return splitcc::T1T3Mode::frozen;
  throw splitcc::PreconditionError("t1t3 mode must be iterative or frozen");
}

splitcc::ActiveSpaceSpec active_from(const std::vector<int>& orbitals,
                                     const std::vector<int>& electrons) {
  if (electrons.size() != 2) {
    throw splitcc::PreconditionError("an active orbital list needs --active-electrons na nb");
  }
  splitcc::ActiveSpaceSpec a;
  a.active_spatial_orbitals = orbitals;
  a.n_active_alpha = electrons[0];
  a.n_active_beta = electrons[1];
  return a;
}

splitcc::CurveInput geometry_from(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos) throw splitcc::ParseError("geometry must be label=path");
  return {s.substr(0, eq), s.substr(eq + 1)};
}

std::array<int, 3> cas_from(const std::vector<int>& v) {
  if (v.size() != 3) throw splitcc::PreconditionError("--cas takes n n_alpha n_beta");
  return {v[0], v[1], v[2]};
}

// Keys mirror the long flag names with underscores.
void apply_config(const std::string& path, RunSpec& spec) {
  std::ifstream f(path);
  if (!f) throw splitcc::ParseError("cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
    if (j.contains("fcidump")) spec.fcidump_path = j["fcidump"].get<std::string>();
    if (j.contains("cas")) spec.cas = cas_from(j["cas"].get<std::vector<int>>());
    if (j.contains("active")) {
      spec.active_space = active_from(j["active"].get<std::vector<int>>(),
                                      j.value("active_electrons", std::vector<int>{}));
    }
    if (j.contains("overlaps")) spec.overlaps_path = j["overlaps"].get<std::string>();
    if (j.contains("write_overlaps")) {
      spec.write_overlaps_path = j["write_overlaps"].get<std::string>();
    }
    if (j.contains("output")) spec.output_path = j["output"].get<std::string>();
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("max_rank")) spec.overlap_max_rank = j["max_rank"].get<int>();
    if (j.contains("max_iter")) spec.solver.max_iterations = j["max_iter"].get<int>();
    if (j.contains("tol")) spec.solver.residual_tolerance = j["tol"].get<double>();
    if (j.contains("diis_depth")) spec.solver.diis_depth = j["diis_depth"].get<int>();
    if (j.contains("diis_start")) spec.solver.diis_start = j["diis_start"].get<int>();
    if (j.contains("level_shift")) spec.solver.level_shift = j["level_shift"].get<double>();
    if (j.contains("t1t3_mode")) spec.solver.t1t3_mode = t1t3_mode(j["t1t3_mode"]);
    if (j.contains("type1") && j["type1"].get<bool>()) spec.eccc.type2 = false;
    if (j.contains("type2") && j["type2"].get<bool>()) spec.eccc.type2 = true;
    if (j.contains("filter_k")) spec.eccc.filter_k = j["filter_k"].get<double>();
    if (j.value("filter_literal", false)) spec.eccc.filter_rule = splitcc::FilterRule::literal;
    if (j.contains("use_external_guess")) {
      spec.eccc.use_external_guess = j["use_external_guess"].get<bool>();
    }
    if (j.contains("c0_threshold")) spec.eccc.c0_threshold = j["c0_threshold"].get<double>();
    if (j.contains("sigma") || j.contains("shots")) {
      splitcc::NoiseSpec n;
      if (j.contains("sigma")) n.sigma = j["sigma"].get<double>();
      if (j.contains("shots")) {
        n.shots = j["shots"].get<double>();
        n.n_qubits = j.value("n_qubits", 0);
      }
      spec.noise = n;
    }
    if (j.contains("sigmas")) spec.sigmas = j["sigmas"].get<std::vector<double>>();
    if (j.contains("samples")) spec.n_samples = j["samples"].get<int>();
    if (j.contains("method")) {
      const auto m = j["method"].get<std::string>();
      spec.noise_method = m;
      if (spec.command == splitcc::Command::count_overlaps) spec.split_method = split_method(m);
    }
    if (j.contains("t1")) {
      for (double t : j["t1"].get<std::vector<double>>()) {
        spec.t1_rows.emplace_back(std::to_string(spec.t1_rows.size()), t);
      }
    }
    if (j.contains("t1_csv")) spec.t1_csv_path = j["t1_csv"].get<std::string>();
    if (j.contains("d")) spec.d = j["d"].get<double>();
    if (j.contains("N")) spec.N = j["N"].get<double>();
    if (j.contains("n_qubits")) spec.n_qubits = j["n_qubits"].get<int>();
    if (j.contains("target")) spec.target_error = j["target"].get<double>();
    if (j.contains("beta")) spec.model.beta = j["beta"].get<double>();
    if (j.contains("gamma")) spec.model.gamma = j["gamma"].get<double>();
    if (j.contains("beta_err")) spec.model.beta_err = j["beta_err"].get<double>();
    if (j.contains("gamma_err")) spec.model.gamma_err = j["gamma_err"].get<double>();
    if (j.contains("dataset")) spec.dataset_path = j["dataset"].get<std::string>();
    if (j.contains("bootstrap")) spec.n_bootstrap = j["bootstrap"].get<int>();
    if (j.contains("geometries")) {
      for (const auto& g : j["geometries"].get<std::vector<std::string>>()) {
        spec.curve.push_back(geometry_from(g));
      }
    }
    if (j.contains("methods")) spec.curve_methods = j["methods"].get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw splitcc::ParseError(path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split-amplitude coupled cluster driven by wavefunction overlaps"};
  app.require_subcommand(1);
  Flags f;
  std::map<std::string, CLI::Option*> opt;

  // Registered under every alias so lookups work with any spelling.
  auto remember = [&](const std::string& names, CLI::Option* o) {
    std::stringstream ss(names);
    std::string name;
    while (std::getline(ss, name, ',')) opt[name] = o;
    return o;
  };
  auto add = [&](const std::string& names, auto& target, const std::string& help) {
    return remember(names, app.add_option(names, target, help));
  };
  auto flag = [&](const std::string& names, bool& target, const std::string& help) {
    remember(names, app.add_flag(names, target, help));
  };

  add("--config", f.config, "JSON run-spec file; flags override its values");
  add("--fcidump", f.fcidump, "FCIDUMP integral file");
  add("--cas", f.cas, "active space as n_orbitals n_alpha n_beta")->expected(3);
  add("--active", f.active, "explicit active spatial orbitals (0-based)")->delimiter(',');
  add("--active-electrons", f.active_electrons, "active n_alpha n_beta")->expected(2);
  add("--overlaps", f.overlaps, "overlap file (quantum-input branch)");
  add("--write-overlaps", f.write_overlaps, "write the overlaps used to this file");
  add("--max-rank", f.max_rank, "highest excitation rank extracted");
  add("-o,--output", f.output, "output file (default stdout)");
  add("--seed", f.seed, "noise seed");
  add("--max-iter", f.max_iter, "maximum CC iterations");
  add("--tol", f.tol, "residual infinity-norm tolerance");
  add("--diis-depth", f.diis_depth, "DIIS subspace size (0 disables)");
  add("--diis-start", f.diis_start, "first iteration using DIIS");
  add("--level-shift", f.level_shift, "denominator shift");
  add("--t1t3-mode", f.t1t3_mode, "iterative or frozen");
  flag("--type1", f.type1, "ec-CC keeps purely disconnected t3/t4");
  flag("--type2", f.type2, "ec-CC drops purely disconnected t3/t4 (default)");
  add("--filter-k", f.filter_k, "variance filter multiplier");
  flag("--filter-literal", f.filter_literal, "zero entries above k*sigma instead of below");
  flag("--use-external-guess", f.external_guess, "start ec-CC from the external t1/t2");
  add("--c0-threshold", f.c0_threshold, "minimum |c0| accepted");
  add("--sigma", f.sigma, "Gaussian noise standard deviation on overlaps");
  add("--shots", f.shots, "shot count; sigma from the variance bound");
  add("--n-qubits,--n", f.n_qubits, "qubit count for the variance bound");
  add("--sigmas", f.sigmas, "noise-sweep sigma values")->delimiter(',');
  add("--samples", f.samples, "noise samples per sigma");
  add("--method", f.method, "tccsd or eccc");
  add("--t1", f.t1, "T1 diagnostics for shot-budget")->delimiter(',');
  add("--t1-csv", f.t1_csv, "CSV of label,t1_diag rows");
  add("--d", f.d, "overlap count");
  add("--N", f.N, "spin-orbital count");
  add("--target", f.target, "target energy error in Hartree");
  add("--beta", f.beta, "power-law exponent of d");
  add("--gamma", f.gamma, "power-law exponent of N");
  add("--beta-err", f.beta_err, "uncertainty of beta");
  add("--gamma-err", f.gamma_err, "uncertainty of gamma");
  add("--dataset", f.dataset, "power-law CSV (label,d,N,sigma,mean_abs_error)");
  add("--bootstrap", f.bootstrap, "bootstrap resamples");
  add("--geometry", f.geometries, "curve point as label=fcidump (repeatable)");
  add("--methods", f.methods, "curve methods")->delimiter(',');

  std::map<std::string, CLI::App*> subs;
  const std::pair<const char*, const char*> commands[] = {
      {"scf-info", "reference energy and orbital summary"},
      {"casci", "CASCI or FCI energy in an active space"},
      {"extract-overlaps", "write CASCI overlaps to a JSON-lines file"},
      {"ccsd", "CCSD from the reference determinant"},
      {"tccsd", "tailored CCSD with frozen active t1/t2"},
      {"eccc", "externally corrected CCSD from t1..t4"},
      {"noise-sweep", "energy error versus overlap noise"},
      {"shot-budget", "shots needed for a target energy error"},
      {"count-overlaps", "number of overlaps an active space needs"},
      {"fit-powerlaw", "fit the error power law to a dataset"},
      {"curve", "energies over a set of geometries as CSV"},
  };
  for (const auto& [name, help] : commands) {
    subs[name] = app.add_subcommand(name, help)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunSpec spec;
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) spec.command = *splitcc::parse_command(name);
  }
  auto given = [&](const std::string& name) { return opt.at(name)->count() > 0; };

  try {
    if (given("--config")) apply_config(f.config, spec);
    if (given("--fcidump")) spec.fcidump_path = f.fcidump;
    if (given("--cas")) {
      spec.cas = cas_from(f.cas);
      spec.active_space.reset();
    }
    if (given("--active")) {
      spec.active_space = active_from(f.active, f.active_electrons);
      spec.cas.reset();
    }
    if (given("--overlaps")) spec.overlaps_path = f.overlaps;
    if (given("--write-overlaps")) spec.write_overlaps_path = f.write_overlaps;
    if (given("--max-rank")) spec.overlap_max_rank = f.max_rank;
    if (given("--output")) spec.output_path = f.output;
    if (given("--seed")) spec.seed = f.seed;
    if (given("--max-iter")) spec.solver.max_iterations = f.max_iter;
    if (given("--tol")) spec.solver.residual_tolerance = f.tol;
    if (given("--diis-depth")) spec.solver.diis_depth = f.diis_depth;
    if (given("--diis-start")) spec.solver.diis_start = f.diis_start;
    if (given("--level-shift")) spec.solver.level_shift = f.level_shift;
    if (given("--t1t3-mode")) spec.solver.t1t3_mode = t1t3_mode(f.t1t3_mode);
    if (f.type1 && f.type2) throw splitcc::PreconditionError("--type1 and --type2 conflict");
    if (f.type1) spec.eccc.type2 = false;
    if (f.type2) spec.eccc.type2 = true;
    if (given("--filter-k")) spec.eccc.filter_k = f.filter_k;
    if (f.filter_literal) spec.eccc.filter_rule = splitcc::FilterRule::literal;
    if (f.external_guess) spec.eccc.use_external_guess = true;
    if (given("--c0-threshold")) spec.eccc.c0_threshold = f.c0_threshold;
    if (given("--sigma") || given("--shots")) {
      splitcc::NoiseSpec n;
      if (given("--sigma")) n.sigma = f.sigma;
      if (given("--shots")) {
        n.shots = f.shots;
        n.n_qubits = f.n_qubits;
      }
      spec.noise = n;
    }
    if (spec.noise) spec.noise->seed = spec.seed;
    if (given("--sigmas")) spec.sigmas = f.sigmas;
    if (given("--samples")) spec.n_samples = f.samples;
    if (given("--method")) {
      spec.noise_method = f.method;
      spec.split_method = split_method(f.method);
    }
    if (given("--t1")) {
      spec.t1_rows.clear();
      for (double t : f.t1) spec.t1_rows.emplace_back(std::to_string(spec.t1_rows.size()), t);
    }
    if (given("--t1-csv")) spec.t1_csv_path = f.t1_csv;
    if (given("--d")) spec.d = f.d;
    if (given("--N")) spec.N = f.N;
    if (given("--n-qubits")) spec.n_qubits = f.n_qubits;
    if (given("--target")) spec.target_error = f.target;
    if (given("--beta")) spec.model.beta = f.beta;
    if (given("--gamma")) spec.model.gamma = f.gamma;
    if (given("--beta-err")) spec.model.beta_err = f.beta_err;
    if (given("--gamma-err")) spec.model.gamma_err = f.gamma_err;
    if (given("--dataset")) spec.dataset_path = f.dataset;
    if (given("--bootstrap")) spec.n_bootstrap = f.bootstrap;
    if (given("--geometry")) {
      spec.curve.clear();
      for (const auto& g : f.geometries) spec.curve.push_back(geometry_from(g));
    }
    if (given("--methods")) spec.curve_methods = f.methods;
  } catch (const splitcc::ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return 4;
  }
  return splitcc::run(spec, std::cout, std::cerr);
}
