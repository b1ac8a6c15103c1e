// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#include "splitcc/workflow.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "splitcc/errors.hpp"
#include "splitcc/io.hpp"

namespace splitcc {

using ojson = nlohmann::ordered_json;

ActiveSpaceSpec cas_window(const SpinOrbitalBasis& basis, int n_active, int n_alpha,
                           int n_beta) {
  const int core_a = basis.n_alpha - n_alpha;
  const int core_b = basis.n_beta - n_beta;
  if (n_active < 0 || core_a < 0 || core_b < 0 || core_a != core_b) {
    throw PreconditionError("active electrons inconsistent with the reference");
  }
  if (core_a + n_active > basis.n_spatial) {
    throw PreconditionError("active window exceeds the orbital count");
  }
  ActiveSpaceSpec spec;
  for (int p = core_a; p < core_a + n_active; ++p) spec.active_spatial_orbitals.push_back(p);
  spec.n_active_alpha = n_alpha;
  spec.n_active_beta = n_beta;
  validate_active_space(basis, spec);
  return spec;
}

ActiveSpaceSpec full_window(const SpinOrbitalBasis& basis) {
  return cas_window(basis, basis.n_spatial, basis.n_alpha, basis.n_beta);
}

CasciResult run_casci(const SpinOrbitalBasis& basis, const ActiveSpaceSpec& spec,
                      const CIOptions& options) {
  CasciResult out;
  out.hamiltonian = build_active_hamiltonian(basis, spec);
  const auto dets =
      enumerate_determinants(spec.size(), spec.n_active_alpha, spec.n_active_beta);
  if (dets.empty()) throw PreconditionError("empty active space");
  auto sol = solve_ci(out.hamiltonian.basis, dets, 1, options);
  out.energy = sol.energies.front();
  out.state = std::move(sol.states.front());
  return out;
}

OverlapSet casci_overlaps(const CasciResult& casci, int max_rank, double c0_threshold) {
  return extract_overlaps(casci.state, max_rank, std::nullopt, c0_threshold);
}

TCCResult tccsd_from_overlaps(const SpinOrbitalBasis& basis, const ActiveSpaceSpec& spec,
                              const OverlapSet& overlaps, const SolverConfig& config,
                              double c0_threshold) {
  const AmplitudeSet active = ci_to_cc(overlaps, 2, c0_threshold);
  const AmplitudeSet frozen = embed_active(active, spec, basis, EmbedMode::tailored);
  return solve_tccsd(basis, frozen, config);
}

EcccRun eccc_from_overlaps(const SpinOrbitalBasis& basis, const ActiveSpaceSpec& spec,
                           const OverlapSet& overlaps, const SolverConfig& config,
                           const EcccOptions& options) {
  auto [filtered, report] = filter_variance(overlaps, options.filter_k, options.filter_rule);
  AmplitudeSet amps = ci_to_cc(filtered, 4, options.c0_threshold);
  if (options.type2) {
    auto [kept, drop] = drop_disconnected(amps, filtered, options.ci_zero_threshold,
                                          options.filter_k);
    amps = std::move(kept);
    report.n_dropped_disconnected = drop.n_dropped_disconnected;
    report.ci_zero_threshold = drop.ci_zero_threshold;
  }
  const AmplitudeSet external = embed_active(amps, spec, basis, EmbedMode::external);
  EcccRun out;
  out.result = solve_eccc(basis, external, config, options.use_external_guess);
  out.report = report;
  return out;
}

namespace {

const std::map<std::string, Command>& command_table() {
  static const std::map<std::string, Command> table = {
      {"scf-info", Command::scf_info},
      {"casci", Command::casci},
      {"extract-overlaps", Command::extract_overlaps},
      {"ccsd", Command::ccsd},
      {"tccsd", Command::tccsd},
      {"eccc", Command::eccc},
      {"noise-sweep", Command::noise_sweep},
      {"shot-budget", Command::shot_budget},
      {"count-overlaps", Command::count_overlaps},
      {"fit-powerlaw", Command::fit_powerlaw},
      {"curve", Command::curve},
  };
  return table;
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  const auto& t = command_table();
  const auto it = t.find(name);
  if (it == t.end()) return std::nullopt;
  return it->second;
}

std::string command_name(Command c) {
  for (const auto& [name, cmd] : command_table())
    if (cmd == c) return name;
  return "?";
}

namespace {

// Rounded to 12 significant digits so that the dumped text is stable.
double r12(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_number(x).c_str(), nullptr);
}

ojson num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return r12(x);
}

SpinOrbitalBasis load_basis(const RunSpec& spec) {
  if (spec.fcidump_path.empty()) throw ParseError("an FCIDUMP path is required");
  return to_spin_orbitals(read_fcidump(spec.fcidump_path));
}

ActiveSpaceSpec resolve_active(const RunSpec& spec, const SpinOrbitalBasis& basis) {
  if (spec.active_space && spec.cas) {
    throw PreconditionError("give either an active orbital list or a CAS triple");
  }
  if (spec.active_space) {
    validate_active_space(basis, *spec.active_space);
    return *spec.active_space;
  }
  if (spec.cas) return cas_window(basis, (*spec.cas)[0], (*spec.cas)[1], (*spec.cas)[2]);
  return full_window(basis);
}

ojson active_json(const ActiveSpaceSpec& a) {
  return {{"orbitals", a.active_spatial_orbitals},
          {"n_alpha", a.n_active_alpha},
          {"n_beta", a.n_active_beta}};
}

ojson cc_json(const CCResult& r, int n_electrons) {
  const Diagnostics d = diagnostics(r.amplitudes.t1, n_electrons);
  return {{"e_hf", num(r.e_hf)},
          {"e_total", num(r.e_total)},
          {"e_correlation", num(r.e_correlation)},
          {"converged", r.converged},
          {"diverged", r.diverged},
          {"iterations", r.iterations},
          {"final_residual_norm", num(r.final_residual_norm)},
          {"t1_diag", num(d.t1_diag)},
          {"d1_diag", num(d.d1_diag)}};
}

void write_overlaps_file(const std::string& path, const OverlapSet& s) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write " + path);
  write_overlaps(f, s);
}

// Overlaps from file (quantum-input branch) or from an internal CASCI
// (classical branch), optionally perturbed.
struct OverlapSource {
  OverlapSet overlaps;
  std::optional<double> e_casci;
};

OverlapSource obtain_overlaps(const RunSpec& spec, const SpinOrbitalBasis& basis,
                              const ActiveSpaceSpec& active, int max_rank) {
  OverlapSource src;
  if (spec.overlaps_path) {
    src.overlaps = read_overlaps(std::filesystem::path(*spec.overlaps_path));
    if (src.overlaps.n_spatial != active.size() &&
        src.overlaps.n_spatial != basis.n_spatial) {
      throw PreconditionError("overlap file does not match the active space");
    }
  } else {
    const CasciResult c = run_casci(basis, active);
    src.e_casci = c.energy;
    src.overlaps = extract_overlaps(c.state, max_rank, std::nullopt, spec.eccc.c0_threshold);
  }
  if (spec.noise) src.overlaps = perturb_overlaps(src.overlaps, *spec.noise, 0);
  if (spec.write_overlaps_path) write_overlaps_file(*spec.write_overlaps_path, src.overlaps);
  return src;
}

std::uint64_t sigma_seed(std::uint64_t seed, std::size_t k) {
  return seed + 0x9E3779B97F4A7C15ULL * (k + 1);
}

int run_noise_sweep(const RunSpec& spec, std::ostream& out) {
  if (spec.sigmas.empty()) throw PreconditionError("noise-sweep needs sigma values");
  const SpinOrbitalBasis basis = load_basis(spec);
  const ActiveSpaceSpec active = resolve_active(spec, basis);
  const bool tcc = spec.noise_method == "tccsd";
  if (!tcc && spec.noise_method != "eccc") {
    throw PreconditionError("noise method must be tccsd or eccc");
  }
  const CasciResult c = run_casci(basis, active);
  const OverlapSet exact = casci_overlaps(c, tcc ? 2 : 4, spec.eccc.c0_threshold);
  const OverlapWorkflow wf = [&](const OverlapSet& s) -> std::pair<double, bool> {
    if (tcc) {
      const TCCResult r =
          tccsd_from_overlaps(basis, active, s, spec.solver, spec.eccc.c0_threshold);
      return {r.base.e_total, r.base.converged};
    }
    const EcccRun r = eccc_from_overlaps(basis, active, s, spec.solver, spec.eccc);
    return {r.result.e_total, r.result.converged};
  };
  ojson points = ojson::array();
  std::vector<std::pair<double, double>> fit_points;
  int nonconverged = 0;
  for (std::size_t k = 0; k < spec.sigmas.size(); ++k) {
    const NoisePoint p = sample_energy_error(wf, exact, spec.sigmas[k], spec.n_samples,
                                             sigma_seed(spec.seed, k));
    nonconverged += p.n_nonconverged;
    points.push_back({{"sigma", num(p.sigma)},
                      {"mean_abs_error", num(p.mean_abs_error)},
                      {"n_samples", p.n_samples},
                      {"n_nonconverged", p.n_nonconverged}});
    if (std::isfinite(p.mean_abs_error) && p.mean_abs_error > 0.0) {
      fit_points.emplace_back(p.sigma, p.mean_abs_error);
    }
  }
  ojson result = {{"method", spec.noise_method},
                  {"active_space", active_json(active)},
                  {"seed", spec.seed},
                  {"points", points},
                  {"n_nonconverged", nonconverged}};
  if (fit_points.size() >= 3) {
    const SigmaFit f = fit_sigma_exponent(fit_points, 1000, spec.seed);
    result["beta_sigma"] = num(f.beta);
    result["beta_sigma_err"] = num(f.beta_err);
  }
  out << result.dump(2) << '\n';
  return 0;
}

std::vector<std::pair<std::string, double>> read_t1_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  std::vector<std::pair<std::string, double>> rows;
  std::string line;
  bool header = true;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      if (line.find("t1") != std::string::npos) continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("expected label,t1_diag rows");
    try {
      rows.emplace_back(line.substr(0, comma), std::stod(line.substr(comma + 1)));
    } catch (const std::logic_error&) {
      throw ParseError("bad t1_diag value: " + line);
    }
  }
  return rows;
}

int run_shot_budget(const RunSpec& spec, std::ostream& out) {
  auto rows = spec.t1_rows;
  if (spec.t1_csv_path) {
    const auto more = read_t1_csv(*spec.t1_csv_path);
    rows.insert(rows.end(), more.begin(), more.end());
  }
  if (rows.empty()) throw PreconditionError("shot-budget needs t1_diag values");
  out << "label,t1_diag,a,s,s_low,s_high\n";
  long long total = 0, total_low = 0, total_high = 0;
  for (const auto& [label, t1] : rows) {
    ShotBudgetQuery q;
    q.t1_diag = t1;
    q.target_error = spec.target_error;
    q.d = spec.d;
    q.N = spec.N;
    q.n = spec.n_qubits;
    const ShotBudget b = shot_budget(q, spec.model);
    total += b.s;
    total_low += b.s_low;
    total_high += b.s_high;
    out << label << ',' << format_number(t1) << ',' << format_number(b.a) << ',' << b.s
        << ',' << b.s_low << ',' << b.s_high << '\n';
  }
  out << "total,,," << total << ',' << total_low << ',' << total_high << '\n';
  return 0;
}

int finish_cc(const ojson& result, bool converged, std::ostream& out, std::ostream& err) {
  out << result.dump(2) << '\n';
  if (!converged) {
    err << "error: coupled-cluster iterations did not converge\n";
    return 3;
  }
  return 0;
}

std::ostream* open_output(const RunSpec& spec, std::ostream& fallback,
                          std::unique_ptr<std::ofstream>& holder) {
  if (spec.output_path.empty()) return &fallback;
  holder = std::make_unique<std::ofstream>(spec.output_path);
  if (!*holder) throw ParseError("cannot write " + spec.output_path);
  return holder.get();
}

int dispatch(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  switch (spec.command) {
    case Command::scf_info: {
      const SpinOrbitalBasis basis = load_basis(spec);
      const FockResult f = build_fock(basis);
      std::vector<double> diag;
      for (int p = 0; p < basis.n_spatial; ++p) diag.push_back(r12(f.fock(p, p)));
      const ojson r = {{"n_spatial", basis.n_spatial}, {"n_alpha", basis.n_alpha},
                       {"n_beta", basis.n_beta},       {"e_core", num(basis.e_core)},
                       {"e_hf", num(f.e_hf)},          {"fock_diagonal", diag}};
      out << r.dump(2) << '\n';
      return 0;
    }
    case Command::casci:
    case Command::extract_overlaps: {
      const SpinOrbitalBasis basis = load_basis(spec);
      const ActiveSpaceSpec active = resolve_active(spec, basis);
      const CasciResult c = run_casci(basis, active);
      const OverlapSet s =
          extract_overlaps(c.state, spec.overlap_max_rank, std::nullopt, spec.eccc.c0_threshold);
      if (spec.command == Command::extract_overlaps) {
        OverlapSet noisy = spec.noise ? perturb_overlaps(s, *spec.noise, 0) : s;
        write_overlaps(out, noisy);
        return 0;
      }
      if (spec.write_overlaps_path) write_overlaps_file(*spec.write_overlaps_path, s);
      const ojson r = {{"active_space", active_json(active)},
                       {"e_casci", num(c.energy)},
                       {"e_frozen_core", num(c.hamiltonian.e_frozen_core)},
                       {"c0", num(s.c0)},
                       {"n_determinants", c.state.basis.size()}};
      out << r.dump(2) << '\n';
      return 0;
    }
    case Command::ccsd: {
      const SpinOrbitalBasis basis = load_basis(spec);
      const CCResult r = solve_ccsd(basis, spec.solver);
      return finish_cc(cc_json(r, basis.n_electrons()), r.converged, out, err);
    }
    case Command::tccsd: {
      const SpinOrbitalBasis basis = load_basis(spec);
      const ActiveSpaceSpec active = resolve_active(spec, basis);
      const OverlapSource src = obtain_overlaps(spec, basis, active, 2);
      const TCCResult r = tccsd_from_overlaps(basis, active, src.overlaps, spec.solver,
                                              spec.eccc.c0_threshold);
      ojson j = cc_json(r.base, basis.n_electrons());
      j["e_as"] = num(r.e_as);
      j["e_ext"] = num(r.e_ext);
      j["active_space"] = active_json(active);
      j["overlap_source"] = spec.overlaps_path ? "file" : "casci";
      if (src.e_casci) j["e_casci"] = num(*src.e_casci);
      return finish_cc(j, r.base.converged, out, err);
    }
    case Command::eccc: {
      const SpinOrbitalBasis basis = load_basis(spec);
      const ActiveSpaceSpec active = resolve_active(spec, basis);
      const OverlapSource src = obtain_overlaps(spec, basis, active, 4);
      const EcccRun r = eccc_from_overlaps(basis, active, src.overlaps, spec.solver, spec.eccc);
      ojson j = cc_json(r.result, basis.n_electrons());
      j["type"] = spec.eccc.type2 ? "II" : "I";
      j["active_space"] = active_json(active);
      j["overlap_source"] = spec.overlaps_path ? "file" : "casci";
      j["n_zeroed_by_variance"] = r.report.n_zeroed_by_variance;
      j["n_dropped_disconnected"] = r.report.n_dropped_disconnected;
      if (src.e_casci) j["e_casci"] = num(*src.e_casci);
      return finish_cc(j, r.result.converged, out, err);
    }
    case Command::noise_sweep:
      return run_noise_sweep(spec, out);
    case Command::shot_budget:
      return run_shot_budget(spec, out);
    case Command::count_overlaps: {
      if (!spec.cas) throw PreconditionError("count-overlaps needs --cas n n_alpha n_beta");
      out << count_overlaps((*spec.cas)[0], (*spec.cas)[1], (*spec.cas)[2], spec.split_method)
          << '\n';
      return 0;
    }
    case Command::fit_powerlaw: {
      if (!spec.dataset_path) throw PreconditionError("fit-powerlaw needs a dataset");
      const PowerLawModel m =
          fit_power_law(read_powerlaw_csv(*spec.dataset_path), spec.n_bootstrap, spec.seed);
      ojson per = ojson::object();
      for (const auto& [label, a] : m.per_label_prefactors) per[label] = num(a);
      const ojson r = {{"beta", num(m.beta)},         {"beta_err", num(m.beta_err)},
                       {"gamma", num(m.gamma)},       {"gamma_err", num(m.gamma_err)},
                       {"a_global", num(m.a_global)}, {"prefactors", per}};
      out << r.dump(2) << '\n';
      return 0;
    }
    case Command::curve:
      emit_curve(spec, out);
      return 0;
  }
  return 4;
}

}  // namespace

int run(const RunSpec& spec, std::ostream& out_default, std::ostream& err) {
  try {
    std::unique_ptr<std::ofstream> holder;
    std::ostream* out = open_output(spec, out_default, holder);
    return dispatch(spec, *out, err);
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return 2;
  } catch (const ConvergenceError& e) {
    err << "not converged: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "precondition violated: " << e.what() << '\n';
    return 4;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "input error: " << e.what() << '\n';
    return 2;
  }
}

void emit_curve(const RunSpec& spec, std::ostream& out) {
  out << "label,method,status,e_total,e_correlation,e_as,e_ext,iterations\n";
  for (const auto& g : spec.curve) {
    std::optional<SpinOrbitalBasis> basis;
    std::string load_error;
    try {
      basis = to_spin_orbitals(read_fcidump(g.fcidump_path));
    } catch (const std::exception& e) {
      load_error = e.what();
    }
    for (const auto& method : spec.curve_methods) {
      std::ostringstream row;
      row << g.label << ',' << method << ',';
      if (!basis) {
        out << row.str() << "error,,,,,\n";
        continue;
      }
      try {
        RunSpec local = spec;
        local.fcidump_path = g.fcidump_path;
        local.overlaps_path.reset();
        local.write_overlaps_path.reset();
        auto status = [](const CCResult& r) { return r.converged ? "ok" : "not_converged"; };
        if (method == "ccsd") {
          const CCResult r = solve_ccsd(*basis, spec.solver);
          row << status(r) << ',' << format_number(r.e_total) << ','
              << format_number(r.e_correlation) << ",,," << r.iterations;
        } else if (method == "casci") {
          const CasciResult c = run_casci(*basis, resolve_active(local, *basis));
          row << "ok," << format_number(c.energy) << ','
              << format_number(c.energy - build_fock(*basis).e_hf) << ",,,0";
        } else if (method == "tccsd") {
          const ActiveSpaceSpec active = resolve_active(local, *basis);
          const OverlapSource src = obtain_overlaps(local, *basis, active, 2);
          const TCCResult r = tccsd_from_overlaps(*basis, active, src.overlaps, spec.solver,
                                                  spec.eccc.c0_threshold);
          row << status(r.base) << ',' << format_number(r.base.e_total) << ','
              << format_number(r.base.e_correlation) << ',' << format_number(r.e_as) << ','
              << format_number(r.e_ext) << ',' << r.base.iterations;
        } else if (method == "eccc") {
          const ActiveSpaceSpec active = resolve_active(local, *basis);
          const OverlapSource src = obtain_overlaps(local, *basis, active, 4);
          const EcccRun r = eccc_from_overlaps(*basis, active, src.overlaps, spec.solver,
                                               spec.eccc);
          row << status(r.result) << ',' << format_number(r.result.e_total) << ','
              << format_number(r.result.e_correlation) << ",,," << r.result.iterations;
        } else {
          throw PreconditionError("unknown curve method " + method);
        }
        out << row.str() << '\n';
      } catch (const std::exception&) {
        out << g.label << ',' << method << ",error,,,,,\n";
      }
    }
  }
}

std::vector<PowerLawRecord> read_powerlaw_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
      while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
      cells.push_back(cell);
    }
    return cells;
  };
  std::string line;
  if (!std::getline(f, line)) throw ParseError("empty dataset");
  const auto head = split(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t k = 0; k < head.size(); ++k) col[head[k]] = k;
  for (const char* name : {"label", "d", "N", "sigma", "mean_abs_error"}) {
    if (!col.count(name)) throw ParseError(std::string("dataset lacks column ") + name);
  }
  std::vector<PowerLawRecord> out;
  std::size_t line_no = 1;
  while (std::getline(f, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split(line);
    if (cells.size() < head.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": too few columns");
    }
    PowerLawRecord r;
    try {
      r.label = cells[col["label"]];
      r.d = std::stod(cells[col["d"]]);
      r.N = std::stod(cells[col["N"]]);
      r.sigma = std::stod(cells[col["sigma"]]);
      r.mean_abs_error = std::stod(cells[col["mean_abs_error"]]);
    } catch (const std::logic_error&) {
      throw ParseError("line " + std::to_string(line_no) + ": bad number");
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace splitcc
