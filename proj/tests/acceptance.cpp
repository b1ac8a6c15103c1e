// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance checks. Usage: acceptance <id>... where id is one of
// 1 2 3 4 5 6 7 7b 8 9, or no argument for all except 8. Prints one
// PASS/FAIL/SKIP line per check. Exit status: 0 if all pass, 1 on any
// failure, 77 if every requested check was skipped.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "splitcc/cc.hpp"
#include "splitcc/ci.hpp"
#include "splitcc/cluster.hpp"
#include "splitcc/estimator.hpp"
#include "splitcc/noise.hpp"
#include "splitcc/workflow.hpp"
#include "test_support.hpp"

namespace {

using namespace splitcc;
namespace fs = std::filesystem;

enum class Status { pass, fail, skip };

struct Outcome {
  Status status;
  std::string detail;
};

Outcome pass_if(bool ok, std::string detail) {
  return {ok ? Status::pass : Status::fail, std::move(detail)};
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

const SpinOrbitalBasis& h4() { return testing::h4(); }

OverlapSet fci_overlaps(const SpinOrbitalBasis& b, int rank) {
  return casci_overlaps(run_casci(b, full_window(b)), rank);
}

double fci_energy(const SpinOrbitalBasis& b) { return run_casci(b, full_window(b)).energy; }

Outcome c1() {
  const OverlapSet s = fci_overlaps(h4(), 4);
  const EcccRun r = eccc_from_overlaps(h4(), full_window(h4()), s);
  const double err = std::abs(r.result.e_total - fci_energy(h4()));
  return pass_if(r.result.converged && err <= 1e-8,
                 "H4 ec-CC(FCI T3/T4) |E - E_FCI| = " + fmt("%.2e", err) + " (tol 1e-8)");
}

Outcome c2() {
  const CCResult r = solve_ccsd(h4());
  const double diff = (r.e_total - fci_energy(h4())) * 1e3;
  return pass_if(r.converged && std::abs(std::abs(diff) - 7.05) <= 0.1,
                 "H4 CCSD - FCI = " + fmt("%.4f", diff) + " mEh, |.| = 7.05 +- 0.1");
}

Outcome c3() {
  const auto& b = h4();
  const auto dets = enumerate_determinants(4, 2, 2, 2, aufbau(2, 2));
  const auto cisd = solve_ci(b, dets);
  const OverlapSet s = extract_overlaps(cisd.states[0], 4);
  EcccOptions type1;
  type1.type2 = false;
  const EcccRun r1 = eccc_from_overlaps(b, full_window(b), s, {}, type1);
  const EcccRun r2 = eccc_from_overlaps(b, full_window(b), s, {}, EcccOptions{});
  const CCResult ccsd = solve_ccsd(b);
  const double e1 = std::abs(r1.result.e_total - cisd.energies[0]);
  const double e2 = std::abs(r2.result.e_total - ccsd.e_total);
  return pass_if(r1.result.converged && r2.result.converged && e1 <= 1e-8 && e2 <= 1e-8,
                 "Type-I |E - E_CISD| = " + fmt("%.2e", e1) + ", Type-II |E - E_CCSD| = " +
                     fmt("%.2e", e2) + " (tol 1e-8)");
}

Outcome c4() {
  double worst_full = 0.0, worst_empty = 0.0, worst_split = 0.0;
  bool converged = true;
  const std::vector<const SpinOrbitalBasis*> fixtures = {&testing::h2(), &testing::h4(),
                                                         &testing::n2_631g()};
  auto track_split = [&](const TCCResult& r) {
    converged = converged && r.base.converged;
    worst_split = std::max(worst_split, std::abs(r.e_as + r.e_ext - r.base.e_correlation));
  };
  for (const auto* b : fixtures) {
    if (b->n_spatial <= 8) {
      const auto full = full_window(*b);
      const CasciResult c = run_casci(*b, full);
      const TCCResult r = tccsd_from_overlaps(*b, full, casci_overlaps(c, 2));
      track_split(r);
      worst_full = std::max(worst_full, std::abs(r.base.e_total - c.energy));
    }
    const auto none = cas_window(*b, 0, 0, 0);
    const TCCResult e = tccsd_from_overlaps(*b, none, casci_overlaps(run_casci(*b, none), 2));
    track_split(e);
    worst_empty = std::max(worst_empty, std::abs(e.base.e_total - solve_ccsd(*b).e_total));
  }
  for (int k : {2, 4, 6}) {
    const auto& b = testing::n2_631g();
    const auto cas = cas_window(b, k, k / 2, k / 2);
    track_split(tccsd_from_overlaps(b, cas, casci_overlaps(run_casci(b, cas), 2)));
  }
  return pass_if(converged && worst_full <= 1e-8 && worst_empty <= 1e-10 && worst_split <= 1e-10,
                 "full AS |E - E_CASCI| = " + fmt("%.1e", worst_full) + " (1e-8), empty AS |E - E_CCSD| = " +
                     fmt("%.1e", worst_empty) + " (1e-10), max |e_as + e_ext - e_corr| = " +
                     fmt("%.1e", worst_split) + " (1e-10)");
}

Outcome c5() {
  struct Row {
    int electrons, orbitals;
    long long tccsd, eccc;
  };
  const Row rows[] = {
      {2, 2, 4, 4},          {4, 4, 27, 36},         {4, 6, 93, 225},
      {6, 6, 118, 381},      {4, 8, 199, 784},       {6, 8, 316, 2436},
      {8, 8, 361, 3355},     {10, 10, 876, 21126},   {12, 10, 805, 17255},
      {12, 12, 1819, 98694}, {10, 14, 2836, 243376}, {6, 16, 2068, 97956},
      {8, 16, 3193, 285255}, {10, 16, 4236, 555336}, {12, 16, 5071, 840796},
  };
  int ok_t = 0, ok_e = 0;
  for (const auto& r : rows) {
    const int z = r.electrons / 2;
    ok_t += count_overlaps(r.orbitals, z, z, SplitMethod::tccsd) == r.tccsd;
    ok_e += count_overlaps(r.orbitals, z, z, SplitMethod::eccc) == r.eccc;
  }
  const int n = static_cast<int>(std::size(rows));
  return pass_if(ok_t == n && ok_e == n,
                 std::to_string(ok_t) + "/" + std::to_string(n) + " TCCSD and " +
                     std::to_string(ok_e) + "/" + std::to_string(n) +
                     " ec-CC published counts reproduced exactly");
}

Outcome c6() {
  const std::vector<double> t1 = {0.003971, 0.005565, 0.007615, 0.009951, 0.012471, 0.015096,
                                  0.017743, 0.020334, 0.022822, 0.025201, 0.027514, 0.029856,
                                  0.032356, 0.035100, 0.037925, 0.040453, 0.042473, 0.043984,
                                  0.045062, 0.045782, 0.046208};
  const std::vector<double> published = {
      5231,    19113,   49744,   102152,  179660,  283459,  411969,  561053,  725770,  903020, 1093981,
      1305941, 1552971, 1848706, 2179969, 2499711, 2770777, 2982769, 3138644, 3245054, 3308901};
  const CurveBudget cb = total_curve_budget(t1, 118, 56, 12, 1e-3);
  double worst = 0.0;
  for (std::size_t k = 0; k < t1.size(); ++k) {
    worst = std::max(worst, std::abs(cb.rows[k].s - published[k]) / published[k]);
  }
  const double total_dev = std::abs(cb.total - 2.9e7) / 2.9e7;
  return pass_if(worst <= 0.05 && total_dev <= 0.05,
                 "R=0.8 s = " + std::to_string(cb.rows.front().s) + " (5231), R=2.8 s = " +
                     std::to_string(cb.rows.back().s) + " (3308901), worst row " +
                     fmt("%.2f%%", 100 * worst) + ", total " + fmt("%.4g", double(cb.total)) +
                     " (2.9e7 +- 5%)");
}

Outcome c7() {
  const auto& b = testing::n2_631g();
  const auto cas = cas_window(b, 6, 3, 3);
  const OverlapSet exact = casci_overlaps(run_casci(b, cas), 2);
  const OverlapWorkflow wf = [&](const OverlapSet& s) -> std::pair<double, bool> {
    const TCCResult r = tccsd_from_overlaps(b, cas, s);
    return {r.base.e_total, r.base.converged};
  };
  std::vector<std::pair<double, double>> pts;
  int nonconverged = 0;
  std::uint64_t seed = 2024;
  std::string detail;
  for (double sigma : {1e-4, 1e-3, 1e-2}) {
    const NoisePoint p = sample_energy_error(wf, exact, sigma, 30, seed++);
    nonconverged += p.n_nonconverged;
    pts.emplace_back(sigma, p.mean_abs_error);
    detail += fmt("sigma %.0e: ", sigma) + fmt("%.3e Eh; ", p.mean_abs_error);
  }
  const SigmaFit f = fit_sigma_exponent(pts, 1000, 7);
  return pass_if(f.beta >= 0.9 && f.beta <= 1.1 && nonconverged == 0,
                 "N2/6-31G CAS(6,6) TCCSD, 30 samples: " + detail +
                     "beta_sigma = " + fmt("%.4f", f.beta) + fmt(" +- %.4f", f.beta_err) +
                     " ([0.9, 1.1]), non-converged " + std::to_string(nonconverged));
}

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? v : fallback;
}

Outcome c7b() {
  const std::string path = env_or("SPLITCC_POWERLAW_DATASET", testing::data_path("powerlaw_dataset.csv"));
  if (!fs::exists(path)) {
    return {Status::skip, "published power-law dataset not available at " + path};
  }
  const PowerLawModel m = fit_power_law(read_powerlaw_csv(path), 1000, 0);
  return pass_if(std::abs(m.beta - 0.277) <= 0.06 && std::abs(m.gamma + 1.074) <= 0.13,
                 "beta = " + fmt("%.4f", m.beta) + " (0.277 +- 0.06), gamma = " +
                     fmt("%.4f", m.gamma) + " (-1.074 +- 0.13)");
}

bool has_local_max(const std::vector<double>& r, const std::vector<double>& e, double r_min) {
  for (std::size_t k = 1; k + 1 < e.size(); ++k) {
    if (r[k] > r_min && e[k] > e[k - 1] && e[k] > e[k + 1]) return true;
  }
  return false;
}

Outcome c8() {
  const std::string dir = env_or("SPLITCC_N2_CURVE_DIR", "");
  std::vector<double> rs;
  std::vector<std::string> files;
  for (int k = 0; k <= 20; ++k) {
    char name[64];
    std::snprintf(name, sizeof(name), "n2_ccpvdz_%.1f.fcidump", 0.8 + 0.1 * k);
    const fs::path p = fs::path(dir) / name;
    if (dir.empty() || !fs::exists(p)) {
      return {Status::skip, "N2/cc-pVDZ FCIDUMPs not found (set SPLITCC_N2_CURVE_DIR)"};
    }
    rs.push_back(0.8 + 0.1 * k);
    files.push_back(p.string());
  }
  struct Point {
    double casci, ccsd, tccsd;
    bool ok, shifted;
  };
  // A level shift changes only the step, not the fixed point; it is used when
  // the unshifted CCSD iterations stall at stretched bonds.
  auto compute = [](const std::string& file) {
    const SpinOrbitalBasis b = to_spin_orbitals(read_fcidump(file));
    const auto cas = cas_window(b, 6, 3, 3);
    const CasciResult c = run_casci(b, cas);
    const TCCResult t = tccsd_from_overlaps(b, cas, casci_overlaps(c, 2));
    CCResult cc = solve_ccsd(b);
    const bool shifted = !cc.converged;
    if (shifted) {
      SolverConfig cfg;
      cfg.level_shift = 0.3;
      cc = solve_ccsd(b, cfg);
    }
    return Point{c.energy, cc.e_total, t.base.e_total, t.base.converged && cc.converged, shifted};
  };
  std::vector<std::future<Point>> jobs;
  for (const auto& f : files) jobs.push_back(std::async(std::launch::async, compute, f));
  std::vector<double> cas, cc, tcc;
  bool ok = true;
  std::string shifted;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const Point p = jobs[k].get();
    if (p.shifted) shifted += fmt(" %.1f", rs[k]);
    cas.push_back(p.casci);
    cc.push_back(p.ccsd);
    tcc.push_back(p.tccsd);
    ok = ok && p.ok;
  }
  const std::size_t eq = 3, last = rs.size() - 1;  // R = 1.1 and 2.8
  const double cas_barrier = (cas[last] - cas[eq]) * 1e3;
  const double tcc_barrier = (tcc[last] - tcc[eq]) * 1e3;
  const double shift = tcc_barrier - cas_barrier;
  const bool tcc_max = has_local_max(rs, tcc, 1.7 - 1e-9);
  const bool cc_max = has_local_max(rs, cc, 1.7 - 1e-9);
  return pass_if(ok && std::abs(shift - 45.4) <= 2.0 && !tcc_max && cc_max,
                 "CASCI barrier " + fmt("%.2f", cas_barrier) + " mEh, TCCSD barrier " +
                     fmt("%.2f", tcc_barrier) + " mEh, shift " + fmt("%.2f", shift) +
                     " mEh (45.4 +- 2); local maximum beyond 1.7 A: TCCSD " +
                     (tcc_max ? "yes" : "no") + ", CCSD " + (cc_max ? "yes" : "no") +
                     (ok ? "" : "; not converged") +
                     (shifted.empty() ? "" : "; CCSD level-shifted at R =" + shifted));
}

// Compact re-run of the property suites over 100 seeds.
Outcome c9() {
  int failures = 0;
  const int seeds = 100;
  std::vector<std::string> notes;
  auto check = [&](bool ok, const char* what, int seed) {
    if (!ok) {
      ++failures;
      if (notes.size() < 3) notes.push_back(std::string(what) + " seed " + std::to_string(seed));
    }
  };
  const int n = 4;
  const std::uint64_t ref = spin_bits(aufbau(2, 2), n);
  const AmplitudeSpace space = make_space(n, ref);
  std::vector<std::vector<ExcitationLabel>> labels(5);
  for (int r = 1; r <= 4; ++r) labels[r] = enumerate_labels(space.occupied, space.virtuals, r, n);

  auto random_overlaps = [&](std::mt19937& rng) {
    OverlapSet s;
    s.n_spatial = n;
    s.reference = aufbau(2, 2);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    s.c0 = 0.8 + 0.1 * u(rng);
    for (int r = 1; r <= 4; ++r)
      for (const auto& l : labels[r]) s.entries[l] = {u(rng), std::nullopt};
    return s;
  };
  auto max_diff = [&](const AmplitudeSet& a, const AmplitudeSet& b) {
    double d = 0.0;
    for (int r = 1; r <= 4; ++r)
      for (const auto& l : labels[r]) d = std::max(d, std::abs(a.amplitude(l) - b.amplitude(l)));
    return d;
  };

  const OverlapSet h4_exact = fci_overlaps(h4(), 4);
  for (int seed = 0; seed < seeds; ++seed) {
    std::mt19937 rng(90000 + seed);
    const OverlapSet c = random_overlaps(rng);
    const AmplitudeSet t = ci_to_cc(c, 4);
    // CI -> CC -> CI and CC -> CI -> CC round trips.
    const OverlapSet back = cc_to_ci(t, 4);
    double d = 0.0;
    for (const auto& [l, e] : c.entries) d = std::max(d, std::abs(e.value / c.c0 - back.value(l)));
    check(d <= 1e-12, "ci round trip", seed);
    check(max_diff(t, ci_to_cc(back, 4)) <= 1e-12, "cc round trip", seed);
    // Antisymmetry of t2.
    bool anti = true;
    for (int i = 0; i < space.o(); ++i)
      for (int j = 0; j < space.o(); ++j)
        for (int a = 0; a < space.v(); ++a)
          for (int b = 0; b < space.v(); ++b) {
            const double x = t.t2_at(i, j, a, b);
            anti = anti && x == -t.t2_at(j, i, a, b) && x == -t.t2_at(i, j, b, a);
          }
    check(anti, "t2 antisymmetry", seed);
    // Intermediate-normalization scale invariance.
    OverlapSet scaled = c;
    const double lambda = seed % 2 ? -3.7 : 0.21;
    scaled.c0 *= lambda;
    for (auto& [l, e] : scaled.entries) e.value *= lambda;
    check(max_diff(t, ci_to_cc(scaled, 4)) <= 1e-12, "scale invariance", seed);
    // phase_align idempotence and global phase invariance.
    CIVector v = synthesize_civector(c);
    const CIVector aligned = phase_align(v);
    const CIVector twice = phase_align(aligned);
    const double theta = std::uniform_real_distribution<>(0.0, 6.283185307179586)(rng);
    for (auto& x : v.coefficients) x *= std::polar(1.3, theta);
    const CIVector rotated = phase_align(v);
    double pd = 0.0;
    for (std::size_t k = 0; k < aligned.basis.size(); ++k) {
      pd = std::max(pd, std::abs(aligned.coefficients[k] - twice.coefficients[k]));
      pd = std::max(pd, std::abs(aligned.coefficients[k] - rotated.coefficients[k]));
    }
    check(pd <= 1e-12, "phase_align", seed);
    // Variance-filter monotonicity in k.
    OverlapSet noisy = c;
    std::uniform_real_distribution<double> u(1e-3, 0.2);
    for (auto& [l, e] : noisy.entries) e.variance = u(rng) * u(rng);
    std::size_t prev = 0;
    bool mono = true;
    for (double k : {0.5, 1.0, 2.0, 4.0}) {
      const auto [f, rep] = filter_variance(noisy, k);
      mono = mono && rep.n_zeroed_by_variance >= prev;
      prev = rep.n_zeroed_by_variance;
    }
    check(mono, "filter monotonicity", seed);
    // Seeded noise determinism.
    NoiseSpec spec;
    spec.sigma = 1e-3;
    spec.seed = static_cast<std::uint64_t>(seed);
    const OverlapSet p1 = perturb_overlaps(h4_exact, spec, 3);
    const OverlapSet p2 = perturb_overlaps(h4_exact, spec, 3);
    bool same = p1.c0 == p2.c0;
    for (const auto& [l, e] : p1.entries) same = same && e.value == p2.entries.at(l).value;
    check(same, "noise determinism", seed);
  }
  std::string detail = std::to_string(seeds) + " seeds x 7 properties, " +
                       std::to_string(failures) + " failures";
  for (const auto& s : notes) detail += "; " + s;
  return pass_if(failures == 0, detail);
}

struct Criterion {
  const char* name;
  double max_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::map<std::string, Criterion> all = {
      {"1", {"ec-CC exactness", 10, c1}},
      {"2", {"CCSD error anchor", 10, c2}},
      {"3", {"truncated-CI oracle", 30, c3}},
      {"4", {"TCCSD limits", 60, c4}},
      {"5", {"overlap counting", 1, c5}},
      {"6", {"shot-budget table", 1, c6}},
      {"7", {"noise linearity", 600, c7}},
      {"7b", {"power-law refit", 60, c7b}},
      {"8", {"N2 barrier shift", 1800, c8}},
      {"9", {"property suites", 300, c9}},
  };
  std::vector<std::string> ids(argv + 1, argv + argc);
  if (ids.empty()) ids = {"1", "2", "3", "4", "5", "6", "7", "7b", "9"};
  int failed = 0, skipped = 0;
  for (const auto& id : ids) {
    const auto it = all.find(id);
    if (it == all.end()) {
      std::printf("FAIL criterion %s: unknown id\n", id.c_str());
      ++failed;
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = it->second.run();
    } catch (const std::exception& e) {
      o = {Status::fail, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.status == Status::pass && secs > it->second.max_seconds) {
      o.status = Status::fail;
      o.detail += "; runtime over budget";
    }
    const char* tag = o.status == Status::pass ? "PASS" : o.status == Status::fail ? "FAIL" : "SKIP";
    std::printf("%s criterion %s (%s): %s [%.2f s, budget %.0f s]\n", tag, id.c_str(),
                it->second.name, o.detail.c_str(), secs, it->second.max_seconds);
    std::fflush(stdout);
    failed += o.status == Status::fail;
    skipped += o.status == Status::skip;
  }
  if (failed) return 1;
  if (skipped == static_cast<int>(ids.size())) return 77;
  return 0;
}
