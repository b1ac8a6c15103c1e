// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "splitcc/errors.hpp"
#include "splitcc/io.hpp"
#include "splitcc/workflow.hpp"
#include "test_support.hpp"

namespace splitcc {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "splitcc_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

RunSpec n2_tccsd() {
  RunSpec spec;
  spec.command = Command::tccsd;
  spec.fcidump_path = testing::data_path("n2_1.09_631g.fcidump");
  spec.cas = std::array{6, 3, 3};
  return spec;
}

// The overlap-file branch and the internal-CASCI branch agree to 1e-12.
TEST(Run, QuantumAndClassicalBranchesAgree) {
  const auto& b = testing::n2_631g();
  const auto cas = cas_window(b, 6, 3, 3);
  const OverlapSet s = casci_overlaps(run_casci(b, cas), 4);
  const fs::path path = scratch("n2_cas66.jsonl");
  {
    std::ofstream f(path);
    write_overlaps(f, s);
  }
  const TCCResult direct = tccsd_from_overlaps(b, cas, s);
  const TCCResult from_file = tccsd_from_overlaps(b, cas, read_overlaps(path));
  EXPECT_NEAR(direct.base.e_total, from_file.base.e_total, 1e-12);

  RunSpec classical = n2_tccsd();
  RunSpec quantum = n2_tccsd();
  quantum.overlaps_path = path.string();
  std::ostringstream out_c, out_q, err;
  ASSERT_EQ(run(classical, out_c, err), 0) << err.str();
  ASSERT_EQ(run(quantum, out_q, err), 0) << err.str();
  auto energy = [](const std::string& text) {
    const auto k = text.find("\"e_total\": ");
    return std::stod(text.substr(k + 11));
  };
  EXPECT_NEAR(energy(out_c.str()), energy(out_q.str()), 1e-12);
}

TEST(Run, ByteIdenticalOutputs) {
  RunSpec spec;
  spec.command = Command::noise_sweep;
  spec.fcidump_path = testing::data_path("h4_square_1.23_sto3g.fcidump");
  spec.sigmas = {1e-4, 1e-3, 1e-2};
  spec.n_samples = 5;
  spec.seed = 17;
  std::ostringstream a, b, err;
  ASSERT_EQ(run(spec, a, err), 0) << err.str();
  ASSERT_EQ(run(spec, b, err), 0);
  EXPECT_EQ(a.str(), b.str());
  spec.seed = 18;
  std::ostringstream c;
  ASSERT_EQ(run(spec, c, err), 0);
  EXPECT_NE(a.str(), c.str());
}

TEST(Run, ExitCodes) {
  std::ostringstream out, err;
  RunSpec missing;
  missing.command = Command::ccsd;
  missing.fcidump_path = "/nonexistent.fcidump";
  EXPECT_EQ(run(missing, out, err), 2);

  RunSpec nonconv;
  nonconv.command = Command::ccsd;
  nonconv.fcidump_path = testing::data_path("n2_1.09_631g.fcidump");
  nonconv.solver.max_iterations = 1;
  EXPECT_EQ(run(nonconv, out, err), 3);

  RunSpec bad_cas = n2_tccsd();
  bad_cas.cas = std::array{6, 4, 3};
  EXPECT_EQ(run(bad_cas, out, err), 4);

  RunSpec c0 = n2_tccsd();
  c0.eccc.c0_threshold = 0.999;
  EXPECT_EQ(run(c0, out, err), 4);

  RunSpec bad_overlaps = n2_tccsd();
  const fs::path p = scratch("bad.jsonl");
  std::ofstream(p) << "{\"type\":\"nope\"}\n";
  bad_overlaps.overlaps_path = p.string();
  EXPECT_EQ(run(bad_overlaps, out, err), 2);
}

TEST(Run, CountAndBudgetOutputs) {
  RunSpec count;
  count.command = Command::count_overlaps;
  count.cas = std::array{6, 3, 3};
  count.split_method = SplitMethod::eccc;
  std::ostringstream out, err;
  ASSERT_EQ(run(count, out, err), 0);
  EXPECT_EQ(out.str(), "381\n");

  RunSpec budget;
  budget.command = Command::shot_budget;
  budget.t1_rows = {{"0.8", 0.003971}};
  budget.d = 118;
  budget.N = 56;
  budget.n_qubits = 12;
  std::ostringstream csv;
  ASSERT_EQ(run(budget, csv, err), 0) << err.str();
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "label,t1_diag,a,s,s_low,s_high");
  EXPECT_NE(csv.str().find("\n0.8,0.003971,"), std::string::npos);
}

TEST(EmitCurve, RowsAndDecomposition) {
  RunSpec spec;
  spec.command = Command::curve;
  spec.cas = std::array{2, 1, 1};
  spec.curve = {{"a", testing::data_path("n2_1.09_631g.fcidump")},
                {"b", "/nonexistent.fcidump"}};
  spec.curve_methods = {"ccsd", "tccsd"};
  std::ostringstream out;
  emit_curve(spec, out);
  std::istringstream in(out.str());
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], "label,method,status,e_total,e_correlation,e_as,e_ext,iterations");
  EXPECT_EQ(rows[1].rfind("a,ccsd,ok,", 0), 0u);
  EXPECT_EQ(rows[3], "b,ccsd,error,,,,,");
  // e_as + e_ext = e_corr on the TCCSD row.
  std::vector<std::string> cells;
  std::stringstream ss(rows[2]);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  ASSERT_EQ(cells.size(), 8u);
  EXPECT_NEAR(std::stod(cells[5]) + std::stod(cells[6]), std::stod(cells[4]), 1e-10);
}

TEST(PowerLawCsv, ParsesColumnsByName) {
  const fs::path p = scratch("pl.csv");
  std::ofstream(p) << "N,label,sigma,d,mean_abs_error\n56,n2,0.001,118,0.0002\n";
  const auto r = read_powerlaw_csv(p.string());
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].label, "n2");
  EXPECT_EQ(r[0].d, 118);
  EXPECT_EQ(r[0].N, 56);
  std::ofstream(p) << "label,d\nx,1\n";
  EXPECT_THROW(read_powerlaw_csv(p.string()), ParseError);
}

}  // namespace
}  // namespace splitcc
