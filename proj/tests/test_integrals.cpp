// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sstream>

#include "splitcc/ci.hpp"
#include "splitcc/errors.hpp"
#include "splitcc/integrals.hpp"
#include "test_support.hpp"

namespace splitcc {
namespace {

using testing::h2;
using testing::h4;

MolecularIntegrals parse(const std::string& text) {
  std::istringstream in(text);
  return parse_fcidump(in);
}

const char* kTiny =
    " &FCI NORB=2,NELEC=2,MS2=0,\n"
    "  ORBSYM=1,1,\n  ISYM=1,\n &END\n"
    "  0.5 1 1 1 1\n"
    "  0.25 2 1 1 1\n"
    "  0.1D0 2 2 1 1\n"
    "  -1.25 1 1 0 0\n"
    "  0.3 2 1 0 0\n"
    "  -0.5 2 2 0 0\n"
    "  0.7 0 0 0 0\n";

TEST(Fcidump, ParsesHeaderAndSymmetryImages) {
  const auto mi = parse(kTiny);
  EXPECT_EQ(mi.n_spatial, 2);
  EXPECT_EQ(mi.n_electrons, 2);
  EXPECT_EQ(mi.ms2, 0);
  EXPECT_DOUBLE_EQ(mi.e_core, 0.7);
  EXPECT_DOUBLE_EQ(mi.h(0, 1), 0.3);
  EXPECT_DOUBLE_EQ(mi.h(1, 0), 0.3);
  EXPECT_DOUBLE_EQ(mi.eri_at(1, 1, 0, 0), 0.1);
  EXPECT_DOUBLE_EQ(mi.eri_at(0, 0, 1, 1), 0.1);
  for (auto [p, q, r, s] : {std::array{1, 0, 0, 0}, std::array{0, 1, 0, 0},
                            std::array{0, 0, 1, 0}, std::array{0, 0, 0, 1}}) {
    EXPECT_DOUBLE_EQ(mi.eri_at(p, q, r, s), 0.25);
  }
}

TEST(Fcidump, SlashTerminatorAccepted) {
  const auto mi = parse("&FCI NORB=1,NELEC=2,MS2=0,\n/\n 0.6 1 1 1 1\n -1.0 1 1 0 0\n");
  EXPECT_EQ(mi.n_spatial, 1);
  EXPECT_DOUBLE_EQ(mi.eri_at(0, 0, 0, 0), 0.6);
}

TEST(Fcidump, Errors) {
  EXPECT_THROW(parse("0.5 1 1 1 1\n"), ParseError);
  EXPECT_THROW(parse("&FCI NELEC=2,MS2=0,\n&END\n"), ParseError);
  EXPECT_THROW(parse("&FCI NORB=1,NELEC=2,MS2=0,\n&END\n 0.5 2 1 1 1\n"), ParseError);
  EXPECT_THROW(parse("&FCI NORB=1,NELEC=2,MS2=0,\n&END\n 0.5 1 1 x 1\n"), ParseError);
  EXPECT_THROW(parse("&FCI NORB=2,NELEC=2,MS2=0,\n&END\n 0.5 2 1 1 1\n 0.6 1 2 1 1\n"),
               ParseError);
  EXPECT_THROW(read_fcidump("/nonexistent/file.fcidump"), ParseError);
}

TEST(Fcidump, ConsistentDuplicatesAccepted) {
  EXPECT_NO_THROW(
      parse("&FCI NORB=2,NELEC=2,MS2=0,\n&END\n 0.5 2 1 1 1\n 0.5 1 2 1 1\n"));
}

TEST(SpinOrbitals, AntisymmetryAndHermiticity) {
  const auto& b = h4();
  const int n = b.n_spin_orbitals();
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      EXPECT_DOUBLE_EQ(b.h(p, q), b.h(q, p));
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double g = b.g_at(p, q, r, s);
          ASSERT_DOUBLE_EQ(g, -b.g_at(q, p, r, s));
          ASSERT_DOUBLE_EQ(g, -b.g_at(p, q, s, r));
          ASSERT_DOUBLE_EQ(g, b.g_at(r, s, p, q));
        }
    }
}

TEST(SpinOrbitals, SpinBlocksVanish) {
  const auto& b = h4();
  const int n = b.n_spatial;
  EXPECT_EQ(b.h(0, n), 0.0);
  EXPECT_EQ(b.g_at(0, n, 1, 2), 0.0);
  EXPECT_NE(b.g_at(0, n, 0, n), 0.0);
}

TEST(SpinOrbitals, InterleavedRejected) {
  const auto mi = parse(kTiny);
  EXPECT_THROW(to_spin_orbitals(mi, SpinOrdering::interleaved), std::invalid_argument);
}

TEST(Fock, HartreeFockEnergies) {
  EXPECT_NEAR(build_fock(h2()).e_hf, -1.1166843871, 1e-9);
  EXPECT_NEAR(build_fock(h4()).e_hf, testing::kH4Hf, 1e-9);
}

TEST(Fock, CanonicalOrbitalsDiagonal) {
  const auto f = build_fock(h4()).fock;
  for (int p = 0; p < f.rows(); ++p)
    for (int q = 0; q < f.cols(); ++q)
      if (p != q) EXPECT_NEAR(f(p, q), 0.0, 1e-7);
}

TEST(Fock, EqualsReferenceDiagonalElement) {
  const auto& b = h4();
  const std::uint64_t ref = spin_bits(aufbau(b.n_alpha, b.n_beta), b.n_spatial);
  EXPECT_NEAR(diagonal_energy(b, ref), build_fock(b).e_hf, 1e-12);
}

TEST(ActiveSpace, Validation) {
  const auto& b = h4();
  EXPECT_NO_THROW(validate_active_space(b, {{1, 2}, 1, 1}));
  EXPECT_THROW(validate_active_space(b, {{1, 1}, 1, 1}), PreconditionError);
  EXPECT_THROW(validate_active_space(b, {{1, 7}, 1, 1}), PreconditionError);
  // Orbital 0 inactive but orbital 1 electrons not accounted for.
  EXPECT_THROW(validate_active_space(b, {{1, 2}, 2, 2}), PreconditionError);
  // Inactive occupied orbital 2 would be empty.
  EXPECT_THROW(validate_active_space(b, {{0, 1}, 1, 1}), PreconditionError);
}

// CASCI energy in the active Hamiltonian equals the lowest eigenvalue of the
// full Hamiltonian restricted to determinants with the core doubly occupied.
TEST(ActiveSpace, FrozenCoreGaugeMatchesFullSpace) {
  const auto& b = testing::n2_631g();
  const ActiveSpaceSpec spec{{5, 6, 7, 8}, 2, 2};
  const auto ah = build_active_hamiltonian(b, spec);
  const auto dets = enumerate_determinants(4, 2, 2);
  const double e_active = solve_ci(ah.basis, dets).energies[0];

  std::vector<Determinant> full;
  const std::uint64_t core = (1ULL << 5) - 1;
  for (const auto& d : dets) {
    Determinant f{core, core};
    for (int t = 0; t < 4; ++t) {
      if (d.alpha >> t & 1) f.alpha |= 1ULL << spec.active_spatial_orbitals[t];
      if (d.beta >> t & 1) f.beta |= 1ULL << spec.active_spatial_orbitals[t];
    }
    full.push_back(f);
  }
  Eigen::MatrixXd h(full.size(), full.size());
  for (std::size_t i = 0; i < full.size(); ++i)
    for (std::size_t j = 0; j < full.size(); ++j)
      h(i, j) = hamiltonian_element(b, spin_bits(full[i], b.n_spatial),
                                    spin_bits(full[j], b.n_spatial));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  EXPECT_NEAR(e_active, es.eigenvalues()[0], 1e-10);
}

TEST(ActiveSpace, ReferenceEnergyPreserved) {
  const auto& b = testing::n2_631g();
  const ActiveSpaceSpec spec{{4, 5, 6, 7, 8, 9}, 3, 3};
  const auto ah = build_active_hamiltonian(b, spec);
  const std::uint64_t ref = spin_bits(aufbau(3, 3), 6);
  EXPECT_NEAR(diagonal_energy(ah.basis, ref), build_fock(b).e_hf, 1e-10);
}

}  // namespace
}  // namespace splitcc
