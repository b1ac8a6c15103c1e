// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#include "splitcc/integrals.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>

#include "splitcc/errors.hpp"

namespace splitcc {

namespace {

constexpr double kDuplicateTolerance = 1e-10;

// Reads the namelist header up to "&END" or "/" and returns it upper-cased.
std::string read_header(std::istream& in) {
  std::string header;
  std::string line;
  bool started = false;
  while (std::getline(in, line)) {
    std::string upper = line;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    if (!started) {
      if (upper.find("&FCI") == std::string::npos) {
        if (upper.find_first_not_of(" \t\r") == std::string::npos) continue;
        throw ParseError("FCIDUMP: missing &FCI namelist header");
      }
      started = true;
    }
    header += upper;
    header += ' ';
    const auto end_pos = upper.find("&END");
    const auto slash = upper.find_first_of('/');
    if (end_pos != std::string::npos || slash != std::string::npos) {
      return header;
    }
  }
  throw ParseError("FCIDUMP: unterminated namelist header");
}

std::vector<int> header_ints(const std::string& header, const std::string& key,
                             bool required) {
  const std::regex re("[ ,&]" + key + R"(\s*=\s*([-+0-9 ,]*))");
  std::smatch m;
  if (!std::regex_search(header, m, re)) {
    if (required) throw ParseError("FCIDUMP: header lacks " + key);
    return {};
  }
  std::vector<int> values;
  std::string body = m[1].str();
  std::replace(body.begin(), body.end(), ',', ' ');
  std::istringstream ss(body);
  int v;
  while (ss >> v) values.push_back(v);
  if (values.empty() && required) {
    throw ParseError("FCIDUMP: no value for " + key);
  }
  return values;
}

}  // namespace

MolecularIntegrals parse_fcidump(std::istream& in) {
  const std::string header = read_header(in);
  MolecularIntegrals mi;
  mi.n_spatial = header_ints(header, "NORB", true).front();
  mi.n_electrons = header_ints(header, "NELEC", true).front();
  const auto ms2 = header_ints(header, "MS2", false);
  mi.ms2 = ms2.empty() ? 0 : ms2.front();
  mi.orbital_symmetries = header_ints(header, "ORBSYM", false);
  if (mi.n_spatial <= 0 || mi.n_spatial > 32) {
    throw ParseError("FCIDUMP: NORB must be in [1, 32]");
  }
  if (mi.n_electrons < 0 || mi.n_electrons > 2 * mi.n_spatial) {
    throw ParseError("FCIDUMP: NELEC out of range");
  }

  const int n = mi.n_spatial;
  const std::size_t n4 = static_cast<std::size_t>(n) * n * n * n;
  mi.h = Eigen::MatrixXd::Zero(n, n);
  mi.eri.assign(n4, 0.0);
  std::vector<char> eri_set(n4, 0);
  std::vector<char> h_set(static_cast<std::size_t>(n) * n, 0);
  bool core_set = false;

  auto assign = [](double& slot, char& flag, double value) {
    if (flag && std::abs(slot - value) > kDuplicateTolerance) {
      throw ParseError("FCIDUMP: contradictory duplicate integral record");
    }
    slot = value;
    flag = 1;
  };

  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    std::string value_text;
    int i, j, k, l;
    if (!(ss >> value_text >> i >> j >> k >> l)) {
      throw ParseError("FCIDUMP: malformed record: " + line);
    }
    std::replace(value_text.begin(), value_text.end(), 'D', 'E');
    std::replace(value_text.begin(), value_text.end(), 'd', 'e');
    double value;
    try {
      value = std::stod(value_text);
    } catch (const std::exception&) {
      throw ParseError("FCIDUMP: bad value: " + line);
    }
    for (int idx : {i, j, k, l}) {
      if (idx < 0 || idx > n) {
        throw ParseError("FCIDUMP: index out of range: " + line);
      }
    }
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      char flag = core_set ? 1 : 0;
      assign(mi.e_core, flag, value);
      core_set = true;
    } else if (k == 0 && l == 0) {
      if (i == 0 || j == 0) {
        // Orbital energy records carry no integral information.
        continue;
      }
      const int p = i - 1, q = j - 1;
      assign(mi.h(p, q), h_set[p * n + q], value);
      assign(mi.h(q, p), h_set[q * n + p], value);
    } else {
      if (i == 0 || j == 0 || k == 0 || l == 0) {
        throw ParseError("FCIDUMP: partially zero index record: " + line);
      }
      const int p = i - 1, q = j - 1, r = k - 1, s = l - 1;
      const int images[8][4] = {{p, q, r, s}, {q, p, r, s}, {p, q, s, r},
                                {q, p, s, r}, {r, s, p, q}, {s, r, p, q},
                                {r, s, q, p}, {s, r, q, p}};
      for (const auto& im : images) {
        const std::size_t idx =
            ((static_cast<std::size_t>(im[0]) * n + im[1]) * n + im[2]) * n +
            im[3];
        assign(mi.eri[idx], eri_set[idx], value);
      }
    }
  }
  return mi;
}

MolecularIntegrals read_fcidump(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open FCIDUMP: " + path.string());
  return parse_fcidump(in);
}

SpinOrbitalBasis to_spin_orbitals(const MolecularIntegrals& mi,
                                  SpinOrdering ordering) {
  if (ordering != SpinOrdering::blocked) {
    throw std::invalid_argument("only blocked spin ordering is supported");
  }
  if ((mi.n_electrons + mi.ms2) % 2 != 0) {
    throw PreconditionError("electron count and MS2 have different parity");
  }
  SpinOrbitalBasis b;
  b.n_spatial = mi.n_spatial;
  b.n_alpha = (mi.n_electrons + mi.ms2) / 2;
  b.n_beta = (mi.n_electrons - mi.ms2) / 2;
  if (b.n_alpha < 0 || b.n_beta < 0 || b.n_alpha > mi.n_spatial ||
      b.n_beta > mi.n_spatial) {
    throw PreconditionError("NELEC/MS2 inconsistent with NORB");
  }
  b.e_core = mi.e_core;
  b.ordering = ordering;

  const int n = mi.n_spatial;
  const int nso = 2 * n;
  b.h = Eigen::MatrixXd::Zero(nso, nso);
  b.h.topLeftCorner(n, n) = mi.h;
  b.h.bottomRightCorner(n, n) = mi.h;

  const std::size_t N = static_cast<std::size_t>(nso);
  b.g.assign(N * N * N * N, 0.0);
  // <pq|rs> = (pr|qs) delta(s_p,s_r) delta(s_q,s_s)
  auto coulomb = [&](int p, int q, int r, int s) {
    if (spin_of(p, n) != spin_of(r, n) || spin_of(q, n) != spin_of(s, n)) {
      return 0.0;
    }
    return mi.eri_at(spatial_of(p, n), spatial_of(r, n), spatial_of(q, n),
                     spatial_of(s, n));
  };
  for (int p = 0; p < nso; ++p) {
    for (int q = 0; q < nso; ++q) {
      for (int r = 0; r < nso; ++r) {
        for (int s = 0; s < nso; ++s) {
          b.g[((p * N + q) * N + r) * N + s] =
              coulomb(p, q, r, s) - coulomb(p, q, s, r);
        }
      }
    }
  }

  for (int i = 0; i < b.n_alpha; ++i) b.reference_occupation.push_back(i);
  for (int i = 0; i < b.n_beta; ++i) b.reference_occupation.push_back(n + i);
  return b;
}

FockResult build_fock(const SpinOrbitalBasis& basis) {
  const int nso = basis.n_spin_orbitals();
  FockResult out;
  out.fock = basis.h;
  out.e_hf = basis.e_core;
  const auto& occ = basis.reference_occupation;
  for (int p = 0; p < nso; ++p) {
    for (int q = 0; q < nso; ++q) {
      double acc = 0.0;
      for (int i : occ) acc += basis.g_at(p, i, q, i);
      out.fock(p, q) += acc;
    }
  }
  for (int i : occ) {
    out.e_hf += basis.h(i, i);
    for (int j : occ) out.e_hf += 0.5 * basis.g_at(i, j, i, j);
  }
  return out;
}

void validate_active_space(const SpinOrbitalBasis& basis,
                           const ActiveSpaceSpec& spec) {
  const int n = basis.n_spatial;
  std::set<int> seen;
  for (int p : spec.active_spatial_orbitals) {
    if (p < 0 || p >= n) {
      throw PreconditionError("active orbital outside the orbital space");
    }
    if (!seen.insert(p).second) {
      throw PreconditionError("active orbitals must be distinct");
    }
  }
  const int k = spec.size();
  if (spec.n_active_alpha < 0 || spec.n_active_beta < 0 ||
      spec.n_active_alpha > k || spec.n_active_beta > k) {
    throw PreconditionError("active electron counts exceed active orbitals");
  }
  std::vector<char> occ_a(n, 0), occ_b(n, 0);
  for (int so : basis.reference_occupation) {
    (spin_of(so, n) == 0 ? occ_a : occ_b)[spatial_of(so, n)] = 1;
  }
  int inactive_docc = 0;
  for (int p = 0; p < n; ++p) {
    if (seen.count(p)) continue;
    if (occ_a[p] != occ_b[p]) {
      throw PreconditionError(
          "inactive orbital is singly occupied in the reference");
    }
    inactive_docc += occ_a[p];
  }
  if (inactive_docc + spec.n_active_alpha != basis.n_alpha ||
      inactive_docc + spec.n_active_beta != basis.n_beta) {
    throw PreconditionError(
        "active electron counts inconsistent with the reference occupation");
  }
  // The reference restricted to the active window must be its aufbau state.
  for (int t = 0; t < k; ++t) {
    const int p = spec.active_spatial_orbitals[t];
    if (occ_a[p] != (t < spec.n_active_alpha ? 1 : 0) ||
        occ_b[p] != (t < spec.n_active_beta ? 1 : 0)) {
      throw PreconditionError(
          "reference occupation inside the active window is not aufbau");
    }
  }
}

ActiveHamiltonian build_active_hamiltonian(const SpinOrbitalBasis& basis,
                                           const ActiveSpaceSpec& spec) {
  validate_active_space(basis, spec);
  const int n = basis.n_spatial;
  const int k = spec.size();
  std::vector<char> active(n, 0);
  for (int p : spec.active_spatial_orbitals) active[p] = 1;

  std::vector<int> inactive_occ;
  for (int so : basis.reference_occupation) {
    if (!active[spatial_of(so, n)]) inactive_occ.push_back(so);
  }

  // Active spin orbital t (blocked over k) -> full spin orbital.
  std::vector<int> to_full(2 * k);
  for (int t = 0; t < k; ++t) {
    to_full[t] = spec.active_spatial_orbitals[t];
    to_full[t + k] = spec.active_spatial_orbitals[t] + n;
  }

  ActiveHamiltonian out;
  SpinOrbitalBasis& a = out.basis;
  a.n_spatial = k;
  a.n_alpha = spec.n_active_alpha;
  a.n_beta = spec.n_active_beta;
  a.ordering = basis.ordering;

  double e_fc = basis.e_core;
  for (int i : inactive_occ) {
    e_fc += basis.h(i, i);
    for (int j : inactive_occ) e_fc += 0.5 * basis.g_at(i, j, i, j);
  }
  out.e_frozen_core = e_fc;
  a.e_core = e_fc;

  const int nso = 2 * k;
  a.h = Eigen::MatrixXd::Zero(nso, nso);
  for (int t = 0; t < nso; ++t) {
    for (int u = 0; u < nso; ++u) {
      double v = basis.h(to_full[t], to_full[u]);
      for (int i : inactive_occ) v += basis.g_at(to_full[t], i, to_full[u], i);
      a.h(t, u) = v;
    }
  }
  const std::size_t N = static_cast<std::size_t>(nso);
  a.g.assign(N * N * N * N, 0.0);
  for (int p = 0; p < nso; ++p)
    for (int q = 0; q < nso; ++q)
      for (int r = 0; r < nso; ++r)
        for (int s = 0; s < nso; ++s)
          a.g[((p * N + q) * N + r) * N + s] =
              basis.g_at(to_full[p], to_full[q], to_full[r], to_full[s]);

  for (int t = 0; t < a.n_alpha; ++t) a.reference_occupation.push_back(t);
  for (int t = 0; t < a.n_beta; ++t) a.reference_occupation.push_back(k + t);
  return out;
}

}  // namespace splitcc
