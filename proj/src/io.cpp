// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#include "splitcc/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "splitcc/errors.hpp"

namespace splitcc {

using nlohmann::json;

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

namespace {

std::vector<int> bits_to_list(std::uint64_t bits) { return occupied_list(bits); }

std::uint64_t list_to_bits(const json& j, int n) {
  std::uint64_t bits = 0;
  for (const auto& v : j) {
    const int p = v.get<int>();
    if (p < 0 || p >= n) throw ParseError("orbital index out of range");
    if (bits & (1ULL << p)) throw ParseError("repeated orbital index");
    bits |= 1ULL << p;
  }
  return bits;
}

json reference_json(const Determinant& d) {
  return {{"alpha_occ", bits_to_list(d.alpha)}, {"beta_occ", bits_to_list(d.beta)}};
}

Determinant reference_from(const json& j, int n) {
  return {list_to_bits(j.at("alpha_occ"), n), list_to_bits(j.at("beta_occ"), n)};
}

json header(const char* type, int n, const Determinant& ref) {
  return {{"type", type}, {"n_spatial", n}, {"reference", reference_json(ref)}};
}

// Reads the header line and invokes `record` for every following line.
template <typename F>
json read_records(std::istream& in, const char* type, F&& record) {
  std::string line;
  json head;
  bool have_header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    try {
      if (!have_header) {
        if (j.value("type", std::string()) != type) {
          throw ParseError(std::string("expected header of type ") + type);
        }
        head = std::move(j);
        have_header = true;
        continue;
      }
      record(j, head);
    } catch (const json::exception& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw ParseError(std::string("missing ") + type + " header");
  return head;
}

ExcitationLabel label_from(const json& j, int n) {
  const auto occ = j.at("occ").get<std::vector<int>>();
  const auto vir = j.at("virt").get<std::vector<int>>();
  for (int p : occ)
    if (p < 0 || p >= 2 * n) throw ParseError("spin orbital index out of range");
  for (int p : vir)
    if (p < 0 || p >= 2 * n) throw ParseError("spin orbital index out of range");
  if (j.contains("rank") && j.at("rank").get<int>() != static_cast<int>(occ.size())) {
    throw ParseError("rank does not match index count");
  }
  std::vector<int> so = occ, sv = vir;
  const int parity = sort_parity(so) * sort_parity(sv);
  if (parity != 1) {
    throw ParseError("excitation indices must be strictly ascending");
  }
  return ExcitationLabel(occ, vir);
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

}  // namespace

void write_overlaps(std::ostream& out, const OverlapSet& s) {
  out << header("overlap_set", s.n_spatial, s.reference).dump() << '\n';
  json c0 = {{"rank", 0},         {"occ", json::array()}, {"virt", json::array()},
             {"value_re", s.c0}, {"value_im", 0.0},      {"variance", nullptr}};
  if (s.c0_variance) c0["variance"] = *s.c0_variance;
  out << c0.dump() << '\n';
  for (const auto& [label, e] : s.entries) {
    json r = {{"rank", label.rank},     {"occ", label.occupied()}, {"virt", label.virtuals()},
              {"value_re", e.value},    {"value_im", 0.0},         {"variance", nullptr}};
    if (e.variance) r["variance"] = *e.variance;
    out << r.dump() << '\n';
  }
}

OverlapSet read_overlaps(std::istream& in) {
  OverlapSet s;
  bool have_c0 = false;
  const json head = read_records(in, "overlap_set", [&](const json& j, const json& h) {
    if (s.n_spatial == 0) {
      s.n_spatial = h.at("n_spatial").get<int>();
      if (s.n_spatial <= 0 || s.n_spatial > 32) throw ParseError("n_spatial out of range");
      s.reference = reference_from(h.at("reference"), s.n_spatial);
    }
    const double im = j.value("value_im", 0.0);
    if (im != 0.0) throw ParseError("complex overlaps must be phase aligned first");
    const ExcitationLabel label = label_from(j, s.n_spatial);
    const double value = j.at("value_re").get<double>();
    std::optional<double> var;
    if (j.contains("variance") && !j.at("variance").is_null()) {
      var = j.at("variance").get<double>();
    }
    if (label.rank == 0) {
      s.c0 = value;
      s.c0_variance = var;
      have_c0 = true;
      return;
    }
    excitation_phase(s.reference_bits(), label);
    s.entries[label] = {value, var};
  });
  if (s.n_spatial == 0) {
    s.n_spatial = head.at("n_spatial").get<int>();
    s.reference = reference_from(head.at("reference"), s.n_spatial);
  }
  if (!have_c0) throw ParseError("overlap file lacks the rank-0 record");
  return s;
}

OverlapSet read_overlaps(const std::filesystem::path& path) {
  auto in = open(path);
  return read_overlaps(in);
}

void write_civector(std::ostream& out, const CIVector& v) {
  out << header("ci_vector", v.n_spatial, v.reference).dump() << '\n';
  for (std::size_t k = 0; k < v.basis.size(); ++k) {
    json r = {{"alpha_occ", bits_to_list(v.basis[k].alpha)},
              {"beta_occ", bits_to_list(v.basis[k].beta)},
              {"value_re", v.coefficients[k].real()},
              {"value_im", v.coefficients[k].imag()}};
    out << r.dump() << '\n';
  }
}

CIVector read_civector(std::istream& in) {
  CIVector v;
  const json head = read_records(in, "ci_vector", [&](const json& j, const json& h) {
    if (v.n_spatial == 0) {
      v.n_spatial = h.at("n_spatial").get<int>();
      if (v.n_spatial <= 0 || v.n_spatial > 32) throw ParseError("n_spatial out of range");
      v.reference = reference_from(h.at("reference"), v.n_spatial);
    }
    const Determinant d{list_to_bits(j.at("alpha_occ"), v.n_spatial),
                        list_to_bits(j.at("beta_occ"), v.n_spatial)};
    v.basis.push_back(d);
    v.coefficients.emplace_back(j.at("value_re").get<double>(), j.value("value_im", 0.0));
  });
  if (v.n_spatial == 0) {
    v.n_spatial = head.at("n_spatial").get<int>();
    v.reference = reference_from(head.at("reference"), v.n_spatial);
  }
  return v;
}

CIVector read_civector(const std::filesystem::path& path) {
  auto in = open(path);
  return read_civector(in);
}

void write_amplitudes(std::ostream& out, const AmplitudeSet& a) {
  const auto& sp = a.space;
  out << header("amplitude_set", sp.n_spatial, sp.reference()).dump() << '\n';
  auto emit = [&](const ExcitationLabel& label, double t, bool frozen) {
    json r = {{"rank", label.rank}, {"occ", label.occupied()}, {"virt", label.virtuals()},
              {"t", t}};
    if (frozen) r["frozen"] = true;
    out << r.dump() << '\n';
  };
  for (int i = 0; i < sp.o(); ++i)
    for (int x = 0; x < sp.v(); ++x)
      if (a.t1(i, x) != 0.0 || a.t1_frozen(i, x)) {
        emit(ExcitationLabel({sp.occupied[i]}, {sp.virtuals[x]}), a.t1(i, x), a.t1_frozen(i, x));
      }
  for (int i = 0; i < sp.o(); ++i)
    for (int j = i + 1; j < sp.o(); ++j)
      for (int x = 0; x < sp.v(); ++x)
        for (int y = x + 1; y < sp.v(); ++y)
          if (a.t2_at(i, j, x, y) != 0.0 || a.t2_frozen(i, j, x, y)) {
            emit(ExcitationLabel({sp.occupied[i], sp.occupied[j]},
                                 {sp.virtuals[x], sp.virtuals[y]}),
                 a.t2_at(i, j, x, y), a.t2_frozen(i, j, x, y));
          }
  for (const auto* m : {&a.t3, &a.t4})
    for (const auto& [label, t] : *m) emit(label, t, false);
}

AmplitudeSet read_amplitudes(std::istream& in) {
  AmplitudeSet a;
  bool init = false;
  auto setup = [&](const json& h) {
    const int n = h.at("n_spatial").get<int>();
    if (n <= 0 || n > 32) throw ParseError("n_spatial out of range");
    const Determinant ref = reference_from(h.at("reference"), n);
    a = AmplitudeSet::zeros(make_space(n, spin_bits(ref, n)));
    init = true;
  };
  const json head = read_records(in, "amplitude_set", [&](const json& j, const json& h) {
    if (!init) setup(h);
    const auto& sp = a.space;
    const ExcitationLabel label = label_from(j, sp.n_spatial);
    const double t = j.at("t").get<double>();
    const bool frozen = j.value("frozen", false);
    excitation_phase(sp.reference_bits(), label);
    switch (label.rank) {
      case 1: {
        const int i = sp.occ_pos[label.occ[0]], x = sp.vir_pos[label.virt[0]];
        a.t1(i, x) = t;
        if (frozen) {
          if (a.frozen_t1.empty()) a.frozen_t1.assign(sp.o() * sp.v(), 0);
          a.frozen_t1[i * sp.v() + x] = 1;
        }
        break;
      }
      case 2: {
        const int i = sp.occ_pos[label.occ[0]], j2 = sp.occ_pos[label.occ[1]];
        const int x = sp.vir_pos[label.virt[0]], y = sp.vir_pos[label.virt[1]];
        a.set_t2(i, j2, x, y, t);
        if (frozen) {
          if (a.frozen_t2.empty()) a.frozen_t2.assign(a.t2.size(), 0);
          for (auto idx : {a.t2_index(i, j2, x, y), a.t2_index(j2, i, x, y),
                           a.t2_index(i, j2, y, x), a.t2_index(j2, i, y, x)}) {
            a.frozen_t2[idx] = 1;
          }
        }
        break;
      }
      case 3:
        a.t3[label] = t;
        break;
      case 4:
        a.t4[label] = t;
        break;
      default:
        throw ParseError("amplitude rank must be 1..4");
    }
  });
  if (!init) setup(head);
  return a;
}

}  // namespace splitcc
