// Copyright 2026 The splitcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>

#include "splitcc/ci.hpp"
#include "splitcc/cluster.hpp"
#include "splitcc/overlaps.hpp"

namespace splitcc {

/// Formats with 12 significant digits.
std::string format_number(double x);

// Line-oriented JSON. The first line is a header record carrying the
// orbital count and reference occupation; each further line is one
// determinant or excitation record.

void write_overlaps(std::ostream& out, const OverlapSet& overlaps);
OverlapSet read_overlaps(std::istream& in);
OverlapSet read_overlaps(const std::filesystem::path& path);

void write_civector(std::ostream& out, const CIVector& state);
CIVector read_civector(std::istream& in);
CIVector read_civector(const std::filesystem::path& path);

void write_amplitudes(std::ostream& out, const AmplitudeSet& amps);
AmplitudeSet read_amplitudes(std::istream& in);

}  // namespace splitcc
