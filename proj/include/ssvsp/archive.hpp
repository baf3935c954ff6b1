// SPDX-License-Identifier: Apache-2.0
//
// ssvsp - precoding library for radar/cellular spectrum coexistence
// Copyright (C) 2026 The ssvsp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "ssvsp/channel.hpp"
#include "ssvsp/numerics.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace ssvsp {

/// Text matrix archive.
///
/// Entries are keyed by (kind, user, station). Reals are written as C99
/// hex floats, so a dump/load cycle is bit-exact. Layout:
///
///     ssvsp-archive 1
///     seed <u64>
///     matrix <kind> <k> <station> <rows> <cols>
///     <re> <im>                      (rows*cols lines, column-major)
///     vector <kind> <k> <station> <n>
///     <v_0> ... <v_{n-1}>
///     end
struct ArchiveKey {
    std::string kind;
    int k = -1;
    int station = -1;

    auto operator<=>(const ArchiveKey&) const = default;
};

struct MatrixArchive {
    std::uint64_t seed = 0;
    std::map<ArchiveKey, ComplexMatrix> matrices;
    std::map<ArchiveKey, std::vector<double>> vectors;
};

std::string format_archive(const MatrixArchive& a);
MatrixArchive parse_archive(const std::string& text);

void write_archive(const MatrixArchive& a, const std::string& path);
MatrixArchive read_archive(const std::string& path);

/// Channel dump uses kinds "radar" and "bs".
MatrixArchive channels_to_archive(const ChannelSet& c);
ChannelSet channels_from_archive(const MatrixArchive& a, const Scenario& s);

} // namespace ssvsp
