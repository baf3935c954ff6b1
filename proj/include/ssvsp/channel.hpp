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

#include "ssvsp/numerics.hpp"
#include "ssvsp/scenario.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace ssvsp {

/// All station-to-user links for one realization.
/// Indexed [user][station]; radar links are n_r x n_rad, BS links n_r x n_t.
struct ChannelSet {
    std::vector<std::vector<ComplexMatrix>> H_radar;
    std::vector<std::vector<ComplexMatrix>> H_bs;
    std::uint64_t seed_used = 0;

    const ComplexMatrix& link(StationRef s, int k) const
    {
        return s.kind == StationKind::bs ? H_bs.at(k).at(s.index) : H_radar.at(k).at(s.index);
    }
};

struct AugmentedRadarChannel {
    int radar_index = 0;
    ComplexMatrix H_aug;          // (|K_l| n_r) x n_rad
    std::vector<int> row_blocks;  // users in K_l order
    int block_rows = 0;           // n_r

    /// Row block belonging to the o-th served user.
    ComplexMatrix block(std::size_t o) const
    {
        return H_aug.middleRows(static_cast<Eigen::Index>(o) * block_rows, block_rows);
    }
};

enum class StreamKind : std::uint64_t {
    radar_link = 1,
    bs_link = 2,
    precoder_init = 3,
    signal = 4,
};

/// Seeds an independent generator for one (kind, a, b) stream.
/// The derivation is a splitmix64 chain over the seed and the tags, so the
/// draws for a given matrix never depend on generation order.
std::mt19937_64 make_stream(std::uint64_t seed, StreamKind kind, std::uint64_t a, std::uint64_t b);

/// rows x cols matrix of i.i.d. CN(0, 1) entries drawn from `rng`.
ComplexMatrix complex_gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols);

ChannelSet generate_channels(const Scenario& s, std::uint64_t seed);

/// Throws ValidationError when the radar index is invalid or it serves nobody.
AugmentedRadarChannel augment_radar_channel(const ChannelSet& c, int l, const ServingMap& serving);

/// Throws ValidationError when any link disagrees with the scenario shape.
void check_channel_dims(const ChannelSet& c, const Scenario& s);

} // namespace ssvsp
