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

#include "ssvsp/channel.hpp"

#include "ssvsp/errors.hpp"

#include <cmath>
#include <string>

namespace ssvsp {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::mt19937_64 make_stream(std::uint64_t seed, StreamKind kind, std::uint64_t a, std::uint64_t b)
{
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(kind));
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    return std::mt19937_64(h);
}

ComplexMatrix complex_gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols)
{
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix out(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            out(i, j) = {re, im};
        }
    return out;
}

ChannelSet generate_channels(const Scenario& s, std::uint64_t seed)
{
    const Topology& t = s.topology;
    ChannelSet c;
    c.seed_used = seed;
    c.H_radar.resize(t.K);
    c.H_bs.resize(t.K);
    for (int k = 0; k < t.K; ++k) {
        for (int l = 0; l < t.L; ++l) {
            auto rng = make_stream(seed, StreamKind::radar_link, k, l);
            c.H_radar[k].push_back(s.radar_gain * complex_gaussian(rng, t.n_r, t.n_rad));
        }
        for (int m = 0; m < t.M; ++m) {
            auto rng = make_stream(seed, StreamKind::bs_link, k, m);
            c.H_bs[k].push_back(s.bs_gain * complex_gaussian(rng, t.n_r, t.n_t));
        }
    }
    return c;
}

AugmentedRadarChannel augment_radar_channel(const ChannelSet& c, int l, const ServingMap& serving)
{
    if (l < 0 || static_cast<std::size_t>(l) >= serving.users_of_radar.size())
        throw ValidationError("augment_radar_channel: radar index " + std::to_string(l) + " out of range");
    const auto& users = serving.users_of_radar[l];
    if (users.empty())
        throw ValidationError("radar " + std::to_string(l) + " serves no users; projector undefined");

    const ComplexMatrix& first = c.H_radar.at(users.front()).at(l);
    AugmentedRadarChannel out;
    out.radar_index = l;
    out.row_blocks = users;
    out.block_rows = static_cast<int>(first.rows());
    out.H_aug.resize(static_cast<Eigen::Index>(users.size()) * first.rows(), first.cols());
    for (std::size_t o = 0; o < users.size(); ++o)
        out.H_aug.middleRows(static_cast<Eigen::Index>(o) * first.rows(), first.rows()) = c.H_radar.at(users[o]).at(l);
    return out;
}

void check_channel_dims(const ChannelSet& c, const Scenario& s)
{
    const Topology& t = s.topology;
    auto fail = [](const std::string& what) { throw ValidationError("channel set mismatch: " + what); };
    if (c.H_radar.size() != static_cast<std::size_t>(t.K) || c.H_bs.size() != static_cast<std::size_t>(t.K))
        fail("expected " + std::to_string(t.K) + " users");
    for (int k = 0; k < t.K; ++k) {
        if (c.H_radar[k].size() != static_cast<std::size_t>(t.L) || c.H_bs[k].size() != static_cast<std::size_t>(t.M))
            fail("station count for user " + std::to_string(k));
        for (const auto& H : c.H_radar[k])
            if (H.rows() != t.n_r || H.cols() != t.n_rad || !H.allFinite())
                fail("radar link shape for user " + std::to_string(k));
        for (const auto& H : c.H_bs[k])
            if (H.rows() != t.n_r || H.cols() != t.n_t || !H.allFinite())
                fail("BS link shape for user " + std::to_string(k));
    }
}

} // namespace ssvsp
