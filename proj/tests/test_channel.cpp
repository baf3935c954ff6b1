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

#include "ssvsp/archive.hpp"
#include "ssvsp/channel.hpp"
#include "ssvsp/errors.hpp"
#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace ssvsp;

namespace {

bool identical(const ChannelSet& a, const ChannelSet& b)
{
    if (a.H_radar.size() != b.H_radar.size() || a.H_bs.size() != b.H_bs.size())
        return false;
    for (std::size_t k = 0; k < a.H_radar.size(); ++k) {
        for (std::size_t l = 0; l < a.H_radar[k].size(); ++l)
            if (a.H_radar[k][l] != b.H_radar[k][l])
                return false;
        for (std::size_t m = 0; m < a.H_bs[k].size(); ++m)
            if (a.H_bs[k][m] != b.H_bs[k][m])
                return false;
    }
    return true;
}

Scenario two_by_two()
{
    Scenario s;
    s.topology = {2, 2, 3, 4, 2, 2};
    s.serving.users_of_bs = {{0, 1}, {2}};
    s.serving.users_of_radar = {{2}, {0, 1}};
    s.serving.rebuild_index(3);
    s.d = {1, 1, 1};
    s.W = {{1.0}, {1.0}, {1.0}};
    s.P_bs = {1.0, 1.0};
    return s;
}

} // namespace

TEST_CASE("generate_channels - determinism and seed sensitivity")
{
    const Scenario s = two_by_two();
    const ChannelSet a = generate_channels(s, 42);
    const ChannelSet b = generate_channels(s, 42);
    const ChannelSet c = generate_channels(s, 43);
    CHECK(identical(a, b));
    CHECK_FALSE(identical(a, c));
    CHECK(a.seed_used == 42);
    CHECK_NOTHROW(check_channel_dims(a, s));
    CHECK(a.H_radar[1][0].rows() == 2);
    CHECK(a.H_radar[1][0].cols() == 4);
    CHECK(a.H_bs[2][1].cols() == 2);
}

TEST_CASE("generate_channels - unit variance circular Gaussian entries")
{
    Scenario s;
    s.topology = {1, 1, 50, 40, 10, 50};
    s.serving.users_of_bs = {{0}};
    s.serving.users_of_radar = {{0}};
    const ChannelSet c = generate_channels(s, 5);

    cdouble sum = 0.0;
    double sq = 0.0;
    long n = 0;
    for (const auto& row : c.H_radar)
        for (const auto& H : row) {
            sum += H.sum();
            sq += H.squaredNorm();
            n += H.size();
        }
    REQUIRE(n == 100000);
    const cdouble mean = sum / static_cast<double>(n);
    const double var = sq / static_cast<double>(n) - std::norm(mean);
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("generate_channels - link gains scale amplitudes")
{
    Scenario s = two_by_two();
    const ChannelSet ref = generate_channels(s, 9);
    s.radar_gain = 10.0;
    const ChannelSet loud = generate_channels(s, 9);
    CHECK((loud.H_radar[0][1] - 10.0 * ref.H_radar[0][1]).norm() == 0.0);
    CHECK(loud.H_bs[0][0] == ref.H_bs[0][0]);
}

TEST_CASE("augment_radar_channel - stacking order and slicing")
{
    const Scenario s = two_by_two();
    const ChannelSet c = generate_channels(s, 3);

    const auto single = augment_radar_channel(c, 0, s.serving);
    CHECK(single.H_aug == c.H_radar[2][0]);
    CHECK(single.row_blocks == std::vector<int>{2});

    const auto pair = augment_radar_channel(c, 1, s.serving);
    REQUIRE(pair.H_aug.rows() == 4);
    CHECK(pair.H_aug.topRows(2) == c.H_radar[0][1]);
    for (std::size_t o = 0; o < pair.row_blocks.size(); ++o)
        CHECK(pair.block(o) == c.H_radar[pair.row_blocks[o]][1]);

    ServingMap empty = s.serving;
    empty.users_of_radar[1].clear();
    CHECK_THROWS_AS(augment_radar_channel(c, 1, empty), ValidationError);
    CHECK_THROWS_AS(augment_radar_channel(c, 5, s.serving), ValidationError);
}

TEST_CASE("channel archive - dump and load are bit exact")
{
    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; ++t) {
        const Scenario s = ssvsp::testing::random_scenario(rng);
        const ChannelSet c = generate_channels(s, rng());
        const std::string text = format_archive(channels_to_archive(c));
        const ChannelSet back = channels_from_archive(parse_archive(text), s);
        CHECK(identical(c, back));
        CHECK(back.seed_used == c.seed_used);
        CHECK(format_archive(channels_to_archive(back)) == text);
    }
}

TEST_CASE("channel archive - malformed input")
{
    CHECK_THROWS_AS(parse_archive("not an archive"), IoError);
    CHECK_THROWS_AS(parse_archive("ssvsp-archive 1\nmatrix bs 0 0 1 1\n0x1p+0\n"), IoError);
    CHECK_THROWS_AS(parse_archive("ssvsp-archive 1\nbogus\nend\n"), IoError);

    const Scenario s = two_by_two();
    MatrixArchive a = channels_to_archive(generate_channels(s, 1));
    a.matrices.erase({"bs", 2, 1});
    CHECK_THROWS_AS(channels_from_archive(a, s), ValidationError);
}
