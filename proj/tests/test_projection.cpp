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
#include "ssvsp/projection.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace ssvsp;

namespace {

AugmentedRadarChannel wrap(const ComplexMatrix& H)
{
    AugmentedRadarChannel a;
    a.H_aug = H;
    a.row_blocks = {0};
    a.block_rows = static_cast<int>(H.rows());
    return a;
}

ComplexMatrix diag(std::initializer_list<double> v)
{
    RealVector d(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v)
        d(i++) = x;
    return d.cast<cdouble>().asDiagonal();
}

void check_projector_algebra(const SsvspProjector& p)
{
    const Eigen::Index n = p.P.rows();
    CHECK((p.P - p.P.adjoint()).norm() <= 1e-10);
    CHECK((p.P * p.P - p.P).norm() <= 1e-9);
    const RealVector ev = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(p.P).eigenvalues();
    int ones = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const bool zero = std::abs(ev(i)) <= 1e-9;
        const bool one = std::abs(ev(i) - 1.0) <= 1e-9;
        CHECK((zero || one));
        ones += one ? 1 : 0;
    }
    CHECK(ones == p.rank());
}

} // namespace

TEST_CASE("build_projector - zero channel keeps every direction")
{
    const auto p = build_projector(wrap(ComplexMatrix::Zero(2, 3)), 0.0);
    CHECK(p.selected_mask == std::vector<int>{1, 1, 1});
    CHECK((p.P - ComplexMatrix::Identity(3, 3)).norm() < 1e-14);
}

TEST_CASE("build_projector - all singular values above threshold")
{
    const auto p = build_projector(wrap(2.0 * ComplexMatrix::Identity(3, 3)), 1.0);
    CHECK(p.rank() == 0);
    CHECK(p.P.norm() == 0.0);
}

TEST_CASE("build_projector - diagonal channel selects the weak direction")
{
    const auto H = wrap(diag({3.0, 0.5}));
    const auto p = build_projector(H, 1.0);
    CHECK(p.selected_mask == std::vector<int>{0, 1});
    CHECK((p.P - diag({0.0, 1.0})).norm() < 1e-14);
    CHECK(leakage_bound(p, H) == Catch::Approx(0.5).margin(1e-14));
}

TEST_CASE("build_projector - boundary singular value is selected")
{
    const auto p = build_projector(wrap(diag({3.0, 0.5})), 0.5);
    CHECK(p.selected_mask == std::vector<int>{0, 1});
}

TEST_CASE("build_projector - wide channel keeps exactly its null space")
{
    std::mt19937_64 rng(4);
    const ComplexMatrix H = complex_gaussian(rng, 2, 4);
    const auto p = build_projector(wrap(H), 1e-3);
    REQUIRE(p.singular_values.minCoeff() > 1e-3);
    CHECK(p.rank() == 2);

    // Independent null-space basis from a full-pivot LU kernel.
    const ComplexMatrix N = Eigen::FullPivLU<ComplexMatrix>(H).kernel();
    REQUIRE(N.cols() == 2);
    const ComplexMatrix Q = Eigen::HouseholderQR<ComplexMatrix>(N).householderQ() * ComplexMatrix::Identity(4, 2);
    CHECK((p.P - Q * Q.adjoint()).norm() < 1e-10);
    CHECK(leakage_bound(p, wrap(H)) < 1e-9);
    check_projector_algebra(p);
}

TEST_CASE("apply_projector - examples")
{
    std::mt19937_64 rng(5);
    const ComplexMatrix X = complex_gaussian(rng, 3, 2);
    const auto id = build_projector(wrap(ComplexMatrix::Zero(1, 3)), 0.0);
    CHECK((apply_projector(id, X) - X).norm() < 1e-14);

    const auto zero = build_projector(wrap(5.0 * ComplexMatrix::Identity(3, 3)), 1.0);
    CHECK(apply_projector(zero, X).norm() == 0.0);

    const auto p = build_projector(wrap(complex_gaussian(rng, 2, 3)), 1.0);
    const ComplexMatrix once = apply_projector(p, X);
    CHECK((apply_projector(p, once) - once).norm() < 1e-12);

    CHECK_THROWS_AS(apply_projector(p, ComplexMatrix::Zero(2, 2)), ValidationError);
}

TEST_CASE("build_projector - algebra, suppression and null-space recovery on random channels")
{
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> dim(1, 8);
    std::uniform_int_distribution<int> users(1, 4);
    for (int t = 0; t < 100; ++t) {
        const int n_rad = dim(rng);
        int n_r = dim(rng);
        int K_l = users(rng);
        while (K_l * n_r > 8)
            K_l > 1 ? --K_l : --n_r;
        ComplexMatrix H = complex_gaussian(rng, K_l * n_r, n_rad);
        if (t % 4 == 0 && n_rad > 1)
            H.col(0) = H.col(n_rad - 1);
        const auto aug = wrap(H);

        std::vector<int> prev_mask;
        for (double th : {0.0, 0.1, 1.0, 10.0}) {
            const auto p = build_projector(aug, th);
            check_projector_algebra(p);
            CHECK(leakage_bound(p, aug) <= th + 1e-9);
            if (th == 0.0) {
                CHECK((H * p.P).norm() <= 1e-9);
                CHECK(p.rank() == n_rad - svd(H).q);
            }
            if (!prev_mask.empty())
                for (std::size_t u = 0; u < prev_mask.size(); ++u)
                    CHECK(p.selected_mask[u] >= prev_mask[u]);
            prev_mask = p.selected_mask;
        }
    }
}

TEST_CASE("append_projector - archive entries")
{
    const auto H = wrap(diag({3.0, 0.5}));
    auto p = build_projector(H, 1.0);
    p.radar_index = 2;
    MatrixArchive a;
    append_projector(a, p, leakage_bound(p, H));
    const MatrixArchive back = parse_archive(format_archive(a));
    CHECK(back.matrices.at({"projector", -1, 2}) == p.P);
    CHECK(back.vectors.at({"mask", -1, 2}) == std::vector<double>{0.0, 1.0});
    CHECK(back.vectors.at({"leakage", -1, 2})[0] == Catch::Approx(0.5).margin(1e-14));
}
