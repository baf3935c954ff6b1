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

#include "ssvsp/archive.hpp"
#include "ssvsp/channel.hpp"
#include "ssvsp/numerics.hpp"

#include <vector>

namespace ssvsp {

/// Orthogonal projector onto the right-singular directions of a radar's
/// augmented channel whose singular values are at or below a threshold.
///
/// `selected_mask[u]` is 1 when direction u of V is kept. Directions past
/// p = min(rows, n_rad), and directions inside p below the numerical rank
/// tolerance, count as singular value zero and are always kept.
struct SsvspProjector {
    int radar_index = 0;
    ComplexMatrix P;
    std::vector<int> selected_mask;
    RealVector singular_values;  // length p, non-increasing
    double sigma_th = 0.0;

    int rank() const;
};

SsvspProjector build_projector(const AugmentedRadarChannel& H, double sigma_th);

/// P * X; throws ValidationError on row mismatch.
ComplexMatrix apply_projector(const SsvspProjector& p, const ComplexMatrix& X);

/// Largest singular value of H_aug * P, certified <= sigma_th + 1e-9.
double leakage_bound(const SsvspProjector& p, const AugmentedRadarChannel& H);

/// One projector per radar, in radar order.
std::vector<SsvspProjector> build_all_projectors(const ChannelSet& c, const Scenario& s);

/// Adds kind "projector" matrices plus "mask", "sigma", "sigma_th" and
/// "leakage" vectors keyed by radar index.
void append_projector(MatrixArchive& a, const SsvspProjector& p, double leakage);

} // namespace ssvsp
