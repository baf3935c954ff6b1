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
#include "ssvsp/equivalence.hpp"
#include "ssvsp/metrics.hpp"
#include "ssvsp/projection.hpp"
#include "ssvsp/scenario.hpp"
#include "ssvsp/solver.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ssvsp {

struct TrialResult {
    int trial = 0;
    std::uint64_t seed = 0;
    IterationTrace trace;
    TrialReport report;
};

/// channels -> projectors -> equivalent model -> solver -> report.
TrialResult run_trial(const Scenario& s, int trial, std::uint64_t seed);

/// Reference loop: trials run one after another on the calling thread.
std::vector<TrialResult> run_trials_serial(const Scenario& s, std::uint64_t seed0, int trials);

/// OpenMP trial-level parallelism; results are identical to the serial loop.
std::vector<TrialResult> run_trials_parallel(const Scenario& s, std::uint64_t seed0, int trials, int workers);

std::string format_trace_csv(const Scenario& s, const IterationTrace& trace);
std::string format_summary_csv(const Scenario& s, const std::vector<TrialResult>& results);

struct EmittedFile {
    std::string name;  // relative to the output directory
    std::string sha256;
};

struct RunManifest {
    std::string scenario_path;
    std::vector<std::uint64_t> seeds;
    std::string outputs;
    std::vector<EmittedFile> emitted_files;
};

std::string sha256_hex(const std::string& bytes);
std::string format_manifest(const RunManifest& m);
/// True when every listed file exists and still matches its hash.
bool verify_manifest(const RunManifest& m);

struct SimulateOptions {
    std::string scenario_path;
    int trials = 1;
    std::uint64_t seed0 = 0;
    std::string out_dir;
    int workers = 1;
};

/// Writes trace_<t>.csv per trial, summary.csv and manifest.json. Files
/// written before a failure are removed.
RunManifest cmd_simulate(const SimulateOptions& opt);

struct ProjectOutcome {
    std::vector<SsvspProjector> projectors;
    std::vector<double> leakage;
};

ProjectOutcome cmd_project(const std::string& scenario_path, const std::string& channel_dump,
                           const std::string& out_path);

struct EquivalenceCheck {
    double signal_deviation = 0.0;  // max |y_direct - y_equiv| / max(1, |y|_inf)
    double power_deviation = 0.0;   // max |usage_equiv - usage_direct| / max(1, usage)
};

/// Dual-path comparison on one random precoder and signal draw.
EquivalenceCheck check_equivalence(const Scenario& s, const ChannelSet& c, const std::vector<SsvspProjector>& projs,
                                   const EquivalentModel& eq, std::uint64_t seed);

struct ValidateOutcome {
    std::vector<std::string> problems;
    EquivalenceCheck dry_run;
};

/// Scenario validation plus a one-trial equivalence dry run. Throws
/// ValidationError / IoError for unusable input.
ValidateOutcome cmd_validate(const std::string& scenario_path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace ssvsp
