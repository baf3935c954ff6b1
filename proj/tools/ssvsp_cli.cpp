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
#include "ssvsp/errors.hpp"
#include "ssvsp/harness.hpp"
#include "ssvsp/scenario.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

namespace {

enum ExitCode { ok = 0, validation = 1, numerical = 2, io = 3 };

std::string default_out_dir()
{
    const char* env = std::getenv("SSVSP_OUT_DIR");
    return env ? env : "";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"ssvsp: radar/cellular coexistence precoding simulator"};
    app.require_subcommand(1);

    ssvsp::SimulateOptions sim;
    sim.out_dir = default_out_dir();
    auto* simulate = app.add_subcommand("simulate", "run seeded Monte Carlo trials");
    simulate->add_option("--scenario", sim.scenario_path, "scenario JSON file")->required();
    simulate->add_option("--trials", sim.trials, "number of trials")->default_val(1);
    simulate->add_option("--seed", sim.seed0, "seed of trial 0; trial t uses seed + t")->default_val(0);
    simulate->add_option("--out", sim.out_dir, "output directory (default: $SSVSP_OUT_DIR)");
    simulate->add_option("--workers", sim.workers, "concurrent trials")->default_val(1);

    std::string proj_scenario, proj_channels, proj_out;
    auto* project = app.add_subcommand("project", "build projectors from a channel dump");
    project->add_option("--scenario", proj_scenario, "scenario JSON file")->required();
    project->add_option("--channels", proj_channels, "channel archive")->required();
    project->add_option("--out", proj_out, "projector archive to write")->required();

    std::string val_scenario;
    auto* validate = app.add_subcommand("validate", "validate a scenario and dry-run the model equivalence");
    validate->add_option("--scenario", val_scenario, "scenario JSON file")->required();

    std::string ch_scenario, ch_out;
    std::uint64_t ch_seed = 0;
    auto* channels = app.add_subcommand("channels", "write one channel realization as an archive");
    channels->add_option("--scenario", ch_scenario, "scenario JSON file")->required();
    channels->add_option("--seed", ch_seed, "channel seed")->default_val(0);
    channels->add_option("--out", ch_out, "archive to write")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : validation;
    }

    try {
        if (*simulate) {
            const auto m = ssvsp::cmd_simulate(sim);
            std::cout << "wrote " << m.emitted_files.size() + 1 << " files to " << m.outputs << "\n";
        } else if (*project) {
            const auto outcome = ssvsp::cmd_project(proj_scenario, proj_channels, proj_out);
            for (std::size_t l = 0; l < outcome.projectors.size(); ++l)
                std::cout << "radar " << l << ": rank " << outcome.projectors[l].rank() << ", leakage "
                          << outcome.leakage[l] << "\n";
        } else if (*validate) {
            const auto outcome = ssvsp::cmd_validate(val_scenario);
            if (!outcome.problems.empty()) {
                std::cerr << outcome.problems.front() << "\n";
                return numerical;
            }
            std::cout << "ok (signal deviation " << outcome.dry_run.signal_deviation << ", power deviation "
                      << outcome.dry_run.power_deviation << ")\n";
        } else if (*channels) {
            const auto s = ssvsp::load_scenario(ch_scenario);
            ssvsp::write_archive(ssvsp::channels_to_archive(ssvsp::generate_channels(s, ch_seed)), ch_out);
        }
    } catch (const ssvsp::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return validation;
    } catch (const ssvsp::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return numerical;
    } catch (const ssvsp::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return io;
    } catch (const std::exception& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return io;
    }
    return ok;
}
