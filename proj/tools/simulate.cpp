// SPDX-License-Identifier: Apache-2.0
//
// secmimo - link-level simulator for secure massive MIMO transmission
// Copyright (C) 2026 secmimo developers
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

#include "secmimo/experiment.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv)
{
    // keep BLAS single-threaded; trials already run in parallel
    setenv("OPENBLAS_NUM_THREADS", "1", 0);

    CLI::App app{"secmimo batch experiment runner"};
    app.name("simulate");

    std::string figure, out, config_path, fading = "correlated";
    int trials = 50;
    std::uint64_t seed = 1;
    int scale = 1;
    bool full = false;
    bool list = false;

    app.add_option("--figure", figure, "figure preset id (fig2..fig7, fig2_rho0)");
    app.add_option("--trials", trials, "Monte Carlo trials per sweep point")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "master RNG seed");
    app.add_option("--scale", scale, "divide N_t, T, tau by this factor for quick runs")
        ->check(CLI::PositiveNumber);
    app.add_flag("--full", full, "use the complete published grids");
    app.add_option("--out", out, "CSV output path");
    app.add_option("--config", config_path, "run a single scenario from a JSON config file");
    app.add_option("--fading", fading, "fading mode for --config runs: correlated | iid");
    app.add_flag("--list", list, "list figure presets and exit");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (list)
        {
            for (const auto& p : secmimo::list_presets())
                std::cout << p.id << ": " << p.description << "\n";
            return 0;
        }

        secmimo::ResultTable table;
        if (!config_path.empty())
        {
            secmimo::SystemConfig cfg = secmimo::load_config(config_path);
            auto mode = fading == "iid" ? secmimo::FadingMode::iid
                                        : secmimo::FadingMode::correlated;
            table = secmimo::run_config_experiment(cfg, mode, trials, seed);
            if (!out.empty())
                secmimo::write_result_csv(table, out);
        }
        else if (!figure.empty())
        {
            secmimo::ExperimentSpec spec;
            spec.figure = figure;
            spec.trials = trials;
            spec.seed = seed;
            spec.scale = scale;
            spec.full = full;
            spec.out = out;
            table = secmimo::run_experiment(spec);
        }
        else
        {
            std::cerr << "error: either --figure or --config is required (see --help)\n";
            return 2;
        }

        if (out.empty())
            std::cout << secmimo::result_csv_body(table);
        else
            std::cout << "wrote " << table.rows.size() << " rows to " << out << "\n";
        return 0;
    }
    catch (const secmimo::config_error& e)
    {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::invalid_argument& e)
    {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
