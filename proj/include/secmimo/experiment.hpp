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

#pragma once

#include "secmimo/asymptotic_rates.hpp"
#include "secmimo/downlink_secrecy.hpp"
#include "secmimo/system_config.hpp"

#include <string>
#include <vector>

namespace secmimo
{

/// One batch run: a figure preset, the Monte Carlo budget, and the output
/// location. `scale` divides N_t and T for quick runs; `full` restores the
/// complete published grids.
struct ExperimentSpec
{
    std::string figure;      // fig2 .. fig7 (plus fig2_rho0)
    int trials = 50;
    std::uint64_t seed = 1;
    int scale = 1;
    bool full = false;
    std::string out;         // CSV path; empty = no file
};

struct ResultRow
{
    double sweep_value;
    std::string scheme;
    std::string metric;
    double mean;
    double std_error;
    int trials;
};

struct ResultTable
{
    std::string sweep_name;
    std::vector<ResultRow> rows;
    std::string config_hash; // hash of the resolved parameter set
    std::uint64_t seed = 0;
    std::string version;
};

struct PresetInfo
{
    std::string id;
    std::string description;
    SystemConfig base; // passes validation as-is
};

/// One entry per reproducible figure, parameters as published.
std::vector<PresetInfo> list_presets();

/// Runs the sweep behind a figure id: per-point Monte Carlo plus, where
/// applicable, the closed-form curves. Deterministic in (spec, seed).
ResultTable run_experiment(const ExperimentSpec& spec);

/// Single-scenario run from a user config: Monte Carlo ergodic rates and
/// the matching asymptotic prediction.
ResultTable run_config_experiment(const SystemConfig& cfg, FadingMode mode, int trials,
                                  std::uint64_t seed);

/// CSV body (no timestamps, stable float formatting) plus a JSON metadata
/// sidecar at path + ".meta.json".
void write_result_csv(const ResultTable& table, const std::string& path);
std::string result_csv_body(const ResultTable& table);

} // namespace secmimo
