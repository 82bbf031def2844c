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

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace secmimo;

TEST_CASE("preset list carries the published values and validates")
{
    auto presets = list_presets();
    REQUIRE(presets.size() >= 7);
    for (const auto& p : presets)
        CHECK_NOTHROW(p.base.validate());

    auto find = [&](const std::string& id) -> const PresetInfo&
    {
        for (const auto& p : presets)
            if (p.id == id)
                return p;
        REQUIRE(false);
        return presets.front();
    };

    const PresetInfo& fig4 = find("fig4");
    CHECK(fig4.base.L == 0);
    CHECK(fig4.base.K == 1);
    CHECK(fig4.base.tau == 64);
    CHECK(fig4.base.T == 16 * fig4.base.N_t);
    CHECK(fig4.base.rho() == doctest::Approx(100.0)); // 20 dB

    const PresetInfo& fig7 = find("fig7");
    CHECK(fig7.base.rho() == doctest::Approx(10.0)); // 10 dB
    CHECK(fig7.base.snr_db() == doctest::Approx(15.0));
    CHECK(fig7.base.tau == 8);

    const PresetInfo& fig2 = find("fig2");
    CHECK(fig2.base.rho() == doctest::Approx(db_to_linear(1.0)));
    const PresetInfo& fig2b = find("fig2_rho0");
    CHECK(fig2b.base.rho() == doctest::Approx(1.0));
}

TEST_CASE("same spec and seed give byte-identical CSV bodies")
{
    ExperimentSpec spec;
    spec.figure = "fig4";
    spec.trials = 3;
    spec.seed = 9;
    spec.scale = 4; // N_t in {16, 32, 64}

    ResultTable a = run_experiment(spec);
    ResultTable b = run_experiment(spec);
    CHECK(result_csv_body(a) == result_csv_body(b));
    CHECK(!a.rows.empty());

    ExperimentSpec other = spec;
    other.seed = 10;
    ResultTable c = run_experiment(other);
    CHECK(result_csv_body(a) != result_csv_body(c));
}

TEST_CASE("unknown figures and incompatible scales are validation errors")
{
    ExperimentSpec spec;
    spec.figure = "fig99";
    CHECK_THROWS_AS(run_experiment(spec), config_error);

    spec.figure = "fig3";
    spec.scale = 8; // N_t = 8 < M = 22
    spec.trials = 1;
    CHECK_THROWS_AS(run_experiment(spec), config_error);
}

TEST_CASE("config-driven single run produces the expected rows")
{
    SystemConfig cfg = parse_config(R"({"L":1,"K":2,"N_t":24,"T":96,"tau":8,
                                        "P0":10,"rho_db":20,"snr_db":20})");
    ResultTable table = run_config_experiment(cfg, FadingMode::iid, 3, 4);

    bool has_mc = false, has_th = false, has_user = false;
    for (const auto& r : table.rows)
    {
        if (r.scheme == "montecarlo" && r.metric == "secrecy_rate")
            has_mc = true;
        if (r.scheme == "theorem2" && r.metric == "secrecy_rate")
            has_th = true;
        if (r.metric == "rate_user0")
            has_user = true;
    }
    CHECK(has_mc);
    CHECK(has_th);
    CHECK(has_user);
}

TEST_CASE("CSV writer emits the header, rows, and a metadata sidecar")
{
    ExperimentSpec spec;
    spec.figure = "fig4";
    spec.trials = 2;
    spec.seed = 3;
    spec.scale = 4;
    spec.out = "exp_test_out.csv";
    ResultTable table = run_experiment(spec);

    std::ifstream in(spec.out);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "sweep_value,scheme,metric,mean,std_error,trials");
    std::size_t lines = 0;
    for (std::string line; std::getline(in, line);)
        if (!line.empty())
            ++lines;
    CHECK(lines == table.rows.size());

    std::ifstream meta(spec.out + ".meta.json");
    CHECK(meta.good());

    std::remove(spec.out.c_str());
    std::remove((spec.out + ".meta.json").c_str());
}
