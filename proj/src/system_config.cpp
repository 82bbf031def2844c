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

#include "secmimo/system_config.hpp"

#include "secmimo/common.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace secmimo
{

using nlohmann::json;

double SystemConfig::snr_db() const { return linear_to_db(P / N0d); }

void SystemConfig::validate() const
{
    auto fail = [](const std::string& msg) { throw config_error(msg); };

    if (L < 0)
        fail("L >= 0 violated");
    if (K < 1)
        fail("K >= 1 violated");
    if (N_t < 1)
        fail("N_t >= 1 violated");
    if (N_e < 1)
        fail("N_e >= 1 violated");
    if (K > tau)
        fail("K <= tau violated (orthogonal pilots require K <= tau)");
    if (tau >= T)
        fail("tau < T violated");
    if (M() > N_t)
        fail("M <= N_t violated (M = (L+1)*K + N_e = " + std::to_string(M()) +
             ", N_t = " + std::to_string(N_t) + ")");

    auto positive = [&fail](double v, const char* name)
    {
        if (!(v > 0.0))
            fail(std::string(name) + " > 0 violated");
    };
    positive(P0, "P0");
    positive(P_l, "P_l");
    positive(P, "P");
    positive(N0, "N0");
    positive(N0d, "N0d");
    if (Pe < 0.0)
        fail("Pe >= 0 violated");
    if (!(beta > 0.0))
        fail("beta > 0 violated");
    if (!(theta_b > 0.0) || theta_b > arma::datum::pi)
        fail("0 < theta_b <= pi violated");
    if (!(sigma_as > 0.0))
        fail("sigma > 0 violated");
    if (!P_l_per_cell.empty())
    {
        if (static_cast<int>(P_l_per_cell.size()) != L)
            fail("P_l_per_cell must have L entries");
        for (double p : P_l_per_cell)
            positive(p, "P_l_per_cell[i]");
    }
}

static SystemConfig from_json(const json& j)
{
    SystemConfig cfg;
    auto need = [&](const char* key) -> const json&
    {
        auto it = j.find(key);
        if (it == j.end())
            throw config_error(std::string("missing key: ") + key);
        return *it;
    };

    cfg.L = need("L").get<int>();
    cfg.K = need("K").get<int>();
    cfg.N_t = need("N_t").get<int>();
    cfg.N_e = j.value("N_e", 2);
    cfg.T = need("T").get<int>();
    cfg.tau = need("tau").get<int>();
    cfg.P0 = need("P0").get<double>();
    cfg.P_l = j.value("P_l", cfg.P0);
    cfg.N0 = j.value("N0", 1.0);
    cfg.N0d = j.value("N0d", 1.0);

    if (j.contains("Pe"))
        cfg.Pe = j.at("Pe").get<double>();
    else if (j.contains("rho_db"))
        cfg.Pe = cfg.K * cfg.P0 * db_to_linear(j.at("rho_db").get<double>());
    else
        cfg.Pe = 0.0;

    if (j.contains("P"))
        cfg.P = j.at("P").get<double>();
    else if (j.contains("snr_db"))
        cfg.P = cfg.N0d * db_to_linear(j.at("snr_db").get<double>());
    else
        cfg.P = 1.0;

    cfg.beta = j.value("beta", 0.1);
    cfg.theta_b = j.value("theta_b", arma::datum::pi);
    cfg.sigma_as = j.value("sigma", arma::datum::pi / 2.0);
    if (j.contains("P_l_per_cell"))
        cfg.P_l_per_cell = j.at("P_l_per_cell").get<std::vector<double>>();

    cfg.validate();
    return cfg;
}

SystemConfig parse_config(const std::string& json_text)
{
    json j;
    try
    {
        j = json::parse(json_text);
    }
    catch (const json::parse_error& e)
    {
        throw config_error(std::string("configuration is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw config_error("configuration root must be a JSON object");
    return from_json(j);
}

SystemConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw config_error("cannot open configuration file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const SystemConfig& cfg)
{
    json j;
    j["L"] = cfg.L;
    j["K"] = cfg.K;
    j["N_t"] = cfg.N_t;
    j["N_e"] = cfg.N_e;
    j["T"] = cfg.T;
    j["tau"] = cfg.tau;
    j["P0"] = cfg.P0;
    j["P_l"] = cfg.P_l;
    j["Pe"] = cfg.Pe;
    j["P"] = cfg.P;
    j["N0"] = cfg.N0;
    j["N0d"] = cfg.N0d;
    j["beta"] = cfg.beta;
    j["theta_b"] = cfg.theta_b;
    j["sigma"] = cfg.sigma_as;
    if (!cfg.P_l_per_cell.empty())
        j["P_l_per_cell"] = cfg.P_l_per_cell;
    return j.dump(2);
}

bool operator==(const SystemConfig& a, const SystemConfig& b)
{
    return a.L == b.L && a.K == b.K && a.N_t == b.N_t && a.N_e == b.N_e && a.T == b.T &&
           a.tau == b.tau && a.P0 == b.P0 && a.P_l == b.P_l && a.Pe == b.Pe && a.P == b.P &&
           a.N0 == b.N0 && a.N0d == b.N0d && a.beta == b.beta && a.theta_b == b.theta_b &&
           a.sigma_as == b.sigma_as && a.P_l_per_cell == b.P_l_per_cell;
}

} // namespace secmimo
