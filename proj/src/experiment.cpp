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

#include "secmimo/uplink_frame.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace secmimo
{

namespace
{

constexpr const char* kVersion = "secmimo 0.1.0";

std::string fnv1a_hash(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s)
    {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SystemConfig scaled(SystemConfig cfg, int scale)
{
    if (scale <= 1)
        return cfg;
    cfg.N_t /= scale;
    cfg.T /= scale;
    cfg.tau = std::max(cfg.K, cfg.tau / scale);
    return cfg;
}

double mse_se(const std::vector<TrialLinkStats>& stats)
{
    arma::vec v(stats.size());
    for (std::size_t i = 0; i < stats.size(); ++i)
        v(i) = stats[i].mse;
    return stats.size() > 1 ? arma::stddev(v) / std::sqrt(double(stats.size())) : 0.0;
}

double mse_mean(const std::vector<TrialLinkStats>& stats)
{
    double acc = 0.0;
    for (const auto& s : stats)
        acc += s.mse;
    return acc / stats.size();
}

SystemConfig preset_base(const std::string& figure)
{
    SystemConfig cfg;
    cfg.L = 3;
    cfg.K = 5;
    cfg.N_t = 128;
    cfg.N_e = 2;
    cfg.T = 1024;
    cfg.tau = 64;
    cfg.P0 = 10.0;
    cfg.P_l = 10.0;
    cfg.N0 = 1.0;
    cfg.N0d = 1.0;
    cfg.beta = 0.1;
    cfg.theta_b = arma::datum::pi;
    cfg.sigma_as = arma::datum::pi / 2.0;

    auto set_rho_db = [&cfg](double rho_db) { cfg.Pe = cfg.K * cfg.P0 * db_to_linear(rho_db); };
    auto set_snr_db = [&cfg](double snr_db) { cfg.P = cfg.N0d * db_to_linear(snr_db); };

    if (figure == "fig2")
    {
        cfg.T = 128;
        set_rho_db(1.0);
        set_snr_db(10.0); // downlink unused by the MSE metric
    }
    else if (figure == "fig2_rho0")
    {
        cfg.T = 128;
        set_rho_db(0.0);
        set_snr_db(10.0);
    }
    else if (figure == "fig3")
    {
        set_rho_db(20.0);
        set_snr_db(20.0);
    }
    else if (figure == "fig4")
    {
        cfg.L = 0;
        cfg.K = 1;
        cfg.N_t = 64;
        cfg.T = 16 * 64;
        set_rho_db(20.0);
        set_snr_db(10.0);
    }
    else if (figure == "fig5" || figure == "fig6")
    {
        set_rho_db(0.0);
        set_snr_db(20.0);
    }
    else if (figure == "fig7")
    {
        cfg.tau = 8;
        set_rho_db(10.0);
        set_snr_db(15.0);
    }
    else
    {
        throw config_error("unknown figure id: " + figure);
    }
    return cfg;
}

} // namespace

std::vector<PresetInfo> list_presets()
{
    std::vector<PresetInfo> out;
    auto add = [&out](const std::string& id, const std::string& desc)
    {
        out.push_back({id, desc, preset_base(id)});
    };
    add("fig2", "MSE vs T: L=3 K=5 N_t=128 tau=64 rho=1dB N0=1 correlated theta_b=pi, "
                "T in {128,256,512,1024}, P0 in {1,10,100}");
    add("fig2_rho0", "same as fig2 with rho=0dB (body-text variant)");
    add("fig3", "secrecy rate vs SNR: L=3 K=5 T=1024 tau=64 rho=20dB P0=10 correlated, "
                "N_t in {64,128}, SNR -20..26dB, Monte Carlo + closed form");
    add("fig4", "secrecy rate vs N_t: L=0 K=1 T=16*N_t tau=64 rho=20dB iid, SNR in "
                "{10,20}dB, Monte Carlo + closed form + single-user limit");
    add("fig5", "secrecy rate vs rho: L=3 K=5 N_t=128 P0=10 SNR=20dB correlated theta_b=pi, "
                "(T,tau) in {(128,8),(1024,64)}, proposed vs contaminated MF");
    add("fig6", "secrecy rate vs rho: same grid as fig5 with iid fading");
    add("fig7", "secrecy rate vs theta_b: L=3 K=5 N_t=128 T=1024 tau=8 rho=10dB SNR=15dB "
                "correlated, theta_b pi/20..pi, proposed vs contaminated MF");
    return out;
}

namespace
{

void run_fig2(const ExperimentSpec& spec, const std::string& figure, ResultTable& table)
{
    table.sweep_name = "T";
    SystemConfig base = scaled(preset_base(figure), spec.scale);
    std::vector<int> t_grid = {128, 256, 512, 1024};
    for (int& t : t_grid)
        t /= spec.scale;
    const std::vector<double> p0_grid = {1.0, 10.0, 100.0};

    // one propagation environment for the whole figure
    CorrelationSet corr =
        build_correlation_set(base, FadingMode::correlated, derive_seed(spec.seed, 0x0f2));

    int point = 0;
    for (double p0 : p0_grid)
        for (int T : t_grid)
        {
            SystemConfig cfg = base;
            cfg.P0 = p0;
            cfg.Pe = cfg.K * cfg.P0 * db_to_linear(figure == "fig2" ? 1.0 : 0.0);
            cfg.T = T;
            cfg.validate();
            auto stats = collect_link_stats(cfg, corr, Scheme::proposed, spec.trials,
                                            derive_seed(spec.seed, 0x200, point),
                                            AssembleScope::cell0_only);
            char name[32];
            std::snprintf(name, sizeof(name), "mmse_p0_%g", p0);
            table.rows.push_back(
                {double(T), name, "mse", mse_mean(stats), mse_se(stats), spec.trials});
            ++point;
        }
}

void run_fig3(const ExperimentSpec& spec, ResultTable& table)
{
    table.sweep_name = "snr_db";
    SystemConfig base = scaled(preset_base("fig3"), spec.scale);
    std::vector<int> nt_grid = {128 / spec.scale, 64 / spec.scale};
    std::vector<double> snr_grid;
    for (int s = -20; s <= 26; s += 2)
        snr_grid.push_back(s);

    for (std::size_t ni = 0; ni < nt_grid.size(); ++ni)
    {
        SystemConfig cfg = base;
        cfg.N_t = nt_grid[ni];
        cfg.validate();
        CorrelationSet corr =
            build_correlation_set(cfg, FadingMode::correlated, derive_seed(spec.seed, 0x0f3, ni));
        auto stats = collect_link_stats(cfg, corr, Scheme::proposed, spec.trials,
                                        derive_seed(spec.seed, 0x300, ni));
        Theorem2Result terms = theorem2(corr, cfg);

        for (double snr : snr_grid)
        {
            double P = cfg.N0d * db_to_linear(snr);
            SecrecyEvaluation ev = evaluate_rates(stats, cfg.K, cfg.L, P, cfg.N0d);
            std::string mc = "montecarlo_nt" + std::to_string(cfg.N_t);
            std::string th = "theorem2_nt" + std::to_string(cfg.N_t);
            table.rows.push_back(
                {snr, mc, "secrecy_rate", ev.R_sec, ev.R_sec_trial_se, spec.trials});
            table.rows.push_back(
                {snr, th, "secrecy_rate", theorem2_secrecy_at(terms, P, cfg.N0d), 0.0, 0});
        }
    }
}

void run_fig4(const ExperimentSpec& spec, ResultTable& table)
{
    table.sweep_name = "N_t";
    SystemConfig base = preset_base("fig4");
    std::vector<int> nt_grid = spec.full ? std::vector<int>{64, 128, 256, 512}
                                         : std::vector<int>{64, 128, 256};
    for (int& nt : nt_grid)
        nt /= spec.scale;
    const std::vector<double> snr_grid = {10.0, 20.0};

    for (std::size_t ni = 0; ni < nt_grid.size(); ++ni)
    {
        SystemConfig cfg = base;
        cfg.N_t = nt_grid[ni];
        cfg.T = 16 * cfg.N_t;
        cfg.validate();
        CorrelationSet corr =
            build_correlation_set(cfg, FadingMode::iid, derive_seed(spec.seed, 0x0f4, ni));
        auto stats = collect_link_stats(cfg, corr, Scheme::proposed, spec.trials,
                                        derive_seed(spec.seed, 0x400, ni));
        IidBetas betas = IidBetas::standard_model(cfg);

        for (double snr : snr_grid)
        {
            SystemConfig at = cfg;
            at.P = at.N0d * db_to_linear(snr);
            SecrecyEvaluation ev = evaluate_rates(stats, at.K, at.L, at.P, at.N0d);
            std::string tag = "_snr" + std::to_string(int(snr));
            table.rows.push_back({double(cfg.N_t), "montecarlo" + tag, "secrecy_rate", ev.R_sec,
                                  ev.R_sec_trial_se, spec.trials});
            table.rows.push_back({double(cfg.N_t), "theorem3" + tag, "secrecy_rate",
                                  theorem3_secrecy(at, betas), 0.0, 0});
            table.rows.push_back({double(cfg.N_t), "corollary1" + tag, "secrecy_rate",
                                  corollary1_rate(at, betas.own(0, 0)), 0.0, 0});
        }
    }
}

void run_fig56(const ExperimentSpec& spec, const std::string& figure, ResultTable& table)
{
    table.sweep_name = "rho_db";
    const FadingMode mode = (figure == "fig5") ? FadingMode::correlated : FadingMode::iid;
    SystemConfig base = scaled(preset_base(figure), spec.scale);
    const std::vector<std::pair<int, int>> frames = {{128 / spec.scale, 8},
                                                     {1024 / spec.scale, 64 / spec.scale}};
    std::vector<double> rho_grid;
    for (int r = 0; r <= 20; r += 2)
        rho_grid.push_back(r);

    CorrelationSet corr = build_correlation_set(base, mode, derive_seed(spec.seed, 0x0f5));

    int point = 0;
    for (const auto& [T, tau] : frames)
        for (double rho_db : rho_grid)
        {
            SystemConfig cfg = base;
            cfg.T = T;
            cfg.tau = std::max(cfg.K, tau);
            cfg.Pe = cfg.K * cfg.P0 * db_to_linear(rho_db);
            cfg.validate();
            for (Scheme scheme : {Scheme::proposed, Scheme::contaminated_mf})
            {
                // contrast figures use the cancellation-capable eavesdropper
                SecrecyEvaluation ev = run_montecarlo(cfg, corr, scheme, spec.trials,
                                                      derive_seed(spec.seed, 0x500, point),
                                                      EveModel::worst_case);
                std::string name =
                    (scheme == Scheme::proposed ? "proposed_T" : "contaminated_mf_T") +
                    std::to_string(T);
                table.rows.push_back(
                    {rho_db, name, "secrecy_rate", ev.R_sec, ev.R_sec_trial_se, spec.trials});
            }
            ++point;
        }
}

void run_fig7(const ExperimentSpec& spec, ResultTable& table)
{
    table.sweep_name = "theta_b";
    SystemConfig base = scaled(preset_base("fig7"), spec.scale);
    const double pi = arma::datum::pi;
    const std::vector<double> tb_grid = {pi / 20, pi / 10, pi / 5, pi / 4,
                                         pi / 2,  3 * pi / 4, pi};

    for (std::size_t i = 0; i < tb_grid.size(); ++i)
    {
        SystemConfig cfg = base;
        cfg.theta_b = tb_grid[i];
        cfg.validate();
        CorrelationSet corr =
            build_correlation_set(cfg, FadingMode::correlated, derive_seed(spec.seed, 0x0f7, i));
        for (Scheme scheme : {Scheme::proposed, Scheme::contaminated_mf})
        {
            SecrecyEvaluation ev = run_montecarlo(cfg, corr, scheme, spec.trials,
                                                  derive_seed(spec.seed, 0x700, i),
                                                  EveModel::worst_case);
            const char* name = scheme == Scheme::proposed ? "proposed" : "contaminated_mf";
            table.rows.push_back(
                {tb_grid[i], name, "secrecy_rate", ev.R_sec, ev.R_sec_trial_se, spec.trials});
        }
        table.rows.push_back(
            {tb_grid[i], "theorem2", "secrecy_rate", theorem2_secrecy(corr, cfg), 0.0, 0});
    }
}

} // namespace

ResultTable run_experiment(const ExperimentSpec& spec)
{
    if (spec.trials < 1)
        throw config_error("trials >= 1 violated");
    if (spec.scale < 1)
        throw config_error("scale >= 1 violated");

    ResultTable table;
    table.seed = spec.seed;
    table.version = kVersion;
    {
        std::ostringstream key;
        key << spec.figure << "|trials=" << spec.trials << "|seed=" << spec.seed
            << "|scale=" << spec.scale << "|full=" << spec.full;
        table.config_hash = fnv1a_hash(key.str());
    }

    if (spec.figure == "fig2" || spec.figure == "fig2_rho0")
        run_fig2(spec, spec.figure, table);
    else if (spec.figure == "fig3")
        run_fig3(spec, table);
    else if (spec.figure == "fig4")
        run_fig4(spec, table);
    else if (spec.figure == "fig5" || spec.figure == "fig6")
        run_fig56(spec, spec.figure, table);
    else if (spec.figure == "fig7")
        run_fig7(spec, table);
    else
        throw config_error("unknown figure id: " + spec.figure);

    if (!spec.out.empty())
        write_result_csv(table, spec.out);
    return table;
}

ResultTable run_config_experiment(const SystemConfig& cfg, FadingMode mode, int trials,
                                  std::uint64_t seed)
{
    cfg.validate();
    ResultTable table;
    table.sweep_name = "point";
    table.seed = seed;
    table.version = kVersion;
    table.config_hash = fnv1a_hash(serialize_config(cfg));

    CorrelationSet corr = build_correlation_set(cfg, mode, derive_seed(seed, 0x0fc));
    SecrecyEvaluation ev =
        run_montecarlo(cfg, corr, Scheme::proposed, trials, derive_seed(seed, 0xc00));

    table.rows.push_back({0.0, "montecarlo", "secrecy_rate", ev.R_sec, ev.R_sec_trial_se, trials});
    table.rows.push_back({0.0, "montecarlo", "mse", ev.mse_mean, 0.0, trials});
    for (int k = 0; k < cfg.K; ++k)
    {
        std::string suffix = "_user" + std::to_string(k);
        table.rows.push_back(
            {0.0, "montecarlo", "rate" + suffix, ev.rate_user(k), ev.rate_se(k), trials});
        table.rows.push_back(
            {0.0, "montecarlo", "c_eve" + suffix, ev.c_eve(k), ev.c_eve_se(k), trials});
    }
    Theorem2Result terms = theorem2(corr, cfg);
    table.rows.push_back({0.0, "theorem2", "secrecy_rate", terms.R_sec_ach, 0.0, 0});
    return table;
}

std::string result_csv_body(const ResultTable& table)
{
    std::ostringstream out;
    out << "sweep_value,scheme,metric,mean,std_error,trials\n";
    for (const auto& r : table.rows)
        out << fmt(r.sweep_value) << ',' << r.scheme << ',' << r.metric << ',' << fmt(r.mean)
            << ',' << fmt(r.std_error) << ',' << r.trials << '\n';
    return out.str();
}

void write_result_csv(const ResultTable& table, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_result_csv: cannot open " + path);
    out << result_csv_body(table);

    nlohmann::json meta;
    meta["sweep"] = table.sweep_name;
    meta["seed"] = table.seed;
    meta["config_hash"] = table.config_hash;
    meta["version"] = table.version;
    meta["generated_at"] = static_cast<std::int64_t>(
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count());
    std::ofstream ms(path + ".meta.json");
    if (!ms)
        throw std::runtime_error("write_result_csv: cannot open " + path + ".meta.json");
    ms << meta.dump(2);
}

} // namespace secmimo
