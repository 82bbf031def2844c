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
//
// End-to-end acceptance suite. Each numbered block checks one shipped
// guarantee at its stated tolerance and prints a single PASS/FAIL line.
// Exit status is the number of failed criteria.

#include "secmimo/experiment.hpp"
#include "secmimo/uplink_frame.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

using namespace secmimo;

namespace
{

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail)
{
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass)
        ++g_failures;
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

SystemConfig fig3_config(int N_t, double snr_db)
{
    SystemConfig cfg;
    cfg.L = 3;
    cfg.K = 5;
    cfg.N_t = N_t;
    cfg.N_e = 2;
    cfg.T = 1024;
    cfg.tau = 64;
    cfg.P0 = 10.0;
    cfg.P_l = 10.0;
    cfg.N0 = 1.0;
    cfg.N0d = 1.0;
    cfg.Pe = cfg.K * cfg.P0 * db_to_linear(20.0);
    cfg.P = cfg.N0d * db_to_linear(snr_db);
    cfg.validate();
    return cfg;
}

constexpr int kTrials = 50;
constexpr std::uint64_t kSeed = 20260809;

} // namespace

// 1. Estimation accuracy: per-user-mean normalized MSE below 1e-3 on the
//    whole (P0, T) grid of the published MSE study.
static void criterion1()
{
    SystemConfig base = fig3_config(128, 10.0);
    base.Pe = base.K * base.P0 * db_to_linear(1.0); // rho = 1 dB
    CorrelationSet corr =
        build_correlation_set(base, FadingMode::correlated, derive_seed(kSeed, 1));

    bool pass = true;
    double worst = 0.0;
    std::string worst_at;
    for (double p0 : {1.0, 10.0, 100.0})
        for (int T : {128, 256, 512, 1024})
        {
            SystemConfig cfg = base;
            cfg.P0 = p0;
            cfg.P_l = p0;
            cfg.Pe = cfg.K * cfg.P0 * db_to_linear(1.0);
            cfg.T = T;
            cfg.validate();
            auto stats = collect_link_stats(cfg, corr, Scheme::proposed, kTrials,
                                            derive_seed(kSeed, 10, T * 1000 + int(p0)),
                                            AssembleScope::cell0_only);
            double acc = 0.0;
            for (const auto& s : stats)
                acc += s.mse;
            double mse = acc / stats.size();
            if (mse >= worst)
            {
                worst = mse;
                worst_at = "P0=" + fmt(p0) + ",T=" + std::to_string(T);
            }
            pass = pass && (mse < 1e-3);
        }
    report(1, "estimation accuracy, MSE < 1e-3 on the full grid", pass,
           "worst " + fmt(worst) + " at " + worst_at);
}

// 2. + 4. + 5b. share the expensive fig-3 Monte Carlo runs.
static void criteria_2_4_5()
{
    // --- Monte Carlo and closed form at N_t in {64, 128} --------------------
    bool pass2 = true;
    std::string detail2;
    std::vector<TrialLinkStats> stats128;
    for (int N_t : {64, 128})
    {
        SystemConfig cfg = fig3_config(N_t, 20.0);
        CorrelationSet corr =
            build_correlation_set(cfg, FadingMode::correlated, derive_seed(kSeed, 2, N_t));
        auto stats = collect_link_stats(cfg, corr, Scheme::proposed, kTrials,
                                        derive_seed(kSeed, 20, N_t));
        Theorem2Result terms = theorem2(corr, cfg);
        double tol = (N_t == 128) ? 0.10 : 0.20;
        for (double snr : {0.0, 10.0, 20.0})
        {
            double P = cfg.N0d * db_to_linear(snr);
            SecrecyEvaluation ev = evaluate_rates(stats, cfg.K, cfg.L, P, cfg.N0d);
            double th = theorem2_secrecy_at(terms, P, cfg.N0d);
            double gap = std::abs(th - ev.R_sec) / ev.R_sec;
            detail2 += "Nt" + std::to_string(N_t) + "@snr" + fmt(snr) + ":" + fmt(gap) + " ";
            pass2 = pass2 && (gap < tol);
        }
        if (N_t == 128)
            stats128 = stats;
    }
    report(2, "closed form tracks Monte Carlo (10% at N_t=128, 20% at N_t=64)", pass2,
           "gaps " + detail2);

    // --- eavesdropper suppression at N_t = 128, rho = 20 dB ----------------
    {
        SystemConfig cfg = fig3_config(128, 20.0);
        SecrecyEvaluation ev = evaluate_rates(stats128, cfg.K, cfg.L, cfg.P, cfg.N0d);
        bool pass4 = true;
        double worst_ratio = 0.0;
        for (int k = 0; k < cfg.K; ++k)
        {
            double ratio = ev.c_eve(k) / ev.rate_user(k);
            worst_ratio = std::max(worst_ratio, ratio);
            pass4 = pass4 && (ratio < 0.05);
        }

        // projection leakage strictly decreasing in T
        CorrelationSet corr =
            build_correlation_set(cfg, FadingMode::correlated, derive_seed(kSeed, 4));
        std::vector<double> leakage;
        for (int T : {128, 256, 512, 1024})
        {
            SystemConfig c = cfg;
            c.T = T;
            c.validate();
            auto stats = collect_link_stats(c, corr, Scheme::proposed, kTrials,
                                            derive_seed(kSeed, 40, T),
                                            AssembleScope::cell0_only);
            double acc = 0.0;
            for (const auto& s : stats)
                acc += s.eve_proj;
            leakage.push_back(acc / stats.size());
        }
        bool decreasing = true;
        std::string trend;
        for (std::size_t i = 0; i < leakage.size(); ++i)
        {
            trend += fmt(leakage[i]) + (i + 1 < leakage.size() ? " > " : "");
            if (i > 0 && !(leakage[i] < leakage[i - 1]))
                decreasing = false;
        }
        report(4, "eavesdropper suppression: C_eve < 5% of R_k and leakage falls with T",
               pass4 && decreasing, "max C/R " + fmt(worst_ratio) + "; leakage " + trend);
    }

    // --- SNR monotonicity ---------------------------------------------------
    {
        SystemConfig cfg = fig3_config(128, 20.0);
        CorrelationSet corr =
            build_correlation_set(cfg, FadingMode::correlated, derive_seed(kSeed, 2, 128));
        Theorem2Result terms = theorem2(corr, cfg);
        bool formula_monotone = true;
        arma::vec prev;
        for (double snr = -20.0; snr <= 26.0; snr += 2.0)
        {
            arma::vec g = theorem2_gamma_at(terms, cfg.N0d * db_to_linear(snr), cfg.N0d);
            if (prev.n_elem && !(arma::all(g > prev)))
                formula_monotone = false;
            prev = g;
        }

        bool mc_monotone = true;
        double prev_rsec = -1.0, prev_se = 0.0, max_dip = 0.0;
        for (double snr = -20.0; snr <= 26.0; snr += 2.0)
        {
            SecrecyEvaluation ev =
                evaluate_rates(stats128, cfg.K, cfg.L, cfg.N0d * db_to_linear(snr), cfg.N0d);
            if (prev_rsec >= 0.0)
            {
                double allowed = std::max(ev.R_sec_trial_se, prev_se);
                max_dip = std::max(max_dip, prev_rsec - ev.R_sec);
                if (ev.R_sec < prev_rsec - allowed)
                    mc_monotone = false;
            }
            prev_rsec = ev.R_sec;
            prev_se = ev.R_sec_trial_se;
        }
        report(5, "secrecy rate grows with SNR (formula strict; Monte Carlo within 1 SE)",
               formula_monotone && mc_monotone, "max Monte Carlo dip " + fmt(max_dip) + " bits");
    }
}

// 3. Logarithmic antenna scaling of the single-user secrecy rate.
static void criterion3()
{
    SystemConfig base;
    base.L = 0;
    base.K = 1;
    base.N_e = 2;
    base.tau = 64;
    base.P0 = 10.0;
    base.N0 = 1.0;
    base.N0d = 1.0;
    base.Pe = base.K * base.P0 * db_to_linear(20.0);

    bool pass = true;
    std::string detail;
    for (double snr : {10.0, 20.0})
    {
        std::vector<double> rates;
        for (int N_t : {64, 128, 256})
        {
            SystemConfig cfg = base;
            cfg.N_t = N_t;
            cfg.T = 16 * N_t;
            cfg.P = cfg.N0d * db_to_linear(snr);
            cfg.validate();
            CorrelationSet corr =
                build_correlation_set(cfg, FadingMode::iid, derive_seed(kSeed, 3, N_t));
            SecrecyEvaluation ev = run_montecarlo(cfg, corr, Scheme::proposed, kTrials,
                                                  derive_seed(kSeed, 30, N_t));
            rates.push_back(ev.R_sec);
        }
        for (std::size_t i = 1; i < rates.size(); ++i)
        {
            double step = rates[i] - rates[i - 1];
            detail += "snr" + fmt(snr) + ":+" + fmt(step) + " ";
            pass = pass && (step > 0.7) && (step < 1.3);
        }
    }
    report(3, "secrecy rate gains 1.0 +/- 0.3 bits per antenna doubling", pass, detail);
}

// 6. Closed-form specialization checks.
static void criterion6()
{
    Rng rng(derive_seed(kSeed, 6));
    bool pass = true;
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep)
    {
        SystemConfig cfg;
        cfg.L = int(rng.uniform(0.0, 3.999));
        cfg.K = 1 + int(rng.uniform(0.0, 3.999));
        cfg.N_e = 1 + int(rng.uniform(0.0, 2.999));
        cfg.tau = cfg.K + int(rng.uniform(0.0, 24.0));
        cfg.N_t = cfg.M() + 4 + int(rng.uniform(0.0, 40.0));
        cfg.T = cfg.tau + 16 + int(rng.uniform(0.0, 128.0));
        cfg.P0 = rng.uniform(0.2, 20.0);
        cfg.P_l = rng.uniform(0.2, 20.0);
        cfg.Pe = rng.uniform(1.0, 500.0);
        cfg.P = rng.uniform(0.1, 200.0);
        cfg.N0 = rng.uniform(0.2, 4.0);
        cfg.N0d = rng.uniform(0.2, 4.0);
        cfg.validate();

        IidBetas betas;
        betas.own.set_size(cfg.L + 1, cfg.K);
        betas.cross0.set_size(cfg.L + 1, cfg.K);
        std::vector<std::vector<std::vector<double>>> bu(
            cfg.L + 1,
            std::vector<std::vector<double>>(cfg.L + 1, std::vector<double>(cfg.K)));
        for (int p = 0; p <= cfg.L; ++p)
            for (int l = 0; l <= cfg.L; ++l)
                for (int k = 0; k < cfg.K; ++k)
                    bu[p][l][k] = rng.uniform(0.05, 2.0);
        for (int l = 0; l <= cfg.L; ++l)
            for (int k = 0; k < cfg.K; ++k)
            {
                betas.own(l, k) = bu[l][l][k];
                betas.cross0(l, k) = bu[0][l][k];
            }
        std::vector<double> be(cfg.L + 1, 1.0);
        CorrelationSet corr = build_iid_correlation_set(cfg, bu, be);

        arma::vec g2 = theorem2(corr, cfg).gamma_bar;
        arma::vec g3 = theorem3_gamma(cfg, betas);
        double rel = arma::norm(g2 - g3, "inf") / arma::norm(g3, "inf");
        worst = std::max(worst, rel);
        pass = pass && (rel < 1e-9);
    }

    // single-user limit at N_t = 256
    SystemConfig cfg;
    cfg.L = 0;
    cfg.K = 1;
    cfg.N_e = 2;
    cfg.N_t = 256;
    cfg.T = 4096;
    cfg.tau = 64;
    cfg.P0 = 10.0;
    cfg.Pe = 100.0;
    cfg.P = 100.0;
    cfg.validate();
    double t3 = theorem3_secrecy(cfg, IidBetas::standard_model(cfg));
    double c1 = corollary1_rate(cfg, 1.0);
    double gap = std::abs(t3 - c1) / t3;
    pass = pass && (gap < 0.05);
    report(6, "theorem-2/theorem-3 specialization (1e-9) and single-user limit (5%)", pass,
           "worst tuple " + fmt(worst) + ", limit gap " + fmt(gap));
}

// 7. Attack contrast at rho = 20 dB, iid fading.
static void criterion7()
{
    SystemConfig cfg = fig3_config(128, 20.0);
    CorrelationSet corr = build_correlation_set(cfg, FadingMode::iid, derive_seed(kSeed, 7));

    // the contrast is evaluated against the cancellation-capable eavesdropper
    SecrecyEvaluation mf = run_montecarlo(cfg, corr, Scheme::contaminated_mf, kTrials,
                                          derive_seed(kSeed, 70), EveModel::worst_case);
    SecrecyEvaluation proposed = run_montecarlo(cfg, corr, Scheme::proposed, kTrials,
                                                derive_seed(kSeed, 71), EveModel::worst_case);

    // attack-separable reference: same scenario with a 60 dB attack
    SystemConfig ref_cfg = cfg;
    ref_cfg.Pe = ref_cfg.K * ref_cfg.P0 * db_to_linear(60.0);
    SecrecyEvaluation ref = run_montecarlo(ref_cfg, corr, Scheme::proposed, kTrials,
                                           derive_seed(kSeed, 71), EveModel::worst_case);

    bool pass = (mf.R_sec < 0.1) &&
                (std::abs(proposed.R_sec - ref.R_sec) / ref.R_sec < 0.25);
    report(7, "contaminated MF collapses while the proposed scheme holds", pass,
           "MF " + fmt(mf.R_sec) + " bits, proposed " + fmt(proposed.R_sec) + " vs ref " +
               fmt(ref.R_sec));
}

// 8. Invariant suite.
static void criterion8()
{
    bool pass = true;
    std::string detail;

    // pilot Gram
    {
        arma::cx_mat p = make_pilots(5, 64);
        double err = arma::norm(p.t() * p - 64.0 * arma::eye<arma::cx_mat>(5, 5), "fro");
        pass = pass && (err < 1e-10);
        detail += "gram " + fmt(err);
    }

    SystemConfig cfg = fig3_config(64, 20.0);
    CorrelationSet corr =
        build_correlation_set(cfg, FadingMode::correlated, derive_seed(kSeed, 8));

    // correlation matrices Hermitian PSD with normalized traces
    {
        bool ok = true;
        for (int p = 0; p <= cfg.L && ok; ++p)
            for (int l = 0; l <= cfg.L && ok; ++l)
                for (int k = 0; k < cfg.K && ok; ++k)
                {
                    const arma::cx_mat& R = corr.R_user[p][l][k];
                    ok = ok && arma::norm(R - R.t(), "fro") <= 1e-10 * arma::norm(R, "fro");
                    arma::vec ev = arma::eig_sym(R);
                    ok = ok && ev.min() >= -1e-10 * ev.max();
                    double expect = (p == l ? 1.0 : cfg.beta) * cfg.N_t;
                    ok = ok && std::abs(arma::trace(R).real() - expect) <= 1e-8 * expect;
                }
        pass = pass && ok;
        detail += std::string(", corr ") + (ok ? "ok" : "bad");
    }

    // per-trial invariants: V_eq semi-unitary, precoders unit norm,
    // eigendecomposition reconstructs the sample covariance
    {
        bool ok = true;
        for (int i = 0; i < 5 && ok; ++i)
        {
            Rng rng(derive_seed(kSeed, 80, i));
            ChannelRealization chan = sample_channels(corr, rng);
            UplinkFrame frame = assemble_received(cfg, chan, rng);
            arma::cx_mat S = sample_covariance(frame.Y0(0), cfg.T, cfg.N_t);
            arma::vec ev;
            arma::cx_mat V;
            eig_ascending(S, ev, V);
            ok = ok && arma::norm(V * arma::diagmat(ev) * V.t() - S, "fro") <=
                           1e-10 * arma::norm(S, "fro");
            CellEstimate cell = estimate_cell(cfg, corr, chan, frame, 0);
            ok = ok && arma::norm(cell.subspace.V_eq * cell.subspace.V_eq.t() -
                                  arma::eye<arma::cx_mat>(cfg.K, cfg.K), "fro") < 1e-10;
            for (int k = 0; k < cfg.K; ++k)
            {
                arma::cx_vec t = make_precoder(cell.subspace.V_eq, cell.projection.h_hat[k]);
                ok = ok && std::abs(arma::norm(t) - 1.0) < 1e-10;
            }
        }
        pass = pass && ok;
        detail += std::string(", trial invariants ") + (ok ? "ok" : "bad");
    }

    // deterministic reruns, byte identical
    {
        ExperimentSpec spec;
        spec.figure = "fig4";
        spec.trials = 2;
        spec.seed = 5;
        spec.scale = 4;
        bool ok = result_csv_body(run_experiment(spec)) == result_csv_body(run_experiment(spec));
        SecrecyEvaluation a = run_montecarlo(cfg, corr, Scheme::proposed, 2, 3);
        SecrecyEvaluation b = run_montecarlo(cfg, corr, Scheme::proposed, 2, 3);
        ok = ok && (a.R_sec == b.R_sec) && arma::norm(a.rate_user - b.rate_user, "inf") == 0.0;
        pass = pass && ok;
        detail += std::string(", determinism ") + (ok ? "ok" : "bad");
    }

    report(8, "invariant suite", pass, detail);
}

int main()
{
    setenv("OPENBLAS_NUM_THREADS", "1", 0);
    std::printf("secmimo acceptance suite: %d trials per Monte Carlo point, seed %llu\n",
                kTrials, static_cast<unsigned long long>(kSeed));

    criterion1();
    criteria_2_4_5();
    criterion3();
    criterion6();
    criterion7();
    criterion8();

    if (g_failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures;
}
