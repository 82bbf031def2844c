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

#include "secmimo/downlink_secrecy.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace secmimo
{

arma::cx_vec make_precoder(const arma::cx_mat& V_eq, const arma::cx_vec& h_hat)
{
    double n = arma::norm(h_hat);
    if (!(n > 0.0) || !h_hat.is_finite())
        throw std::runtime_error("make_precoder: zero-norm channel estimate");
    return V_eq.t() * (h_hat / n);
}

PrecoderSet make_precoders(const std::vector<CellEstimate>& cells)
{
    PrecoderSet set;
    set.t.resize(cells.size());
    for (std::size_t l = 0; l < cells.size(); ++l)
    {
        const auto& cell = cells[l];
        set.t[l].resize(cell.projection.h_hat.size());
        for (std::size_t k = 0; k < cell.projection.h_hat.size(); ++k)
            set.t[l][k] = make_precoder(cell.subspace.V_eq, cell.projection.h_hat[k]);
    }
    return set;
}

std::vector<arma::cx_vec> contaminated_mf_precoder(const arma::cx_mat& Y_p,
                                                   const arma::cx_mat& pilots, double P_cell)
{
    const int K = static_cast<int>(pilots.n_cols);
    const double tau = static_cast<double>(pilots.n_rows);
    std::vector<arma::cx_vec> beams(K);
    for (int k = 0; k < K; ++k)
    {
        arma::cx_vec h_ls = Y_p * arma::conj(pilots.col(k)) / (std::sqrt(P_cell) * tau);
        double n = arma::norm(h_ls);
        if (!(n > 0.0))
            throw std::runtime_error("contaminated_mf_precoder: zero-norm estimate");
        beams[k] = h_ls / n;
    }
    return beams;
}

arma::vec user_sinr(const ChannelRealization& chan, const PrecoderSet& precoders,
                    const SystemConfig& cfg)
{
    const int L = cfg.L, K = cfg.K;
    arma::vec gamma(K);
    for (int k = 0; k < K; ++k)
    {
        double signal = 0.0, interference = 0.0;
        for (int l = 0; l <= L; ++l)
        {
            const arma::cx_vec& h = chan.h_user[0][l][k];
            for (int t = 0; t < K; ++t)
            {
                double g2 = cfg.P * std::norm(arma::cdot(h, precoders.t[l][t]));
                if (l == 0 && t == k)
                    signal = g2;
                else
                    interference += g2;
            }
        }
        gamma(k) = signal / (cfg.N0d + interference);
    }
    return gamma;
}

double eve_capacity(const ChannelRealization& chan, const PrecoderSet& precoders,
                    const SystemConfig& cfg, int k, EveModel model)
{
    const int L = cfg.L, K = cfg.K, N_e = cfg.N_e;
    arma::cx_mat Q(N_e, N_e, arma::fill::zeros);
    arma::cx_vec b_k = chan.H_eve[0].t() * precoders.t[0][k];
    if (model == EveModel::practical)
    {
        for (int l = 0; l <= L; ++l)
        {
            arma::cx_mat T(cfg.N_t, K);
            for (int t = 0; t < K; ++t)
                T.col(t) = precoders.t[l][t];
            arma::cx_mat B = chan.H_eve[l].t() * T;
            Q += cfg.P * (B * B.t());
        }
        Q -= cfg.P * (b_k * b_k.t());
    }
    Q.diag() += cfg.N0d;
    arma::cx_vec x = arma::solve(Q, b_k);
    double snr = cfg.P * arma::cdot(b_k, x).real();
    return std::log2(1.0 + std::max(0.0, snr));
}

double secrecy_sum_rate(const arma::vec& R_user, const arma::vec& C_eve)
{
    if (R_user.n_elem != C_eve.n_elem)
        throw std::invalid_argument("secrecy_sum_rate: length mismatch");
    double total = 0.0;
    for (arma::uword k = 0; k < R_user.n_elem; ++k)
        total += std::max(0.0, R_user(k) - C_eve(k));
    return total;
}

namespace
{

TrialLinkStats run_one_trial(const SystemConfig& cfg, const CorrelationSet& corr, Scheme scheme,
                             Rng& rng, AssembleScope scope)
{
    const int L = cfg.L, K = cfg.K;
    ChannelRealization chan = sample_channels(corr, rng);
    UplinkFrame frame = assemble_received(cfg, chan, rng, scope);

    TrialLinkStats stats;
    PrecoderSet precoders;
    precoders.t.resize(L + 1);

    if (scheme == Scheme::proposed)
    {
        std::vector<CellEstimate> cells;
        const int m_count = (scope == AssembleScope::cell0_only) ? 1 : L + 1;
        cells.reserve(m_count);
        for (int m = 0; m < m_count; ++m)
            cells.push_back(estimate_cell(cfg, corr, chan, frame, m));

        stats.mse = normalized_mse(cells[0].projection.h_hat, cells[0].projection.h_eq) / K;
        double he_norm2 = std::pow(arma::norm(chan.H_eve[0], "fro"), 2);
        stats.eve_proj =
            std::pow(arma::norm(cells[0].subspace.V_eq * chan.H_eve[0], "fro"), 2) / he_norm2;

        if (scope == AssembleScope::cell0_only)
            return stats;
        precoders = make_precoders(cells);
    }
    else
    {
        stats.mse = std::numeric_limits<double>::quiet_NaN();
        stats.eve_proj = std::numeric_limits<double>::quiet_NaN();
        if (scope == AssembleScope::cell0_only)
        {
            precoders.t[0] = contaminated_mf_precoder(frame.Y_p[0], frame.pilots, cfg.cell_power(0));
            return stats;
        }
        for (int m = 0; m <= L; ++m)
            precoders.t[m] =
                contaminated_mf_precoder(frame.Y_p[m], frame.pilots, cfg.cell_power(m));
    }

    stats.gain2.set_size(L + 1, K, K);
    for (int k = 0; k < K; ++k)
        for (int l = 0; l <= L; ++l)
        {
            const arma::cx_vec& h = chan.h_user[0][l][k];
            for (int t = 0; t < K; ++t)
                stats.gain2(l, t, k) = std::norm(arma::cdot(h, precoders.t[l][t]));
        }

    stats.B.resize(L + 1);
    for (int l = 0; l <= L; ++l)
    {
        arma::cx_mat T(cfg.N_t, K);
        for (int t = 0; t < K; ++t)
            T.col(t) = precoders.t[l][t];
        stats.B[l] = chan.H_eve[l].t() * T;
    }
    return stats;
}

} // namespace

std::vector<TrialLinkStats> collect_link_stats(const SystemConfig& cfg,
                                               const CorrelationSet& corr, Scheme scheme,
                                               int trials, std::uint64_t seed,
                                               AssembleScope scope)
{
    if (trials < 1)
        throw std::invalid_argument("collect_link_stats: trials >= 1 required");
    cfg.validate();

    std::vector<TrialLinkStats> out(trials);
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t i)
    {
        // degenerate draws (zero-norm estimates) are resampled with a fresh
        // sub-seed and counted
        for (int attempt = 0;; ++attempt)
        {
            if (attempt >= 16)
                throw std::runtime_error("collect_link_stats: trial kept degenerating");
            Rng rng(derive_seed(seed, i, static_cast<std::uint64_t>(attempt)));
            try
            {
                out[i] = run_one_trial(cfg, corr, scheme, rng, scope);
                out[i].resamples = attempt;
                break;
            }
            catch (const std::runtime_error& e)
            {
                if (std::string(e.what()).find("zero-norm") == std::string::npos)
                    throw;
            }
        }
    });
    return out;
}

SecrecyEvaluation evaluate_rates(const std::vector<TrialLinkStats>& stats, int K, int L,
                                 double P, double N0d, EveModel model)
{
    const int n = static_cast<int>(stats.size());
    SecrecyEvaluation ev;
    ev.trials = n;
    ev.gamma_mean.zeros(K);
    ev.rate_user.zeros(K);
    ev.rate_se.zeros(K);
    ev.c_eve.zeros(K);
    ev.c_eve_se.zeros(K);
    ev.records.reserve(static_cast<std::size_t>(n) * K);

    arma::mat rate_samples(n, K), c_samples(n, K);
    arma::vec rsec_samples(n);
    double mse_acc = 0.0, eve_acc = 0.0;

    for (int i = 0; i < n; ++i)
    {
        const TrialLinkStats& s = stats[i];
        if (s.gain2.n_elem == 0)
            throw std::invalid_argument("evaluate_rates: stats were collected without downlink");
        ev.resampled += s.resamples;
        mse_acc += s.mse;
        eve_acc += s.eve_proj;

        arma::cx_mat G_sum(s.B[0].n_rows, s.B[0].n_rows, arma::fill::zeros);
        for (int l = 0; l <= L; ++l)
            G_sum += s.B[l] * s.B[l].t();

        double rsec_trial = 0.0;
        for (int k = 0; k < K; ++k)
        {
            double signal = P * s.gain2(0, k, k);
            double interference = 0.0;
            for (int l = 0; l <= L; ++l)
                for (int t = 0; t < K; ++t)
                    if (!(l == 0 && t == k))
                        interference += P * s.gain2(l, t, k);
            double gamma = signal / (N0d + interference);
            double rate = std::log2(1.0 + gamma);

            arma::cx_vec b_k = s.B[0].col(k);
            double c;
            if (model == EveModel::practical)
            {
                arma::cx_mat Q = P * (G_sum - b_k * b_k.t());
                Q.diag() += N0d;
                arma::cx_vec x = arma::solve(Q, b_k);
                c = std::log2(1.0 + std::max(0.0, P * arma::cdot(b_k, x).real()));
            }
            else
            {
                c = std::log2(1.0 + P * std::pow(arma::norm(b_k), 2) / N0d);
            }

            ev.gamma_mean(k) += gamma;
            rate_samples(i, k) = rate;
            c_samples(i, k) = c;
            rsec_trial += std::max(0.0, rate - c);
            ev.records.push_back({i, k, gamma, rate, c});
        }
        rsec_samples(i) = rsec_trial;
    }

    for (int k = 0; k < K; ++k)
    {
        ev.gamma_mean(k) /= n;
        ev.rate_user(k) = arma::mean(rate_samples.col(k));
        ev.c_eve(k) = arma::mean(c_samples.col(k));
        if (n > 1)
        {
            ev.rate_se(k) = arma::stddev(rate_samples.col(k)) / std::sqrt(n);
            ev.c_eve_se(k) = arma::stddev(c_samples.col(k)) / std::sqrt(n);
        }
    }
    ev.R_sec = secrecy_sum_rate(ev.rate_user, ev.c_eve);
    ev.R_sec_trial_mean = arma::mean(rsec_samples);
    ev.R_sec_trial_se = n > 1 ? arma::stddev(rsec_samples) / std::sqrt(n) : 0.0;
    ev.mse_mean = mse_acc / n;
    ev.eve_proj_mean = eve_acc / n;
    return ev;
}

SecrecyEvaluation run_montecarlo(const SystemConfig& cfg, const CorrelationSet& corr,
                                 Scheme scheme, int trials, std::uint64_t seed, EveModel model)
{
    auto stats = collect_link_stats(cfg, corr, scheme, trials, seed, AssembleScope::all_cells);
    return evaluate_rates(stats, cfg.K, cfg.L, cfg.P, cfg.N0d, model);
}

void write_trial_records_csv(const std::vector<TrialRecord>& records, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_trial_records_csv: cannot open " + path);
    out << "trial,k,gamma_k,rate_k,c_eve_k\n";
    char buf[160];
    for (const auto& r : records)
    {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g\n", r.trial, r.k, r.gamma,
                      r.rate, r.c_eve);
        out << buf;
    }
}

} // namespace secmimo
