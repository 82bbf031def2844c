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

#include "secmimo/asymptotic_rates.hpp"

#include <cmath>
#include <stdexcept>

namespace secmimo
{

namespace
{

double tr_re(const arma::cx_mat& A) { return arma::trace(A).real(); }

// tr(A*B) without forming the product
double tr_prod(const arma::cx_mat& A, const arma::cx_mat& B)
{
    return arma::accu(A % B.st()).real();
}

} // namespace

ABlock build_A_matrices(const CorrelationSet& corr, const SystemConfig& cfg, int l, int t)
{
    const int K = cfg.K;
    const double P_cell = cfg.cell_power(l);
    ABlock blk;
    blk.A1.set_size(K);
    blk.A2.set_size(K);
    blk.A3.set_size(K);
    blk.A4.set_size(K);
    blk.A5.set_size(K);

    const arma::cx_mat& R_lt = corr.R_user[l][l][t];
    for (int p = 0; p < K; ++p)
    {
        const arma::cx_mat& R_lp = corr.R_user[l][l][p];
        double trace_p = tr_re(R_lp);
        if (!(trace_p > 0.0))
            throw std::invalid_argument("build_A_matrices: zero trace");
        blk.A1(p) = tr_prod(R_lp, R_lt) / trace_p;
        blk.A2(p) = 1.0 / (cfg.N0 + cfg.tau * P_cell * blk.A1(p));
        blk.A3(p) = blk.A1(p) * blk.A1(p) * blk.A2(p) * blk.A2(p);
        blk.A4(p) = blk.A3(p) / trace_p;
        blk.A5(p) = blk.A2(p) * blk.A1(p) / trace_p;
    }
    return blk;
}

Theorem2Result theorem2(const CorrelationSet& corr, const SystemConfig& cfg)
{
    cfg.validate();
    const int L = cfg.L, K = cfg.K;
    Theorem2Result res;
    res.P_I = cfg.P_l;
    res.a1.set_size(L + 1, K);
    res.a2.set_size(K);
    res.b.set_size(K, K);
    res.gamma_bar.set_size(K);
    if (L > 0)
        res.c.set_size(L, K, K);

    // per-cell blocks and pairwise trace products of the own-cell matrices
    std::vector<std::vector<ABlock>> blocks(L + 1, std::vector<ABlock>(K));
    std::vector<arma::mat> tr_pair(L + 1);   // [l](p, t) = tr(R_lp^l R_lt^l)
    std::vector<arma::vec> traces(L + 1);    // [l](p)    = tr(R_lp^l)
    for (int l = 0; l <= L; ++l)
    {
        tr_pair[l].set_size(K, K);
        traces[l].set_size(K);
        for (int p = 0; p < K; ++p)
            traces[l](p) = tr_re(corr.R_user[l][l][p]);
        for (int p = 0; p < K; ++p)
            for (int t = p; t < K; ++t)
            {
                tr_pair[l](p, t) = tr_prod(corr.R_user[l][l][p], corr.R_user[l][l][t]);
                tr_pair[l](t, p) = tr_pair[l](p, t);
            }
        for (int t = 0; t < K; ++t)
            blocks[l][t] = build_A_matrices(corr, cfg, l, t);
    }

    // a_{lt,1}^l
    for (int l = 0; l <= L; ++l)
    {
        double P_cell = cfg.cell_power(l);
        for (int t = 0; t < K; ++t)
        {
            const ABlock& blk = blocks[l][t];
            double sig = 0.0;
            for (int p = 0; p < K; ++p)
                sig += blk.A4(p) * (p == t ? traces[l](t) * traces[l](t) : tr_pair[l](p, t));
            double noi = 0.0;
            for (int p = 0; p < K; ++p)
                noi += blk.A4(p) * traces[l](p);
            res.a1(l, t) = P_cell * cfg.tau * (P_cell * cfg.tau * sig + cfg.N0 * noi);
        }
    }

    // a_{0k,2}^0
    for (int k = 0; k < K; ++k)
    {
        const ABlock& blk = blocks[0][k];
        double s5 = 0.0, s4 = 0.0;
        for (int t = 0; t < K; ++t)
        {
            double cross = (t == k) ? traces[0](k) * traces[0](k) : tr_pair[0](k, t);
            s5 += blk.A5(t) * cross;
            s4 += blk.A4(t) * cross;
        }
        res.a2(k) = cfg.P0 * (cfg.P0 * cfg.tau * cfg.tau * s5 * s5) +
                    cfg.P0 * cfg.N0 * cfg.tau * s4;
    }

    // b_{0t,k}^0
    for (int t = 0; t < K; ++t)
    {
        const ABlock& blk = blocks[0][t];
        for (int k = 0; k < K; ++k)
        {
            double a5kk = blk.A5(k);
            double lead = cfg.P0 * cfg.tau * traces[0](k) * a5kk;
            res.b(t, k) = lead * lead * tr_pair[0](k, t) +
                          cfg.P0 * cfg.tau * cfg.N0 * std::pow(traces[0](k), 3) * a5kk * a5kk;
        }
    }

    // c_{lt,k}^l; R_lk^0 is the cross-cell correlation towards BS 0
    for (int l = 1; l <= L; ++l)
    {
        double P_cell = cfg.cell_power(l);
        for (int k = 0; k < K; ++k)
        {
            const arma::cx_mat& Rx = corr.R_user[0][l][k];
            arma::vec tr_xp(K);        // tr(Rx R_lp^l)
            std::vector<arma::cx_mat> RxR(K); // R_lp^l * Rx
            for (int p = 0; p < K; ++p)
            {
                tr_xp(p) = tr_prod(Rx, corr.R_user[l][l][p]);
                RxR[p] = corr.R_user[l][l][p] * Rx;
            }
            for (int t = 0; t < K; ++t)
            {
                const ABlock& blk = blocks[l][t];
                double term1 = std::pow(P_cell * cfg.tau * traces[l](t) * blk.A5(t), 2) *
                               tr_xp(t);
                double diag_sum = 0.0, cross_sum = 0.0;
                for (int p = 0; p < K; ++p)
                {
                    diag_sum += blk.A5(p) * blk.A5(p) * tr_xp(p) * traces[l](p);
                    for (int m = 0; m < K; ++m)
                        if (m != p)
                            cross_sum += blk.A5(p) * blk.A5(m) *
                                         tr_prod(RxR[p], corr.R_user[l][l][m]);
                }
                res.c(l - 1, t, k) =
                    term1 + P_cell * cfg.tau * cfg.N0 * (diag_sum + cross_sum);
            }
        }
    }

    res.gamma_bar = theorem2_gamma_at(res, cfg.P, cfg.N0d);
    res.R_sec_ach = theorem2_secrecy_at(res, cfg.P, cfg.N0d);
    return res;
}

arma::vec theorem2_gamma_at(const Theorem2Result& terms, double P, double N0d)
{
    const int K = static_cast<int>(terms.a2.n_elem);
    const int L = static_cast<int>(terms.a1.n_rows) - 1;
    arma::vec gamma(K);
    for (int k = 0; k < K; ++k)
    {
        double interference = 0.0;
        for (int t = 0; t < K; ++t)
            if (t != k)
                interference += terms.b(t, k) / terms.a1(0, t);
        for (int l = 1; l <= L; ++l)
            for (int t = 0; t < K; ++t)
                interference += terms.c(l - 1, t, k) / terms.a1(l, t);
        gamma(k) = P * terms.a2(k) / (terms.a1(0, k) * (N0d + P * interference));
    }
    return gamma;
}

double theorem2_secrecy_at(const Theorem2Result& terms, double P, double N0d)
{
    arma::vec gamma = theorem2_gamma_at(terms, P, N0d);
    double total = 0.0;
    for (arma::uword k = 0; k < gamma.n_elem; ++k)
        total += std::log2(1.0 + gamma(k));
    return total;
}

double theorem2_gamma(const CorrelationSet& corr, const SystemConfig& cfg, int k)
{
    return theorem2(corr, cfg).gamma_bar(k);
}

double theorem2_secrecy(const CorrelationSet& corr, const SystemConfig& cfg)
{
    return theorem2(corr, cfg).R_sec_ach;
}

IidBetas IidBetas::standard_model(const SystemConfig& cfg)
{
    IidBetas betas;
    betas.own.ones(cfg.L + 1, cfg.K);
    betas.cross0.set_size(cfg.L + 1, cfg.K);
    betas.cross0.fill(cfg.beta);
    betas.cross0.row(0).ones();
    return betas;
}

arma::vec theorem3_gamma(const SystemConfig& cfg, const IidBetas& betas)
{
    const int L = cfg.L, K = cfg.K;
    const double N_t = cfg.N_t, tau = cfg.tau, N0 = cfg.N0, P0 = cfg.P0, P_I = cfg.P_l;
    if (static_cast<int>(betas.own.n_rows) != L + 1 || static_cast<int>(betas.own.n_cols) != K)
        throw std::invalid_argument("theorem3_gamma: betas shape must be (L+1) x K");
    for (arma::uword i = 0; i < betas.own.n_elem; ++i)
        if (!(betas.own(i) > 0.0) || !(betas.cross0(i) > 0.0))
            throw std::invalid_argument("theorem3_gamma: betas must be positive");

    arma::vec gamma(K);
    for (int k = 0; k < K; ++k)
    {
        double b0k = betas.own(0, k);
        double a1 = (P0 * tau * std::pow(b0k * N_t + b0k * (K - 1), 2) +
                     N0 * (N_t * b0k + (K - 1) * b0k)) /
                    (P0 * tau * b0k * (N_t + K - 1) + K * N0);

        double sum2 = 0.0;
        for (int t = 0; t < K; ++t)
        {
            if (t == k)
                continue;
            double b0t = betas.own(0, t);
            sum2 += (P0 * tau * N_t * b0k * b0t + N0 * N_t * b0k) /
                    (P0 * tau * b0t * (N_t + K - 1) + K * N0);
        }

        double sum3 = 0.0;
        for (int l = 1; l <= L; ++l)
            for (int t = 0; t < K; ++t)
            {
                double blk = betas.cross0(l, k); // beta_lk^0
                double blt = betas.own(l, t);    // beta_lt^l
                sum3 += (P_I * tau * N_t * blk * blt +
                         blk * N0 * (K + K * (K - 1) / N_t)) /
                        (P_I * tau * blt * (N_t + K - 1) + K * N0);
            }

        gamma(k) = cfg.P * a1 / (cfg.N0d + cfg.P * sum2 + cfg.P * sum3);
    }
    return gamma;
}

double theorem3_secrecy(const SystemConfig& cfg, const IidBetas& betas)
{
    arma::vec gamma = theorem3_gamma(cfg, betas);
    double total = 0.0;
    for (arma::uword k = 0; k < gamma.n_elem; ++k)
        total += std::log2(1.0 + gamma(k));
    return total;
}

double corollary1_rate(const SystemConfig& cfg, double beta01)
{
    if (cfg.L != 0 || cfg.K != 1)
        throw std::invalid_argument("corollary1_rate: requires a single-cell single-user config");
    if (!(beta01 > 0.0))
        throw std::invalid_argument("corollary1_rate: beta must be positive");
    return std::log2(1.0 + cfg.P * cfg.N_t * beta01 / cfg.N0d);
}

} // namespace secmimo
