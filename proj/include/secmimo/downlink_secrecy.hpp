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

#include "secmimo/subspace_estimator.hpp"

#include <string>
#include <vector>

namespace secmimo
{

/// Unit-norm downlink beams, t[l][k] for user k of cell l.
struct PrecoderSet
{
    std::vector<std::vector<arma::cx_vec>> t;
};

enum class Scheme
{
    proposed,         // eigenspace projection + MMSE (data-aided)
    contaminated_mf   // matched filter on the pilot-only LS estimate
};

/// Eavesdropper capability assumed when computing C_k^eve. `practical`
/// treats the co-scheduled streams as noise; `worst_case` lets the
/// eavesdropper cancel every interfering stream (the conservative wiretap
/// assumption used for the attack-contrast experiments).
enum class EveModel
{
    practical,
    worst_case
};

/// t_lk = V_eq^H * h_hat / |h_hat|; unit norm because V_eq has orthonormal
/// rows. Throws on a zero-norm estimate (degenerate trial, caller resamples).
arma::cx_vec make_precoder(const arma::cx_mat& V_eq, const arma::cx_vec& h_hat);

/// Precoders for all cells from their per-cell estimates.
PrecoderSet make_precoders(const std::vector<CellEstimate>& cells);

/// Baseline: matched filter on h_hat_k = Y_p * conj(w_k) / (sqrt(P) tau),
/// which a pilot attack contaminates. Used for contrast experiments only.
std::vector<arma::cx_vec> contaminated_mf_precoder(const arma::cx_mat& Y_p,
                                                   const arma::cx_mat& pilots, double P_cell);

/// SINR of the cell-0 users under the full inter/intra-cell interference:
/// gamma_k = |g_0k,k|^2 / (N0d + sum_{t!=k} |g_0t,k|^2 + sum_l sum_t |g_lt,k|^2)
/// with g_lt,k = sqrt(P) (h_lk^0)^H t_lt.
arma::vec user_sinr(const ChannelRealization& chan, const PrecoderSet& precoders,
                    const SystemConfig& cfg);

/// Ergodic-capacity integrand of the eavesdropper for user k's stream,
/// log2(1 + P t_0k^H H_e^0 Q_k^{-1} (H_e^0)^H t_0k); interference terms in
/// Q_k carry the downlink power P. Under EveModel::worst_case Q_k reduces
/// to N0d*I.
double eve_capacity(const ChannelRealization& chan, const PrecoderSet& precoders,
                    const SystemConfig& cfg, int k, EveModel model = EveModel::practical);

/// sum_k max(0, R_k - C_k)
double secrecy_sum_rate(const arma::vec& R_user, const arma::vec& C_eve);

/// Power-independent per-trial link statistics; the downlink rates for any
/// (P, N0d) derive from these, so an SNR sweep reuses one set of trials.
struct TrialLinkStats
{
    arma::cube gain2;             // (L+1) x K x K : |(h_lk^0)^H t_lt|^2 at slice k
    std::vector<arma::cx_mat> B;  // [l], (H_e^l)^H [t_l1 .. t_lK], N_e x K
    double mse = 0.0;             // cell-0 per-user-mean normalized MSE (proposed only)
    double eve_proj = 0.0;        // |V_eq^0 H_e^0|_F^2 / |H_e^0|_F^2 (proposed only)
    int resamples = 0;
};

struct TrialRecord
{
    int trial;
    int k;
    double gamma;
    double rate;
    double c_eve;
};

/// Ergodic averages over the Monte Carlo trials.
struct SecrecyEvaluation
{
    arma::vec gamma_mean;  // K
    arma::vec rate_user;   // K, mean log2(1+gamma_k)
    arma::vec rate_se;     // K, standard error
    arma::vec c_eve;       // K, mean eavesdropper capacity
    arma::vec c_eve_se;    // K
    double R_sec = 0.0;    // sum_k [E R_k - E C_k]^+
    double R_sec_trial_mean = 0.0; // mean of per-trial clamped sums (diagnostic)
    double R_sec_trial_se = 0.0;
    double mse_mean = 0.0;
    double eve_proj_mean = 0.0;
    int trials = 0;
    int resampled = 0;
    std::vector<TrialRecord> records;
};

/// Runs `trials` independent coherence blocks. Deterministic in
/// (seed, trial index) regardless of thread count. estimation_only skips
/// the downlink bookkeeping of cells 1..L (used by MSE studies).
std::vector<TrialLinkStats> collect_link_stats(const SystemConfig& cfg,
                                               const CorrelationSet& corr, Scheme scheme,
                                               int trials, std::uint64_t seed,
                                               AssembleScope scope = AssembleScope::all_cells);

/// Downlink rates for transmit power P and noise N0d from stored link stats.
SecrecyEvaluation evaluate_rates(const std::vector<TrialLinkStats>& stats, int K, int L,
                                 double P, double N0d,
                                 EveModel model = EveModel::practical);

/// collect_link_stats + evaluate_rates at the config's own (P, N0d).
SecrecyEvaluation run_montecarlo(const SystemConfig& cfg, const CorrelationSet& corr,
                                 Scheme scheme, int trials, std::uint64_t seed,
                                 EveModel model = EveModel::practical);

/// Streams per-trial records as CSV (columns trial,k,gamma_k,rate_k,c_eve_k).
void write_trial_records_csv(const std::vector<TrialRecord>& records, const std::string& path);

} // namespace secmimo
