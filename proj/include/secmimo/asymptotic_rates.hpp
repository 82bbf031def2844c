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

#include "secmimo/channel_model.hpp"
#include "secmimo/system_config.hpp"

namespace secmimo
{

/// Diagonal building blocks of the large-system SINR for cell l, user t.
/// All vectors hold the K diagonal entries; the entries are real and
/// non-negative for PSD correlation inputs.
struct ABlock
{
    arma::vec A1; // [p] = tr(R_lp^l R_lt^l) / tr(R_lp^l)
    arma::vec A2; // (N0 I + tau P_cell A1)^{-1}
    arma::vec A3; // A1^2 A2^2
    arma::vec A4; // A3 / tr(R_lp^l)
    arma::vec A5; // A2 A1 / tr(R_lp^l)
};

ABlock build_A_matrices(const CorrelationSet& corr, const SystemConfig& cfg, int l, int t);

/// Closed-form large-system terms and the asymptotic secrecy sum-rate for
/// general correlated fading.
struct Theorem2Result
{
    arma::mat a1;       // (L+1) x K, a_{lt,1}^l
    arma::vec a2;       // K, a_{0k,2}^0
    arma::mat b;        // K x K, b_{0t,k}^0 at (t, k)
    arma::cube c;       // L x K x K, c_{lt,k}^l at (l-1, t, k); empty for L = 0
    arma::vec gamma_bar;
    double R_sec_ach = 0.0; // sum_k log2(1 + gamma_bar_k)
    double P_I = 0.0;       // inter-cell uplink power entering a1 and c
};

Theorem2Result theorem2(const CorrelationSet& corr, const SystemConfig& cfg);
double theorem2_gamma(const CorrelationSet& corr, const SystemConfig& cfg, int k);
double theorem2_secrecy(const CorrelationSet& corr, const SystemConfig& cfg);

/// Re-evaluates gamma_bar / R_sec,ach from stored terms at another
/// downlink operating point (the a/b/c terms do not depend on P or N0d).
arma::vec theorem2_gamma_at(const Theorem2Result& terms, double P, double N0d);
double theorem2_secrecy_at(const Theorem2Result& terms, double P, double N0d);

/// Per-link iid channel gains: own(l, k) = beta_lk^l (towards the serving
/// BS), cross0(l, k) = beta_lk^0 (towards BS 0; row 0 equals own row 0).
struct IidBetas
{
    arma::mat own;
    arma::mat cross0;

    /// Sec. V values: own-cell 1, cross-cell cfg.beta.
    static IidBetas standard_model(const SystemConfig& cfg);
};

arma::vec theorem3_gamma(const SystemConfig& cfg, const IidBetas& betas);
double theorem3_secrecy(const SystemConfig& cfg, const IidBetas& betas);

/// Single-cell single-user large-N_t secrecy rate, log2(1 + P N_t beta / N0d)
/// (the o(N_t) term is dropped). Requires L = 0, K = 1.
double corollary1_rate(const SystemConfig& cfg, double beta01);

} // namespace secmimo
