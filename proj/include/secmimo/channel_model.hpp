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

#include "secmimo/common.hpp"
#include "secmimo/system_config.hpp"

#include <string>
#include <vector>

namespace secmimo
{

enum class FadingMode
{
    correlated,
    iid
};

/// All long-term spatial statistics of one scenario. Indexing convention:
/// R_user[p][l][k] is the correlation matrix of the channel between user k
/// of cell l and the BS of cell p (N_t x N_t). R_eve_tx[p] / R_eve_rx[p]
/// describe the Kronecker factors of the eavesdropper's channel towards
/// the BS of cell p.
///
/// Immutable after construction; square roots are precomputed so sampling
/// can run on many threads without touching shared state.
struct CorrelationSet
{
    int L = 0, K = 0, N_t = 0, N_e = 0;

    std::vector<std::vector<std::vector<arma::cx_mat>>> R_user;      // [p][l][k]
    std::vector<std::vector<std::vector<arma::cx_mat>>> R_user_sqrt; // [p][l][k]

    std::vector<arma::cx_mat> R_eve_tx;      // [p], N_t x N_t
    std::vector<arma::cx_mat> R_eve_tx_sqrt; // [p]
    std::vector<arma::cx_mat> R_eve_rx;      // [p], N_e x N_e
    std::vector<arma::cx_mat> R_eve_rx_sqrt; // [p]

    std::vector<arma::cx_mat> R_E;      // [p], tr(R_eve_tx[p]) * R_eve_rx[p]
    std::vector<arma::vec> Lambda_e;    // [p], ascending eigenvalues of R_E[p]
};

/// One coherence block of channel draws. h_user[p][l][k] is the channel
/// between user k of cell l and the BS of cell p; H_eve[p] the N_t x N_e
/// eavesdropper channel towards the BS of cell p.
struct ChannelRealization
{
    std::vector<std::vector<std::vector<arma::cx_vec>>> h_user;
    std::vector<arma::cx_mat> H_eve;

    /// Stacked cell-p-user channels at BS p0: columns h_{l k}^{p0}.
    arma::cx_mat stack_users(int p0, int l) const;
};

/// Truncated Laplacian power angle spectrum, evaluated at theta.
double laplacian_pas(double theta, double mean_aoa, double sigma);

/// Half-wavelength ULA correlation matrix: PAS-weighted average of the
/// steering phase exp(j*pi*(m-n)*sin(theta)) over [mean_aoa - theta_b,
/// mean_aoa + theta_b], scaled so tr(R) = trace_target. PSD by
/// construction (positive quadrature weights).
arma::cx_mat ula_correlation(int N_t, double theta_b, double mean_aoa, double sigma,
                             double trace_target);

/// Exponential correlation model, entries phi^|i-j|, phi in [0,1).
arma::cx_mat exp_correlation(int N_e, double phi);

/// Builds every correlation matrix of a scenario. Correlated mode draws a
/// mean AoA per link (uniform on (-pi, pi]) and an exponential-model phi
/// per BS; iid mode uses beta-scaled identities. Deterministic in the seed.
CorrelationSet build_correlation_set(const SystemConfig& cfg, FadingMode mode,
                                     std::uint64_t seed);

/// iid correlation set with explicit per-link factors: beta_user[p][l][k]
/// scales R_user[p][l][k] = beta*I, beta_eve[p] scales R_eve_tx[p].
/// R_eve_rx[p] = I. Used for formula cross-checks.
CorrelationSet build_iid_correlation_set(const SystemConfig& cfg,
                                         const std::vector<std::vector<std::vector<double>>>& beta_user,
                                         const std::vector<double>& beta_eve);

/// Draws one coherence block: h = R^(1/2) g and H_e = Rt^(1/2) G Rr^(1/2)
/// with g, G standard circular complex Gaussian.
ChannelRealization sample_channels(const CorrelationSet& corr, Rng& rng);

/// Hermitian PSD square root via eigendecomposition; negative eigenvalues
/// from rounding are clamped at zero. Throws if the matrix is materially
/// non-PSD.
arma::cx_mat psd_sqrt(const arma::cx_mat& R);

/// Regression-test container dump (format: "json" row-major [re, im]
/// pairs, or "bin" little-endian doubles). load_correlation_set inverts it.
void dump_correlation_set(const CorrelationSet& corr, const std::string& path,
                          const std::string& format = "json");
CorrelationSet load_correlation_set(const std::string& path, const std::string& format = "json");

} // namespace secmimo
