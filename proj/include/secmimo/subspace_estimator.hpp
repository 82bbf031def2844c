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
#include "secmimo/common.hpp"
#include "secmimo/system_config.hpp"
#include "secmimo/uplink_frame.hpp"

#include <vector>

namespace secmimo
{

/// Result of the power-ordered eigenspace selection at one BS. V_eq is
/// stored K x N_t with orthonormal rows; row k is the conjugate transpose
/// of the eigenvector at ascending position N_t - M + i_k. The same
/// orientation is used for projection and precoding, so eigenvector phases
/// cancel end to end.
struct SubspaceSelection
{
    arma::vec eigenvalues;          // N_t, ascending
    arma::cx_mat eigenvectors;      // N_t x N_t, columns match eigenvalues
    arma::vec theta;                // M theoretical signal levels, ascending
    std::vector<int> user_indices;  // K zero-based positions into theta
    arma::cx_mat V_eq;              // K x N_t, V_eq * V_eq^H = I_K
};

/// Projected pilot block and channel estimates for the K users of one cell.
struct ProjectedEstimate
{
    arma::cx_mat Z0p;                      // K x tau
    std::vector<arma::cx_vec> z_despread;  // [k], length K
    std::vector<arma::cx_vec> h_eq;        // [k], true projection V_eq * h
    std::vector<arma::cx_vec> h_hat;       // [k], MMSE estimate
};

/// S = Y0 * Y0^H / (T * N_t); Hermitian PSD.
arma::cx_mat sample_covariance(const arma::cx_mat& Y0, int T, int N_t);

/// Eigendecomposition with ascending eigenvalues and orthonormal columns.
void eig_ascending(const arma::cx_mat& S, arma::vec& eigenvalues, arma::cx_mat& eigenvectors);

struct PowerLevels
{
    arma::vec theta;               // M ascending
    std::vector<int> user_indices; // K zero-based positions of cell-m users
};

/// Theoretical signal-eigenvalue magnitudes seen by BS m: the own-cell
/// values P_m tr(R_mk^m), the cross-cell values P_l tr(R_lk^m), and the
/// eavesdropper values Lambda_i(m) scaled by the attack's per-mode sample
/// power (artificial noise splits Pe/N_e over the data phase; the rank-one
/// pilot attack adds Pe*tau/T on the dominant mode). Sorted ascending with
/// a stable tie rule so equal user levels occupy contiguous positions.
PowerLevels theoretical_power_levels(const SystemConfig& cfg, const CorrelationSet& corr, int m);

/// Picks the eigenvectors at ascending positions N_t - M + i_k.
SubspaceSelection select_subspace(const arma::vec& eigenvalues, const arma::cx_mat& eigenvectors,
                                  const PowerLevels& levels, int M);

/// Z0p = V_eq * Y_p and per-user despreading z_k = Z0p * conj(w_k).
ProjectedEstimate project_and_despread(const arma::cx_mat& V_eq, const arma::cx_mat& Y_p,
                                       const arma::cx_mat& pilots);

/// MMSE estimate of the projected channel:
///   h_hat = sqrt(P) * C * (N0 I + tau P C)^{-1} * z,  C = V_eq R V_eq^H.
arma::cx_vec mmse_estimate(const arma::cx_mat& V_eq, const arma::cx_mat& R_k,
                           const arma::cx_vec& z_k, double P, int tau, double N0);

/// Sum over users of |h_hat - h_true|^2 / |h_true|^2.
double normalized_mse(const std::vector<arma::cx_vec>& h_hat,
                      const std::vector<arma::cx_vec>& h_true);

/// Full Theorem-1 pipeline at BS m: sample covariance of [Y_p Y_d],
/// ascending eigendecomposition, subspace selection, despreading, and the
/// MMSE estimates of the cell-m user channels.
struct CellEstimate
{
    SubspaceSelection subspace;
    ProjectedEstimate projection;
};
CellEstimate estimate_cell(const SystemConfig& cfg, const CorrelationSet& corr,
                           const ChannelRealization& chan, const UplinkFrame& frame, int m);

} // namespace secmimo
