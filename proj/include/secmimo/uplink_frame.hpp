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

#include <vector>

namespace secmimo
{

/// Transmitted uplink signals of one coherence block plus the received
/// matrices at each assembled BS.
struct UplinkFrame
{
    arma::cx_mat pilots;                                  // tau x K, column k = pilot of user k
    std::vector<std::vector<arma::cx_vec>> user_data;     // [l][k], length T - tau
    arma::cx_mat attack_pilot;                            // N_e x tau, every row = sum of pilots
    arma::cx_mat attack_an;                               // N_e x (T - tau), iid CN(0,1)

    std::vector<arma::cx_mat> Y_p; // [m], N_t x tau (empty when not assembled)
    std::vector<arma::cx_mat> Y_d; // [m], N_t x (T - tau)

    arma::cx_mat Y0(int m) const { return arma::join_rows(Y_p.at(m), Y_d.at(m)); }
};

/// First K columns of the tau-point DFT matrix; columns are pairwise
/// orthogonal with squared norm tau.
arma::cx_mat make_pilots(int K, int tau);

/// Pilot attack W_e = sum_k W_k (every row equals the sum of all pilot
/// sequences) and the artificial-noise block for the data phase.
/// The attack matrices have N_e rows: they multiply the eavesdropper
/// channel from the right in the received-signal model.
struct AttackSignals
{
    arma::cx_mat attack_pilot; // N_e x tau
    arma::cx_mat attack_an;    // N_e x (T - tau)
};
AttackSignals make_attack(const arma::cx_mat& pilots, int N_e, int K, int tau, int T, Rng& rng);

/// Which base stations get their received matrices filled.
enum class AssembleScope
{
    cell0_only, // enough for channel-estimation studies
    all_cells
};

/// Draws user data, attack and noise, and fills Y_p[m] / Y_d[m] for the
/// selected BSs:
///   Y_p^m = sum_k sqrt(P_l) h_lk^m w_k^T + sqrt(Pe/(K*N_e)) H_e^m W_e + N_p^m
///   Y_d^m = sum_k sqrt(P_l) h_lk^m d_lk^T + sqrt(Pe/N_e) H_e^m A + N_d^m
/// with noise columns CN(0, N0*I).
UplinkFrame assemble_received(const SystemConfig& cfg, const ChannelRealization& chan, Rng& rng,
                              AssembleScope scope = AssembleScope::all_cells);

} // namespace secmimo
