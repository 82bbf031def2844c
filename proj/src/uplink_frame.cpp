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

#include "secmimo/uplink_frame.hpp"

#include <stdexcept>

namespace secmimo
{

arma::cx_mat make_pilots(int K, int tau)
{
    if (K > tau)
        throw std::invalid_argument("make_pilots: K <= tau violated");
    arma::cx_mat pilots(tau, K);
    for (int k = 0; k < K; ++k)
        for (int t = 0; t < tau; ++t)
        {
            double phase = -2.0 * arma::datum::pi * t * k / tau;
            pilots(t, k) = cx(std::cos(phase), std::sin(phase));
        }
    return pilots;
}

AttackSignals make_attack(const arma::cx_mat& pilots, int N_e, int K, int tau, int T, Rng& rng)
{
    AttackSignals atk;
    arma::cx_vec pilot_sum(tau, arma::fill::zeros);
    for (int k = 0; k < K; ++k)
        pilot_sum += pilots.col(k);

    atk.attack_pilot.set_size(N_e, tau);
    for (int i = 0; i < N_e; ++i)
        atk.attack_pilot.row(i) = pilot_sum.st();

    atk.attack_an = rng.cgaussian_mat(N_e, T - tau);
    return atk;
}

UplinkFrame assemble_received(const SystemConfig& cfg, const ChannelRealization& chan, Rng& rng,
                              AssembleScope scope)
{
    const int L = cfg.L, K = cfg.K, N_t = cfg.N_t, N_e = cfg.N_e, T = cfg.T, tau = cfg.tau;
    if (static_cast<int>(chan.h_user.size()) != L + 1 ||
        static_cast<int>(chan.h_user[0][0][0].n_elem) != N_t ||
        static_cast<int>(chan.H_eve[0].n_cols) != N_e)
        throw std::invalid_argument("assemble_received: channel dimensions do not match config");

    UplinkFrame frame;
    frame.pilots = make_pilots(K, tau);

    // transmitted once, heard by every BS
    frame.user_data.assign(L + 1, std::vector<arma::cx_vec>(K));
    for (int l = 0; l <= L; ++l)
        for (int k = 0; k < K; ++k)
            frame.user_data[l][k] = rng.cgaussian_vec(T - tau);

    AttackSignals atk = make_attack(frame.pilots, N_e, K, tau, T, rng);
    frame.attack_pilot = atk.attack_pilot;
    frame.attack_an = atk.attack_an;

    // stack all user transmissions: rows of S_p are pilot sequences, rows of
    // S_d the data vectors, scaled by the cell power
    const int n_users = (L + 1) * K;
    arma::cx_mat S_p(n_users, tau), S_d(n_users, T - tau);
    for (int l = 0; l <= L; ++l)
    {
        double amp = std::sqrt(cfg.cell_power(l));
        for (int k = 0; k < K; ++k)
        {
            int r = l * K + k;
            S_p.row(r) = amp * frame.pilots.col(k).st();
            S_d.row(r) = amp * frame.user_data[l][k].st();
        }
    }

    const int m_count = (scope == AssembleScope::cell0_only) ? 1 : L + 1;
    frame.Y_p.resize(m_count);
    frame.Y_d.resize(m_count);

    double eve_pilot_amp = cfg.Pe > 0.0 ? std::sqrt(cfg.Pe / (K * N_e)) : 0.0;
    double eve_an_amp = cfg.Pe > 0.0 ? std::sqrt(cfg.Pe / N_e) : 0.0;
    double noise_amp = std::sqrt(cfg.N0);

    for (int m = 0; m < m_count; ++m)
    {
        arma::cx_mat H(N_t, n_users);
        for (int l = 0; l <= L; ++l)
            for (int k = 0; k < K; ++k)
                H.col(l * K + k) = chan.h_user[m][l][k];

        frame.Y_p[m] = H * S_p;
        frame.Y_d[m] = H * S_d;
        if (cfg.Pe > 0.0)
        {
            frame.Y_p[m] += eve_pilot_amp * chan.H_eve[m] * frame.attack_pilot;
            frame.Y_d[m] += eve_an_amp * chan.H_eve[m] * frame.attack_an;
        }
        if (cfg.N0 > 0.0)
        {
            frame.Y_p[m] += noise_amp * rng.cgaussian_mat(N_t, tau);
            frame.Y_d[m] += noise_amp * rng.cgaussian_mat(N_t, T - tau);
        }
    }
    return frame;
}

} // namespace secmimo
