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

#include "secmimo/subspace_estimator.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace secmimo
{

arma::cx_mat sample_covariance(const arma::cx_mat& Y0, int T, int N_t)
{
    if (T < 1)
        throw std::invalid_argument("sample_covariance: T must be >= 1");
    arma::cx_mat S = Y0 * Y0.t() / (static_cast<double>(T) * N_t);
    return 0.5 * (S + S.t());
}

void eig_ascending(const arma::cx_mat& S, arma::vec& eigenvalues, arma::cx_mat& eigenvectors)
{
    if (!S.is_finite())
        throw std::runtime_error("eig_ascending: input has non-finite entries");
    if (!arma::eig_sym(eigenvalues, eigenvectors, S))
        throw std::runtime_error("eig_ascending: eigensolver failed");
}

PowerLevels theoretical_power_levels(const SystemConfig& cfg, const CorrelationSet& corr, int m)
{
    const int L = cfg.L, K = cfg.K;
    if (cfg.M() > cfg.N_t)
        throw std::invalid_argument("theoretical_power_levels: M <= N_t violated");

    // insertion order: other-cell users (cell order), own-cell users,
    // eavesdropper; stable sort keeps equal own-cell levels contiguous
    std::vector<double> values;
    std::vector<int> kind; // 1 marks a cell-m user entry
    values.reserve(cfg.M());
    for (int l = 0; l <= L; ++l)
    {
        if (l == m)
            continue;
        for (int k = 0; k < K; ++k)
        {
            values.push_back(cfg.cell_power(l) * arma::trace(corr.R_user[m][l][k]).real());
            kind.push_back(0);
        }
    }
    for (int k = 0; k < K; ++k)
    {
        values.push_back(cfg.cell_power(m) * arma::trace(corr.R_user[m][m][k]).real());
        kind.push_back(1);
    }
    // The attack radiates Pe in total, but its sample-covariance signature
    // splits unevenly: the artificial noise spreads Pe/N_e per receive mode
    // over the data phase only, while the rank-one pilot attack rides on the
    // dominant mode. Each eigenvalue is scaled accordingly (for N_e = 1 this
    // reduces to Pe * Lambda).
    {
        double duty = double(cfg.T - cfg.tau) / cfg.T;
        double an_power = cfg.Pe * duty / cfg.N_e;
        double pilot_power = cfg.Pe * double(cfg.tau) / cfg.T;
        for (int i = 0; i < cfg.N_e; ++i)
        {
            double p = (i == cfg.N_e - 1) ? an_power + pilot_power : an_power;
            values.push_back(p * corr.Lambda_e[m](i));
            kind.push_back(0);
        }
    }

    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    PowerLevels out;
    out.theta.set_size(values.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos)
    {
        out.theta(pos) = values[order[pos]];
        if (kind[order[pos]] == 1)
            out.user_indices.push_back(static_cast<int>(pos));
    }
    return out;
}

SubspaceSelection select_subspace(const arma::vec& eigenvalues, const arma::cx_mat& eigenvectors,
                                  const PowerLevels& levels, int M)
{
    const int N_t = static_cast<int>(eigenvalues.n_elem);
    SubspaceSelection sel;
    sel.eigenvalues = eigenvalues;
    sel.eigenvectors = eigenvectors;
    sel.theta = levels.theta;
    sel.user_indices = levels.user_indices;

    const int K = static_cast<int>(levels.user_indices.size());
    sel.V_eq.set_size(K, N_t);
    for (int k = 0; k < K; ++k)
    {
        int col = N_t - M + levels.user_indices[k];
        if (col < 0 || col >= N_t)
            throw std::out_of_range("select_subspace: eigenvector index out of range");
        sel.V_eq.row(k) = eigenvectors.col(col).t();
    }
    return sel;
}

ProjectedEstimate project_and_despread(const arma::cx_mat& V_eq, const arma::cx_mat& Y_p,
                                       const arma::cx_mat& pilots)
{
    ProjectedEstimate est;
    est.Z0p = V_eq * Y_p;
    const int K = static_cast<int>(pilots.n_cols);
    est.z_despread.resize(K);
    for (int k = 0; k < K; ++k)
        est.z_despread[k] = est.Z0p * arma::conj(pilots.col(k));
    return est;
}

arma::cx_vec mmse_estimate(const arma::cx_mat& V_eq, const arma::cx_mat& R_k,
                           const arma::cx_vec& z_k, double P, int tau, double N0)
{
    arma::cx_mat C = V_eq * R_k * V_eq.t();
    C = 0.5 * (C + C.t());
    arma::cx_mat A = C * (tau * P);
    A.diag() += N0;
    arma::cx_vec x;
    if (!arma::solve(x, A, z_k, arma::solve_opts::no_approx))
        throw std::runtime_error("mmse_estimate: regularized matrix is singular");
    return std::sqrt(P) * (C * x);
}

double normalized_mse(const std::vector<arma::cx_vec>& h_hat,
                      const std::vector<arma::cx_vec>& h_true)
{
    if (h_hat.size() != h_true.size())
        throw std::invalid_argument("normalized_mse: length mismatch");
    double total = 0.0;
    for (std::size_t k = 0; k < h_hat.size(); ++k)
    {
        double denom = std::pow(arma::norm(h_true[k]), 2);
        if (denom == 0.0)
            throw std::invalid_argument("normalized_mse: zero reference norm");
        total += std::pow(arma::norm(h_hat[k] - h_true[k]), 2) / denom;
    }
    return total;
}

CellEstimate estimate_cell(const SystemConfig& cfg, const CorrelationSet& corr,
                           const ChannelRealization& chan, const UplinkFrame& frame, int m)
{
    CellEstimate cell;
    arma::cx_mat S = sample_covariance(frame.Y0(m), cfg.T, cfg.N_t);
    arma::vec eigenvalues;
    arma::cx_mat eigenvectors;
    eig_ascending(S, eigenvalues, eigenvectors);

    PowerLevels levels = theoretical_power_levels(cfg, corr, m);
    cell.subspace = select_subspace(eigenvalues, eigenvectors, levels, cfg.M());

    cell.projection = project_and_despread(cell.subspace.V_eq, frame.Y_p.at(m), frame.pilots);
    double P_m = cfg.cell_power(m);
    cell.projection.h_eq.resize(cfg.K);
    cell.projection.h_hat.resize(cfg.K);
    for (int k = 0; k < cfg.K; ++k)
    {
        cell.projection.h_eq[k] = cell.subspace.V_eq * chan.h_user[m][m][k];
        cell.projection.h_hat[k] = mmse_estimate(cell.subspace.V_eq, corr.R_user[m][m][k],
                                                 cell.projection.z_despread[k], P_m, cfg.tau,
                                                 cfg.N0);
    }
    return cell;
}

} // namespace secmimo
