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

#include "secmimo/channel_model.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace secmimo
{

double laplacian_pas(double theta, double mean_aoa, double sigma)
{
    if (!(sigma > 0.0))
        throw std::invalid_argument("laplacian_pas: sigma must be positive");
    const double s2 = std::sqrt(2.0);
    double norm = s2 * sigma * (1.0 - std::exp(-s2 * arma::datum::pi / sigma));
    return std::exp(-s2 * std::abs(theta - mean_aoa) / sigma) / norm;
}

namespace
{

// Composite-Simpson weights over [a, b] with n subintervals (n even).
// All weights positive, so any correlation matrix assembled from them is a
// nonnegative combination of steering outer products, hence PSD.
void simpson_nodes(double a, double b, int n, std::vector<double>& nodes,
                   std::vector<double>& weights)
{
    nodes.resize(n + 1);
    weights.resize(n + 1);
    double h = (b - a) / n;
    for (int i = 0; i <= n; ++i)
    {
        nodes[i] = a + h * i;
        double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        weights[i] = w * h / 3.0;
    }
}

// g(d) = integral of exp(j*pi*d*sin(theta)) * p(theta) over
// [mean - theta_b, mean + theta_b], split at the PAS kink.
arma::cx_vec steering_moments(int N_t, double theta_b, double mean_aoa, double sigma,
                              int n_half)
{
    std::vector<double> nodes, weights, nodes2, weights2;
    simpson_nodes(mean_aoa - theta_b, mean_aoa, n_half, nodes, weights);
    simpson_nodes(mean_aoa, mean_aoa + theta_b, n_half, nodes2, weights2);
    nodes.insert(nodes.end(), nodes2.begin(), nodes2.end());
    weights.insert(weights.end(), weights2.begin(), weights2.end());

    arma::cx_vec g(N_t, arma::fill::zeros);
    for (std::size_t q = 0; q < nodes.size(); ++q)
    {
        double wp = weights[q] * laplacian_pas(nodes[q], mean_aoa, sigma);
        double s = std::sin(nodes[q]);
        for (int d = 0; d < N_t; ++d)
        {
            double phase = arma::datum::pi * d * s;
            g(d) += wp * cx(std::cos(phase), std::sin(phase));
        }
    }
    return g;
}

} // namespace

arma::cx_mat ula_correlation(int N_t, double theta_b, double mean_aoa, double sigma,
                             double trace_target)
{
    if (N_t < 1)
        throw std::invalid_argument("ula_correlation: N_t must be >= 1");
    if (!(theta_b > 0.0) || theta_b > arma::datum::pi)
        throw std::invalid_argument("ula_correlation: theta_b must lie in (0, pi]");
    if (!(trace_target > 0.0))
        throw std::invalid_argument("ula_correlation: trace_target must be positive");

    // fixed 2048-point composite rule (1024 per side of the PAS kink)
    const int n_half = 1024;
    arma::cx_vec g = steering_moments(N_t, theta_b, mean_aoa, sigma, n_half);
    arma::cx_vec g_coarse = steering_moments(N_t, theta_b, mean_aoa, sigma, n_half / 2);

    double scale = std::abs(g(0));
    double residual = arma::norm(g - g_coarse, "inf") / scale;
    if (residual > 1e-4)
        throw std::runtime_error("ula_correlation: quadrature did not converge, residual " +
                                 std::to_string(residual));

    arma::cx_mat R(N_t, N_t);
    for (int m = 0; m < N_t; ++m)
    {
        R(m, m) = g(0);
        for (int n = 0; n < m; ++n)
        {
            R(m, n) = g(m - n);
            R(n, m) = std::conj(g(m - n));
        }
    }
    R *= trace_target / (N_t * g(0).real());
    return R;
}

arma::cx_mat exp_correlation(int N_e, double phi)
{
    if (N_e < 1)
        throw std::invalid_argument("exp_correlation: N_e must be >= 1");
    if (phi < 0.0 || phi >= 1.0)
        throw std::invalid_argument("exp_correlation: phi must lie in [0, 1)");
    arma::cx_mat R(N_e, N_e);
    for (int i = 0; i < N_e; ++i)
        for (int j = 0; j < N_e; ++j)
            R(i, j) = cx(std::pow(phi, std::abs(i - j)), 0.0);
    return R;
}

arma::cx_mat psd_sqrt(const arma::cx_mat& R)
{
    // scaled-identity fast path (exact for iid sets)
    double s = R(0, 0).real();
    if (s >= 0.0 && arma::norm(R - s * arma::cx_mat(arma::eye<arma::mat>(R.n_rows, R.n_cols),
                                                    arma::zeros<arma::mat>(R.n_rows, R.n_cols)),
                               "inf") == 0.0)
        return std::sqrt(s) * arma::cx_mat(arma::eye<arma::mat>(R.n_rows, R.n_cols),
                                           arma::zeros<arma::mat>(R.n_rows, R.n_cols));

    arma::vec eigval;
    arma::cx_mat eigvec;
    if (!arma::eig_sym(eigval, eigvec, R))
        throw std::runtime_error("psd_sqrt: eigendecomposition failed");
    double top = std::max(eigval.max(), 0.0);
    if (eigval.min() < -1e-10 * std::max(top, 1.0))
        throw std::runtime_error("psd_sqrt: matrix is not positive semidefinite");
    arma::vec clamped = arma::clamp(eigval, 0.0, eigval.max() > 0 ? eigval.max() : 0.0);
    return eigvec * arma::diagmat(arma::sqrt(clamped)) * eigvec.t();
}

namespace
{

void finalize_derived(CorrelationSet& corr)
{
    const int L = corr.L, K = corr.K;
    corr.R_user_sqrt.assign(L + 1, std::vector<std::vector<arma::cx_mat>>(
                                       L + 1, std::vector<arma::cx_mat>(K)));
    for (int p = 0; p <= L; ++p)
        for (int l = 0; l <= L; ++l)
            for (int k = 0; k < K; ++k)
                corr.R_user_sqrt[p][l][k] = psd_sqrt(corr.R_user[p][l][k]);

    corr.R_eve_tx_sqrt.resize(L + 1);
    corr.R_eve_rx_sqrt.resize(L + 1);
    corr.R_E.resize(L + 1);
    corr.Lambda_e.resize(L + 1);
    for (int p = 0; p <= L; ++p)
    {
        corr.R_eve_tx_sqrt[p] = psd_sqrt(corr.R_eve_tx[p]);
        corr.R_eve_rx_sqrt[p] = psd_sqrt(corr.R_eve_rx[p]);
        corr.R_E[p] = arma::trace(corr.R_eve_tx[p]).real() * corr.R_eve_rx[p];
        arma::vec lam;
        arma::cx_mat U;
        if (!arma::eig_sym(lam, U, corr.R_E[p]))
            throw std::runtime_error("build_correlation_set: eigendecomposition of R_E failed");
        corr.Lambda_e[p] = lam; // ascending
    }
}

} // namespace

CorrelationSet build_correlation_set(const SystemConfig& cfg, FadingMode mode,
                                     std::uint64_t seed)
{
    cfg.validate();
    CorrelationSet corr;
    corr.L = cfg.L;
    corr.K = cfg.K;
    corr.N_t = cfg.N_t;
    corr.N_e = cfg.N_e;

    const int L = cfg.L, K = cfg.K, N_t = cfg.N_t, N_e = cfg.N_e;
    corr.R_user.assign(L + 1, std::vector<std::vector<arma::cx_mat>>(
                                  L + 1, std::vector<arma::cx_mat>(K)));
    corr.R_eve_tx.resize(L + 1);
    corr.R_eve_rx.resize(L + 1);

    Rng rng(derive_seed(seed, 0xc0242));
    auto eye_nt = [&](double s)
    {
        return arma::cx_mat(s * arma::eye<arma::mat>(N_t, N_t), arma::zeros<arma::mat>(N_t, N_t));
    };

    if (mode == FadingMode::iid)
    {
        for (int p = 0; p <= L; ++p)
            for (int l = 0; l <= L; ++l)
                for (int k = 0; k < K; ++k)
                    corr.R_user[p][l][k] = eye_nt(p == l ? 1.0 : cfg.beta);
        for (int p = 0; p <= L; ++p)
        {
            corr.R_eve_tx[p] = eye_nt(p == 0 ? 1.0 : cfg.beta);
            corr.R_eve_rx[p] = arma::cx_mat(arma::eye<arma::mat>(N_e, N_e),
                                            arma::zeros<arma::mat>(N_e, N_e));
        }
    }
    else
    {
        auto draw_aoa = [&]() { return arma::datum::pi - 2.0 * arma::datum::pi * rng.uniform(); };
        for (int p = 0; p <= L; ++p)
            for (int l = 0; l <= L; ++l)
                for (int k = 0; k < K; ++k)
                {
                    double trace = (p == l ? 1.0 : cfg.beta) * N_t;
                    corr.R_user[p][l][k] =
                        ula_correlation(N_t, cfg.theta_b, draw_aoa(), cfg.sigma_as, trace);
                }
        for (int p = 0; p <= L; ++p)
        {
            // eavesdropper sits in cell 0; cross-cell traces mirror the user rule
            double trace = (p == 0 ? 1.0 : cfg.beta) * N_t;
            corr.R_eve_tx[p] = ula_correlation(N_t, cfg.theta_b, draw_aoa(), cfg.sigma_as, trace);
        }
        for (int p = 0; p <= L; ++p)
            corr.R_eve_rx[p] = exp_correlation(N_e, rng.uniform());
    }

    finalize_derived(corr);
    return corr;
}

CorrelationSet build_iid_correlation_set(
    const SystemConfig& cfg, const std::vector<std::vector<std::vector<double>>>& beta_user,
    const std::vector<double>& beta_eve)
{
    CorrelationSet corr;
    corr.L = cfg.L;
    corr.K = cfg.K;
    corr.N_t = cfg.N_t;
    corr.N_e = cfg.N_e;
    const int L = cfg.L, K = cfg.K, N_t = cfg.N_t, N_e = cfg.N_e;

    auto eye_nt = [&](double s)
    {
        return arma::cx_mat(s * arma::eye<arma::mat>(N_t, N_t), arma::zeros<arma::mat>(N_t, N_t));
    };

    corr.R_user.assign(L + 1, std::vector<std::vector<arma::cx_mat>>(
                                  L + 1, std::vector<arma::cx_mat>(K)));
    for (int p = 0; p <= L; ++p)
        for (int l = 0; l <= L; ++l)
            for (int k = 0; k < K; ++k)
                corr.R_user[p][l][k] = eye_nt(beta_user.at(p).at(l).at(k));

    corr.R_eve_tx.resize(L + 1);
    corr.R_eve_rx.resize(L + 1);
    for (int p = 0; p <= L; ++p)
    {
        corr.R_eve_tx[p] = eye_nt(beta_eve.at(p));
        corr.R_eve_rx[p] = arma::cx_mat(arma::eye<arma::mat>(N_e, N_e),
                                        arma::zeros<arma::mat>(N_e, N_e));
    }
    finalize_derived(corr);
    return corr;
}

ChannelRealization sample_channels(const CorrelationSet& corr, Rng& rng)
{
    const int L = corr.L, K = corr.K, N_t = corr.N_t, N_e = corr.N_e;
    ChannelRealization chan;
    chan.h_user.assign(L + 1, std::vector<std::vector<arma::cx_vec>>(
                                  L + 1, std::vector<arma::cx_vec>(K)));
    for (int p = 0; p <= L; ++p)
        for (int l = 0; l <= L; ++l)
            for (int k = 0; k < K; ++k)
                chan.h_user[p][l][k] = corr.R_user_sqrt[p][l][k] * rng.cgaussian_vec(N_t);

    chan.H_eve.resize(L + 1);
    for (int p = 0; p <= L; ++p)
        chan.H_eve[p] =
            corr.R_eve_tx_sqrt[p] * rng.cgaussian_mat(N_t, N_e) * corr.R_eve_rx_sqrt[p];
    return chan;
}

arma::cx_mat ChannelRealization::stack_users(int p0, int l) const
{
    const auto& cell = h_user.at(p0).at(l);
    arma::cx_mat H(cell[0].n_elem, cell.size());
    for (std::size_t k = 0; k < cell.size(); ++k)
        H.col(k) = cell[k];
    return H;
}

// ---------------------------------------------------------------------------
// regression-test container

namespace
{

using nlohmann::json;

json mat_to_json(const arma::cx_mat& m)
{
    json rows = json::array();
    for (arma::uword i = 0; i < m.n_rows; ++i)
    {
        json row = json::array();
        for (arma::uword j = 0; j < m.n_cols; ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

arma::cx_mat mat_from_json(const json& rows)
{
    arma::uword nr = rows.size();
    arma::uword nc = nr ? rows[0].size() : 0;
    arma::cx_mat m(nr, nc);
    for (arma::uword i = 0; i < nr; ++i)
        for (arma::uword j = 0; j < nc; ++j)
            m(i, j) = cx(rows[i][j][0].get<double>(), rows[i][j][1].get<double>());
    return m;
}

void mat_to_bin(std::ofstream& out, const arma::cx_mat& m)
{
    std::int64_t dims[2] = {static_cast<std::int64_t>(m.n_rows),
                            static_cast<std::int64_t>(m.n_cols)};
    out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
    for (arma::uword i = 0; i < m.n_rows; ++i)
        for (arma::uword j = 0; j < m.n_cols; ++j)
        {
            double pair[2] = {m(i, j).real(), m(i, j).imag()};
            out.write(reinterpret_cast<const char*>(pair), sizeof(pair));
        }
}

arma::cx_mat mat_from_bin(std::ifstream& in)
{
    std::int64_t dims[2];
    in.read(reinterpret_cast<char*>(dims), sizeof(dims));
    arma::cx_mat m(dims[0], dims[1]);
    for (arma::uword i = 0; i < m.n_rows; ++i)
        for (arma::uword j = 0; j < m.n_cols; ++j)
        {
            double pair[2];
            in.read(reinterpret_cast<char*>(pair), sizeof(pair));
            m(i, j) = cx(pair[0], pair[1]);
        }
    return m;
}

} // namespace

void dump_correlation_set(const CorrelationSet& corr, const std::string& path,
                          const std::string& format)
{
    const int L = corr.L, K = corr.K;
    if (format == "json")
    {
        json j;
        j["L"] = L;
        j["K"] = K;
        j["N_t"] = corr.N_t;
        j["N_e"] = corr.N_e;
        json users = json::array();
        for (int p = 0; p <= L; ++p)
        {
            json pl = json::array();
            for (int l = 0; l <= L; ++l)
            {
                json lk = json::array();
                for (int k = 0; k < K; ++k)
                    lk.push_back(mat_to_json(corr.R_user[p][l][k]));
                pl.push_back(std::move(lk));
            }
            users.push_back(std::move(pl));
        }
        j["R_user"] = std::move(users);
        json tx = json::array(), rx = json::array();
        for (int p = 0; p <= L; ++p)
        {
            tx.push_back(mat_to_json(corr.R_eve_tx[p]));
            rx.push_back(mat_to_json(corr.R_eve_rx[p]));
        }
        j["R_eve_tx"] = std::move(tx);
        j["R_eve_rx"] = std::move(rx);
        std::ofstream out(path);
        if (!out)
            throw std::runtime_error("dump_correlation_set: cannot open " + path);
        out << j.dump();
        return;
    }
    if (format == "bin")
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("dump_correlation_set: cannot open " + path);
        const char magic[4] = {'S', 'M', 'C', 'S'};
        out.write(magic, 4);
        std::int64_t dims[4] = {L, K, corr.N_t, corr.N_e};
        out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
        for (int p = 0; p <= L; ++p)
            for (int l = 0; l <= L; ++l)
                for (int k = 0; k < K; ++k)
                    mat_to_bin(out, corr.R_user[p][l][k]);
        for (int p = 0; p <= L; ++p)
            mat_to_bin(out, corr.R_eve_tx[p]);
        for (int p = 0; p <= L; ++p)
            mat_to_bin(out, corr.R_eve_rx[p]);
        return;
    }
    throw std::invalid_argument("dump_correlation_set: unknown format " + format);
}

CorrelationSet load_correlation_set(const std::string& path, const std::string& format)
{
    CorrelationSet corr;
    if (format == "json")
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("load_correlation_set: cannot open " + path);
        json j = json::parse(in);
        corr.L = j.at("L").get<int>();
        corr.K = j.at("K").get<int>();
        corr.N_t = j.at("N_t").get<int>();
        corr.N_e = j.at("N_e").get<int>();
        const int L = corr.L, K = corr.K;
        corr.R_user.assign(L + 1, std::vector<std::vector<arma::cx_mat>>(
                                      L + 1, std::vector<arma::cx_mat>(K)));
        for (int p = 0; p <= L; ++p)
            for (int l = 0; l <= L; ++l)
                for (int k = 0; k < K; ++k)
                    corr.R_user[p][l][k] = mat_from_json(j["R_user"][p][l][k]);
        corr.R_eve_tx.resize(L + 1);
        corr.R_eve_rx.resize(L + 1);
        for (int p = 0; p <= L; ++p)
        {
            corr.R_eve_tx[p] = mat_from_json(j["R_eve_tx"][p]);
            corr.R_eve_rx[p] = mat_from_json(j["R_eve_rx"][p]);
        }
    }
    else if (format == "bin")
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error("load_correlation_set: cannot open " + path);
        char magic[4];
        in.read(magic, 4);
        if (std::memcmp(magic, "SMCS", 4) != 0)
            throw std::runtime_error("load_correlation_set: bad magic");
        std::int64_t dims[4];
        in.read(reinterpret_cast<char*>(dims), sizeof(dims));
        corr.L = static_cast<int>(dims[0]);
        corr.K = static_cast<int>(dims[1]);
        corr.N_t = static_cast<int>(dims[2]);
        corr.N_e = static_cast<int>(dims[3]);
        const int L = corr.L, K = corr.K;
        corr.R_user.assign(L + 1, std::vector<std::vector<arma::cx_mat>>(
                                      L + 1, std::vector<arma::cx_mat>(K)));
        for (int p = 0; p <= L; ++p)
            for (int l = 0; l <= L; ++l)
                for (int k = 0; k < K; ++k)
                    corr.R_user[p][l][k] = mat_from_bin(in);
        corr.R_eve_tx.resize(L + 1);
        corr.R_eve_rx.resize(L + 1);
        for (int p = 0; p <= L; ++p)
            corr.R_eve_tx[p] = mat_from_bin(in);
        for (int p = 0; p <= L; ++p)
            corr.R_eve_rx[p] = mat_from_bin(in);
    }
    else
    {
        throw std::invalid_argument("load_correlation_set: unknown format " + format);
    }
    finalize_derived(corr);
    return corr;
}

} // namespace secmimo
