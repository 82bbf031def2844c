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

#include <armadillo>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <thread>
#include <vector>

namespace secmimo
{

using cx = std::complex<double>;

/// Mixes a master seed with stream identifiers into an independent seed
/// (splitmix64 finalizer applied to the running hash).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index = 0)
{
    auto mix = [](std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(master) ^ stream) ^ index);
}

/// Deterministic random stream. One instance per trial; never shared
/// between threads.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0)
    {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    double gaussian() { return normal_(engine_); }

    /// Circularly symmetric complex Gaussian with unit variance, CN(0,1).
    cx cgaussian()
    {
        const double s = 1.0 / std::sqrt(2.0);
        double re = normal_(engine_);
        double im = normal_(engine_);
        return cx(re * s, im * s);
    }

    arma::cx_vec cgaussian_vec(arma::uword n)
    {
        arma::cx_vec v(n);
        for (arma::uword i = 0; i < n; ++i)
            v(i) = cgaussian();
        return v;
    }

    arma::cx_mat cgaussian_mat(arma::uword rows, arma::uword cols)
    {
        arma::cx_mat m(rows, cols);
        // column-major fill, fixed draw order
        for (arma::uword j = 0; j < cols; ++j)
            for (arma::uword i = 0; i < rows; ++i)
                m(i, j) = cgaussian();
        return m;
    }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Runs fn(i) for i in [0, n) on a small thread pool. Each index must be
/// independent; results are written into caller-owned slots so the outcome
/// does not depend on the number of workers.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn)
{
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t workers = std::min<std::size_t>(hw == 0 ? 1 : hw, n);
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<std::size_t> next{0};
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&]
        {
            for (;;)
            {
                std::size_t i = next.fetch_add(1);
                if (i >= n)
                    return;
                fn(i);
            }
        });
    for (auto& t : pool)
        t.join();
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

} // namespace secmimo
