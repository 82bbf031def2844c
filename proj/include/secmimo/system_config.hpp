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

#include <stdexcept>
#include <string>
#include <vector>

namespace secmimo
{

/// Raised when a configuration violates a model constraint. The message
/// names the violated constraint.
class config_error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Every scalar parameter of a scenario. Immutable after validation and
/// freely shareable across worker threads.
///
/// All powers and noise variances are linear. Cell 0 is the cell of
/// interest; cells 1..L are interfering cells.
struct SystemConfig
{
    int L = 0;       // interfering cells
    int K = 1;       // users per cell
    int N_t = 64;    // BS antennas
    int N_e = 2;     // eavesdropper antennas
    int T = 1024;    // coherence block length (symbols)
    int tau = 64;    // pilot length (symbols)

    double P0 = 10.0;  // uplink power, cell-0 users
    double P_l = 10.0; // uplink power shared by cells 1..L
    double Pe = 0.0;   // eavesdropper total attack power
    double P = 1.0;    // downlink power per stream
    double N0 = 1.0;   // uplink noise variance
    double N0d = 1.0;  // downlink noise variance

    // channel-model scalars (Sec. V setup)
    double beta = 0.1;        // cross-cell trace factor
    double theta_b = 3.14159265358979323846;  // AoA truncation half-width
    double sigma_as = 3.14159265358979323846 / 2.0; // angular spread

    // optional per-cell override of P_l; when non-empty must have L entries
    std::vector<double> P_l_per_cell;

    // derived
    double rho() const { return Pe / (P0 * K); }
    double snr_db() const;
    int M() const { return (L + 1) * K + N_e; }

    /// Uplink power of the users in cell l (l = 0..L).
    double cell_power(int l) const
    {
        if (l == 0)
            return P0;
        if (!P_l_per_cell.empty())
            return P_l_per_cell.at(static_cast<std::size_t>(l - 1));
        return P_l;
    }

    /// Throws config_error naming the violated constraint.
    void validate() const;
};

/// Parses a flat JSON object. Keys match the field names; powers are
/// linear unless the key ends in `_db` (`rho_db` sets Pe = K*P0*10^(rho_db/10),
/// `snr_db` sets P = N0d*10^(snr_db/10)).
SystemConfig load_config(const std::string& path);

/// Same parser on an in-memory JSON document.
SystemConfig parse_config(const std::string& json_text);

/// Serializes to a JSON document that parse_config maps back to an equal config.
std::string serialize_config(const SystemConfig& cfg);

bool operator==(const SystemConfig& a, const SystemConfig& b);

} // namespace secmimo
