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

#include "secmimo/experiment.hpp"
#include "secmimo/uplink_frame.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace secmimo;

namespace
{

py::array_t<std::complex<double>> to_numpy(const arma::cx_mat& m)
{
    py::array_t<std::complex<double>> out({m.n_rows, m.n_cols});
    auto buf = out.mutable_unchecked<2>();
    for (arma::uword i = 0; i < m.n_rows; ++i)
        for (arma::uword j = 0; j < m.n_cols; ++j)
            buf(i, j) = m(i, j);
    return out;
}

py::array_t<double> to_numpy(const arma::vec& v)
{
    py::array_t<double> out(v.n_elem);
    auto buf = out.mutable_unchecked<1>();
    for (arma::uword i = 0; i < v.n_elem; ++i)
        buf(i) = v(i);
    return out;
}

FadingMode mode_from(const std::string& name)
{
    if (name == "correlated")
        return FadingMode::correlated;
    if (name == "iid")
        return FadingMode::iid;
    throw std::invalid_argument("fading mode must be 'correlated' or 'iid'");
}

Scheme scheme_from(const std::string& name)
{
    if (name == "proposed")
        return Scheme::proposed;
    if (name == "contaminated_mf")
        return Scheme::contaminated_mf;
    throw std::invalid_argument("scheme must be 'proposed' or 'contaminated_mf'");
}

py::dict evaluation_to_dict(const SecrecyEvaluation& ev)
{
    py::dict d;
    d["secrecy_rate"] = ev.R_sec;
    d["secrecy_rate_se"] = ev.R_sec_trial_se;
    d["rate_user"] = to_numpy(ev.rate_user);
    d["rate_se"] = to_numpy(ev.rate_se);
    d["c_eve"] = to_numpy(ev.c_eve);
    d["c_eve_se"] = to_numpy(ev.c_eve_se);
    d["gamma_mean"] = to_numpy(ev.gamma_mean);
    d["mse"] = ev.mse_mean;
    d["eve_projection"] = ev.eve_proj_mean;
    d["trials"] = ev.trials;
    d["resampled"] = ev.resampled;
    return d;
}

} // namespace

PYBIND11_MODULE(_secmimo, m)
{
    m.doc() = "Link-level simulator for secure massive MIMO under pilot-contamination attacks";

    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init<>())
        .def_readwrite("L", &SystemConfig::L)
        .def_readwrite("K", &SystemConfig::K)
        .def_readwrite("N_t", &SystemConfig::N_t)
        .def_readwrite("N_e", &SystemConfig::N_e)
        .def_readwrite("T", &SystemConfig::T)
        .def_readwrite("tau", &SystemConfig::tau)
        .def_readwrite("P0", &SystemConfig::P0)
        .def_readwrite("P_l", &SystemConfig::P_l)
        .def_readwrite("Pe", &SystemConfig::Pe)
        .def_readwrite("P", &SystemConfig::P)
        .def_readwrite("N0", &SystemConfig::N0)
        .def_readwrite("N0d", &SystemConfig::N0d)
        .def_readwrite("beta", &SystemConfig::beta)
        .def_readwrite("theta_b", &SystemConfig::theta_b)
        .def_readwrite("sigma", &SystemConfig::sigma_as)
        .def_property_readonly("rho", &SystemConfig::rho)
        .def_property_readonly("snr_db", &SystemConfig::snr_db)
        .def_property_readonly("M", &SystemConfig::M)
        .def("validate", &SystemConfig::validate)
        .def("__repr__", [](const SystemConfig& c) { return serialize_config(c); });

    m.def("load_config", &load_config, py::arg("path"));
    m.def("parse_config", &parse_config, py::arg("json_text"));
    m.def("serialize_config", &serialize_config, py::arg("config"));

    py::class_<CorrelationSet>(m, "CorrelationSet")
        .def_readonly("L", &CorrelationSet::L)
        .def_readonly("K", &CorrelationSet::K)
        .def_readonly("N_t", &CorrelationSet::N_t)
        .def_readonly("N_e", &CorrelationSet::N_e)
        .def("R_user",
             [](const CorrelationSet& c, int p, int l, int k)
             { return to_numpy(c.R_user.at(p).at(l).at(k)); },
             py::arg("p"), py::arg("l"), py::arg("k"))
        .def("R_eve_tx",
             [](const CorrelationSet& c, int p) { return to_numpy(c.R_eve_tx.at(p)); },
             py::arg("p"))
        .def("R_eve_rx",
             [](const CorrelationSet& c, int p) { return to_numpy(c.R_eve_rx.at(p)); },
             py::arg("p"))
        .def("eve_eigenvalues",
             [](const CorrelationSet& c, int p) { return to_numpy(c.Lambda_e.at(p)); },
             py::arg("p"));

    m.def("laplacian_pas", &laplacian_pas, py::arg("theta"), py::arg("mean_aoa"),
          py::arg("sigma"));
    m.def("ula_correlation",
          [](int N_t, double theta_b, double mean_aoa, double sigma, double trace_target)
          { return to_numpy(ula_correlation(N_t, theta_b, mean_aoa, sigma, trace_target)); },
          py::arg("N_t"), py::arg("theta_b"), py::arg("mean_aoa"), py::arg("sigma"),
          py::arg("trace_target"));
    m.def("exp_correlation",
          [](int N_e, double phi) { return to_numpy(exp_correlation(N_e, phi)); },
          py::arg("N_e"), py::arg("phi"));
    m.def("build_correlation_set",
          [](const SystemConfig& cfg, const std::string& mode, std::uint64_t seed)
          { return build_correlation_set(cfg, mode_from(mode), seed); },
          py::arg("config"), py::arg("mode"), py::arg("seed"));

    m.def("make_pilots", [](int K, int tau) { return to_numpy(make_pilots(K, tau)); },
          py::arg("K"), py::arg("tau"));

    m.def("run_montecarlo",
          [](const SystemConfig& cfg, const CorrelationSet& corr, const std::string& scheme,
             int trials, std::uint64_t seed) {
              return evaluation_to_dict(
                  run_montecarlo(cfg, corr, scheme_from(scheme), trials, seed));
          },
          py::arg("config"), py::arg("corr"), py::arg("scheme") = "proposed",
          py::arg("trials") = 50, py::arg("seed") = 1);

    m.def("theorem2_gamma",
          [](const CorrelationSet& corr, const SystemConfig& cfg)
          { return to_numpy(theorem2(corr, cfg).gamma_bar); },
          py::arg("corr"), py::arg("config"));
    m.def("theorem2_secrecy", &theorem2_secrecy, py::arg("corr"), py::arg("config"));
    m.def("theorem3_gamma",
          [](const SystemConfig& cfg)
          { return to_numpy(theorem3_gamma(cfg, IidBetas::standard_model(cfg))); },
          py::arg("config"));
    m.def("theorem3_secrecy",
          [](const SystemConfig& cfg)
          { return theorem3_secrecy(cfg, IidBetas::standard_model(cfg)); },
          py::arg("config"));
    m.def("corollary1_rate", &corollary1_rate, py::arg("config"), py::arg("beta01") = 1.0);

    m.def("list_presets",
          []
          {
              py::list out;
              for (const auto& p : list_presets())
              {
                  py::dict d;
                  d["id"] = p.id;
                  d["description"] = p.description;
                  out.append(d);
              }
              return out;
          });

    m.def("run_experiment",
          [](const std::string& figure, int trials, std::uint64_t seed, int scale, bool full,
             const std::string& out)
          {
              ExperimentSpec spec;
              spec.figure = figure;
              spec.trials = trials;
              spec.seed = seed;
              spec.scale = scale;
              spec.full = full;
              spec.out = out;
              ResultTable table = run_experiment(spec);
              py::list rows;
              for (const auto& r : table.rows)
              {
                  py::dict d;
                  d["sweep_value"] = r.sweep_value;
                  d["scheme"] = r.scheme;
                  d["metric"] = r.metric;
                  d["mean"] = r.mean;
                  d["std_error"] = r.std_error;
                  d["trials"] = r.trials;
                  rows.append(d);
              }
              return rows;
          },
          py::arg("figure"), py::arg("trials") = 50, py::arg("seed") = 1, py::arg("scale") = 1,
          py::arg("full") = false, py::arg("out") = "");
}
