# SPDX-License-Identifier: Apache-2.0
"""Link-level simulator for secure massive MIMO under pilot-contamination attacks.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ._secmimo import (
    ConfigError,
    CorrelationSet,
    SystemConfig,
    build_correlation_set,
    corollary1_rate,
    exp_correlation,
    laplacian_pas,
    list_presets,
    load_config,
    make_pilots,
    parse_config,
    run_experiment,
    run_montecarlo,
    serialize_config,
    theorem2_gamma,
    theorem2_secrecy,
    theorem3_gamma,
    theorem3_secrecy,
    ula_correlation,
)

__all__ = [
    "ConfigError",
    "CorrelationSet",
    "SystemConfig",
    "build_correlation_set",
    "corollary1_rate",
    "exp_correlation",
    "laplacian_pas",
    "list_presets",
    "load_config",
    "make_pilots",
    "parse_config",
    "run_experiment",
    "run_montecarlo",
    "serialize_config",
    "theorem2_gamma",
    "theorem2_secrecy",
    "theorem3_gamma",
    "theorem3_secrecy",
    "ula_correlation",
]

__version__ = "0.1.0"
