"""Capacity analysis for MIMO links with fewer RF chains than antennas.

The library models the transmit side as a sparsity constraint: at most
``n_rf`` of the available antennas (or eigen-beams) carry signal at a
time.  The capacity-relevant input is then a Gaussian mixture over the
feasible activation patterns; this package computes the optimized mixture
(water-filled per-pattern covariances and determinant-proportional
activation probabilities), its rate bound, Monte Carlo exact rates, and
the standard scheme comparisons built on top.
"""

__version__ = "0.1.0"

from .channel import (
    BUILTIN_CHANNELS,
    ChannelFileError,
    Connector,
    EffectiveChannelSet,
    RdofError,
    SparsityPattern,
    SystemConfig,
    UnequalRankError,
    build_effective_set,
    builtin_channel,
    channel_gain,
    enumerate_patterns,
    format_channel,
    parse_channel_file,
    parse_channel_text,
    rayleigh_channel,
)
from .linalg import SvdResult, logdet_hpd, sample_complex_gaussian, svd
from .mi import MiEstimate, asymptotic_rate, mutual_information_mc
from .mixture import (
    MixtureDesign,
    ReceiveCovSet,
    capacity_upper_bound,
    high_snr_capacity,
    optimal_probs,
    optimize_mixture,
    receive_covariances,
)
from .report import CapacityReport, report_to_csv, report_to_json, rows_to_csv
from .schemes import (
    Scheme,
    SchemeRate,
    compare_all,
    derive_seed,
    ergodic_compare,
    mixture_rate_high_snr,
    rate_best_selection,
    rate_nonuniform,
    rate_uniform,
    selection_rate_high_snr,
    snr_db_to_linear,
    uniform_design,
    uniform_rate_high_snr,
)
from .waterfill import PowerAllocation, assemble_covariance, waterfill

__all__ = [
    "__version__",
    "BUILTIN_CHANNELS",
    "CapacityReport",
    "ChannelFileError",
    "Connector",
    "EffectiveChannelSet",
    "MiEstimate",
    "MixtureDesign",
    "PowerAllocation",
    "RdofError",
    "ReceiveCovSet",
    "Scheme",
    "SchemeRate",
    "SparsityPattern",
    "SvdResult",
    "SystemConfig",
    "UnequalRankError",
    "asymptotic_rate",
    "assemble_covariance",
    "build_effective_set",
    "builtin_channel",
    "capacity_upper_bound",
    "channel_gain",
    "compare_all",
    "derive_seed",
    "enumerate_patterns",
    "ergodic_compare",
    "format_channel",
    "high_snr_capacity",
    "logdet_hpd",
    "mixture_rate_high_snr",
    "mutual_information_mc",
    "optimal_probs",
    "optimize_mixture",
    "parse_channel_file",
    "parse_channel_text",
    "rate_best_selection",
    "rate_nonuniform",
    "rate_uniform",
    "rayleigh_channel",
    "receive_covariances",
    "report_to_csv",
    "report_to_json",
    "rows_to_csv",
    "sample_complex_gaussian",
    "selection_rate_high_snr",
    "snr_db_to_linear",
    "svd",
    "uniform_design",
    "uniform_rate_high_snr",
    "waterfill",
]
