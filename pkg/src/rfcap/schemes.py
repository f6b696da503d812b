"""Transmission scheme comparison for RF-chain-limited MIMO links.

Schemes compared, for either connector type:

* best selection: transmit only on the single best pattern (BAS with an
  antenna switch, BBS with a beamformer);
* uniform modulation: activate every pattern with equal probability and
  encode information in the pattern index (USM/UBM), with or without
  water-filling inside each pattern;
* non-uniform modulation: activate patterns with the optimized
  probabilities (NUSM/NUBM), realizing the Gaussian-mixture input;
* upper bound: the mixture rate bound at the optimized design.

Selection and the upper bound are closed form; the modulation schemes are
exact mixture rates and are estimated by Monte Carlo so that the curves
are meaningful at every SNR, not just asymptotically.
"""

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .channel import (
    EffectiveChannelSet,
    RdofError,
    SystemConfig,
    UnequalRankError,
    build_effective_set,
    rayleigh_channel,
)
from .mi import mutual_information_mc
from .mixture import (
    MixtureDesign,
    TOTAL_POWER,
    optimize_mixture,
    receive_covariances,
)
from .waterfill import PowerAllocation, assemble_covariance, waterfill

_SEED_MASK = (1 << 63) - 1

# Guard against pathological configs where nearly every draw violates the
# common-rank hypothesis; continuous fading essentially never does.
MAX_REDRAWS_PER_CHANNEL = 100


class Scheme(Enum):
    """Transmission schemes; definition order fixes report ordering."""

    BEST_SELECTION = "best_selection"
    UNIFORM_NO_PA = "uniform_no_pa"
    UNIFORM_PA = "uniform_pa"
    NONUNIFORM = "nonuniform"
    UPPER_BOUND = "upper_bound"


MC_SCHEMES = (Scheme.UNIFORM_NO_PA, Scheme.UNIFORM_PA, Scheme.NONUNIFORM)


@dataclass(frozen=True)
class SchemeRate:
    """One scheme's spectral efficiency at one SNR point."""

    scheme: Scheme
    snr_db: float
    rate: float
    method: str  # "closed_form" or "monte_carlo"
    std_error: float | None = None


def derive_seed(base: int, *parts: int) -> int:
    """Deterministic per-work-item seed from a base seed and indices."""
    h = base & _SEED_MASK
    for p in parts:
        h = (h * 1_000_003 + p + 0x9E3779B9) & _SEED_MASK
    return h


def snr_db_to_linear(snr_db: float) -> float:
    return float(10.0 ** (snr_db / 10.0))


def _snr_db(eff_set: EffectiveChannelSet) -> float:
    return float(10.0 * np.log10(eff_set.snr))


def rate_best_selection(eff_set: EffectiveChannelSet) -> SchemeRate:
    """Water-filled rate of the single best pattern (ties: lowest index)."""
    rates = []
    for s in eff_set.svds:
        if s.rank == 0:
            rates.append(0.0)
            continue
        gains = s.singular_values**2
        alloc = waterfill(gains, eff_set.snr, budget=TOTAL_POWER)
        rates.append(float(np.sum(np.log2(1.0 + eff_set.snr * gains * alloc.sigma_sq))))
    best = float(np.max(rates))
    return SchemeRate(Scheme.BEST_SELECTION, _snr_db(eff_set), best, "closed_form")


def uniform_design(eff_set: EffectiveChannelSet, with_pa: bool) -> MixtureDesign:
    """Equal activation probabilities with isotropic or water-filled inputs.

    Without power allocation each pattern sends identity-covariance input
    scaled to unit power.  With it, all patterns' sub-channels share one
    water level and the per-pattern budgets average to unit power, so the
    joint constraint is unchanged.
    """
    n = len(eff_set)
    probs = np.full(n, 1.0 / n)
    if not with_pa:
        covs = [np.eye(eff_set.n_rf, dtype=complex) / eff_set.n_rf for _ in range(n)]
        return MixtureDesign(probs=probs, covariances=covs, snr=eff_set.snr)

    if eff_set.common_rank is None:
        ranks = [s.rank for s in eff_set.svds]
        raise UnequalRankError(
            f"patterns have unequal effective ranks {sorted(set(ranks))}; "
            "shared-water-level allocation is undefined"
        )
    pooled = np.concatenate([s.singular_values**2 for s in eff_set.svds])
    joint = waterfill(pooled, eff_set.snr, budget=float(n) * TOTAL_POWER)
    covs = []
    offset = 0
    for s in eff_set.svds:
        part = joint.sigma_sq[offset : offset + s.rank]
        offset += s.rank
        alloc = PowerAllocation(
            sigma_sq=part, water_level=joint.water_level, budget=float(part.sum())
        )
        covs.append(assemble_covariance(s, alloc))
    return MixtureDesign(probs=probs, covariances=covs, snr=eff_set.snr)


def rate_uniform(
    eff_set: EffectiveChannelSet,
    with_pa: bool,
    samples: int = 100_000,
    seed: int = 0,
) -> SchemeRate:
    """Monte Carlo rate of uniform pattern activation."""
    design = uniform_design(eff_set, with_pa)
    covset = receive_covariances(eff_set, design.covariances)
    est = mutual_information_mc(design, covset, samples=samples, seed=seed)
    scheme = Scheme.UNIFORM_PA if with_pa else Scheme.UNIFORM_NO_PA
    return SchemeRate(scheme, _snr_db(eff_set), est.value, "monte_carlo", est.std_error)


def rate_nonuniform(
    eff_set: EffectiveChannelSet,
    samples: int = 100_000,
    seed: int = 0,
) -> SchemeRate:
    """Monte Carlo rate of the optimized Gaussian-mixture input."""
    design, covset, _ = optimize_mixture(eff_set)
    est = mutual_information_mc(design, covset, samples=samples, seed=seed)
    return SchemeRate(Scheme.NONUNIFORM, _snr_db(eff_set), est.value, "monte_carlo", est.std_error)


def selection_rate_high_snr(gains, snr: float) -> float:
    """Single-chain best selection at high SNR: log2(snr * max gain)."""
    return float(np.log2(snr * np.max(np.asarray(gains, dtype=float))))


def uniform_rate_high_snr(gains, snr: float) -> float:
    """Single-chain uniform activation at high SNR.

    Geometric-mean gain plus the pattern-index entropy; for two patterns
    this is log2(2 * snr * sqrt(g1 * g2)).
    """
    gains = np.asarray(gains, dtype=float)
    return float(np.mean(np.log2(snr * gains)) + np.log2(gains.size))


def mixture_rate_high_snr(gains, snr: float) -> float:
    """Single-chain optimized mixture at high SNR: log2(snr * sum of gains).

    Summing the gains is the maximum-ratio-combining effect; it dominates
    both the best single gain and the uniform scheme's geometric mean.
    """
    gains = np.asarray(gains, dtype=float)
    return float(np.log2(snr * gains.sum()))


def compare_all(
    h: np.ndarray,
    config: SystemConfig,
    snr_db_grid,
    samples: int = 100_000,
    seed: int = 0,
) -> list[SchemeRate]:
    """Every scheme at every grid point for one channel realization.

    Rows come back grouped by scheme in enum order, each group sorted by
    ascending SNR.  Monte Carlo evaluations get per-(scheme, SNR) seeds
    derived from ``seed``, so repeat runs are identical.
    """
    snr_db_grid = [float(x) for x in snr_db_grid]
    if not snr_db_grid:
        raise ValueError("SNR grid must be nonempty")
    by_scheme: dict[Scheme, list[SchemeRate]] = {s: [] for s in Scheme}
    for gi, snr_db in enumerate(sorted(snr_db_grid)):
        eff = build_effective_set(h, config, snr_db_to_linear(snr_db))
        best = rate_best_selection(eff)
        by_scheme[Scheme.BEST_SELECTION].append(replace(best, snr_db=snr_db))

        design, covset, c_bar = optimize_mixture(eff)
        by_scheme[Scheme.UPPER_BOUND].append(
            SchemeRate(Scheme.UPPER_BOUND, snr_db, c_bar, "closed_form")
        )
        est = mutual_information_mc(design, covset, samples=samples, seed=derive_seed(seed, 3, gi))
        by_scheme[Scheme.NONUNIFORM].append(
            SchemeRate(Scheme.NONUNIFORM, snr_db, est.value, "monte_carlo", est.std_error)
        )
        for si, with_pa in ((1, False), (2, True)):
            row = rate_uniform(eff, with_pa, samples=samples, seed=derive_seed(seed, si, gi))
            by_scheme[row.scheme].append(replace(row, snr_db=snr_db))
    rows = []
    for scheme in Scheme:
        rows.extend(by_scheme[scheme])
    return rows


def ergodic_compare(
    config: SystemConfig,
    n_channels: int,
    snr_db_grid,
    samples: int = 100_000,
    seed: int = 0,
) -> tuple[list[SchemeRate], int]:
    """Mean rates over independent Rayleigh channel draws.

    Draws violating the common-rank hypothesis (or, with a beamformer,
    lacking enough channel rank) are redrawn and counted; for continuous
    fading they have probability zero and only show up through numerics.

    Returns:
        (rows, redraw_count) with rows ordered as in :func:`compare_all`.
    """
    if n_channels < 1:
        raise ValueError("n_channels must be >= 1")
    snr_db_grid = sorted(float(x) for x in snr_db_grid)
    if not snr_db_grid:
        raise ValueError("SNR grid must be nonempty")

    redraws = 0
    sums: dict[tuple[Scheme, int], float] = {}
    sq_errs: dict[tuple[Scheme, int], float] = {}
    for k in range(n_channels):
        h = None
        for attempt in range(MAX_REDRAWS_PER_CHANNEL):
            candidate = rayleigh_channel(config.n_r, config.n_t, derive_seed(seed, k, attempt))
            try:
                probe = build_effective_set(candidate, config, snr_db_to_linear(snr_db_grid[0]))
                if probe.common_rank is None or probe.common_rank == 0:
                    raise UnequalRankError("degenerate draw")
            except (RdofError, UnequalRankError):
                redraws += 1
                continue
            h = candidate
            break
        if h is None:
            raise RuntimeError(f"could not draw a usable channel after {MAX_REDRAWS_PER_CHANNEL} tries")
        rows = compare_all(h, config, snr_db_grid, samples=samples, seed=derive_seed(seed, k))
        # compare_all emits scheme-major blocks, each in grid order.
        for pos, row in enumerate(rows):
            key = (row.scheme, pos % len(snr_db_grid))
            sums[key] = sums.get(key, 0.0) + row.rate
            if row.std_error is not None:
                sq_errs[key] = sq_errs.get(key, 0.0) + row.std_error**2

    rows = []
    for scheme in Scheme:
        for gi, snr_db in enumerate(snr_db_grid):
            key = (scheme, gi)
            mean = sums[key] / n_channels
            if scheme in MC_SCHEMES:
                se = float(np.sqrt(sq_errs[key])) / n_channels
                rows.append(SchemeRate(scheme, snr_db, mean, "monte_carlo", se))
            else:
                rows.append(SchemeRate(scheme, snr_db, mean, "closed_form"))
    return rows, redraws
