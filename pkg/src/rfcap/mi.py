"""Exact rates for Gaussian-mixture inputs.

The mixture's mutual information has no closed form, so it is estimated
by Monte Carlo: draw received vectors from the mixture, average the
negative log-density, and subtract the noise entropy.  A pairwise
determinant formula gives the high-SNR limit of the same quantity and
serves as a cheap cross-check; its error vanishes as the components
separate, so treat it as a diagnostic away from high SNR.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .mixture import MixtureDesign, ReceiveCovSet

LN2 = np.log(2.0)

# Fixed draw granularity: chunk c of a run uses generator seed (seed XOR c),
# so results are bit-identical however the chunks are scheduled.
CHUNK_SIZE = 32768


@dataclass(frozen=True)
class MiEstimate:
    """Monte Carlo mutual information in bits with its standard error."""

    value: float
    std_error: float
    samples: int
    seed: int


def _component_factors(covset: ReceiveCovSet):
    """Cholesky factors and natural-log determinants of every component."""
    factors = []
    lndets = []
    for j, d in enumerate(covset.matrices):
        try:
            chol = np.linalg.cholesky(d)
        except np.linalg.LinAlgError:
            raise ValueError(f"received covariance for pattern {j} is singular") from None
        factors.append(chol)
        lndets.append(2.0 * float(np.sum(np.log(np.real(np.diag(chol))))))
    return factors, np.array(lndets)


def _chunk_neg_log2_density(y, probs, factors, lndets, dim):
    """-log2 of the mixture density at each row of y."""
    logs = np.empty((len(factors), y.shape[0]))
    for j, (chol, lndet) in enumerate(zip(factors, lndets)):
        if probs[j] == 0.0:
            logs[j] = -np.inf
            continue
        w = solve_triangular(chol, y.T, lower=True, check_finite=False)
        quad = np.sum(np.abs(w) ** 2, axis=0)
        logs[j] = np.log(probs[j]) - quad - dim * np.log(np.pi) - lndet
    top = logs.max(axis=0)
    return -(top + np.log(np.sum(np.exp(logs - top), axis=0))) / LN2


def mutual_information_mc(
    design: MixtureDesign,
    covset: ReceiveCovSet,
    samples: int = 100_000,
    seed: int = 0,
) -> MiEstimate:
    """Monte Carlo mutual information of a mixture design, in bits.

    Draws a pattern index from the activation probabilities, then a
    received vector from that pattern's covariance, and averages the
    negative log mixture density; subtracting the noise entropy leaves the
    mutual information.  Densities are evaluated in the log domain from
    precomputed Cholesky factors.

    Args:
        design: activation probabilities (covariances are not needed here
            beyond consistency with ``covset``).
        covset: received covariances matching the design.
        samples: total draws (>= 1).
        seed: nonnegative; fixed seed gives a bit-identical estimate.

    Returns:
        MiEstimate with the estimate and its CLT standard error.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    probs = design.probs
    if probs.size != len(covset):
        raise ValueError("design and covariance set sizes differ")
    factors, lndets = _component_factors(covset)
    dim = covset.dim
    stack = np.stack(factors)

    total = 0.0
    total_sq = 0.0
    noise_entropy = dim * np.log2(np.pi * np.e)
    for chunk_index, start in enumerate(range(0, samples, CHUNK_SIZE)):
        n = min(CHUNK_SIZE, samples - start)
        rng = np.random.default_rng(seed ^ chunk_index)
        idx = rng.choice(probs.size, size=n, p=probs)
        z = rng.standard_normal((n, dim)) + 1j * rng.standard_normal((n, dim))
        z /= np.sqrt(2.0)
        y = np.einsum("sij,sj->si", stack[idx], z)
        t = _chunk_neg_log2_density(y, probs, factors, lndets, dim) - noise_entropy
        total += float(t.sum())
        total_sq += float((t * t).sum())

    mean = total / samples
    if samples > 1:
        var = max(0.0, (total_sq - samples * mean * mean) / (samples - 1))
        std_error = float(np.sqrt(var / samples))
    else:
        std_error = 0.0
    return MiEstimate(value=float(mean), std_error=std_error, samples=samples, seed=seed)


def asymptotic_rate(design: MixtureDesign, covset: ReceiveCovSet) -> float:
    """High-SNR rate from pairwise determinants, in bits.

    Evaluates -sum_i p_i log2(sum_j p_j / det(D_i + D_j)) minus the receive
    dimension, all in the log domain.  The cross terms (j != i) decay with
    SNR, after which this matches :func:`mixture.capacity_upper_bound` at
    the optimal design; for a single component it is exact at any SNR.
    """
    probs = design.probs
    if probs.size != len(covset):
        raise ValueError("design and covariance set sizes differ")
    dim = covset.dim
    n = len(covset)

    pair_logdet = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            s = covset.matrices[i] + covset.matrices[j]
            chol = np.linalg.cholesky(s)
            ld = 2.0 * float(np.sum(np.log2(np.real(np.diag(chol)))))
            pair_logdet[i, j] = ld
            pair_logdet[j, i] = ld

    rate = 0.0
    with np.errstate(divide="ignore"):
        log2p = np.where(probs > 0, np.log2(np.where(probs > 0, probs, 1.0)), -np.inf)
    for i in range(n):
        if probs[i] == 0.0:
            continue
        terms = log2p - pair_logdet[i]
        top = terms.max()
        inner = top + np.log2(np.sum(np.exp2(terms - top)))
        rate -= probs[i] * inner
    return float(rate - dim)
