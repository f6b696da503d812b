"""Gaussian-mixture input design and the capacity bound it achieves.

A sparsity-constrained input is a mixture: pick pattern i with probability
p_i, then send a zero-mean complex Gaussian with covariance Q_i on it.
The received covariance under pattern i is

    D_i = I + snr * (H E_i) Q_i (H E_i)^H,

and everything of interest is a function of the D_i determinants: the
optimal activation probabilities are proportional to det(D_i), the rate
upper bound is sum p_i log2 det(D_i) plus the pattern entropy, and at the
optimum that bound collapses to log2 sum det(D_i).  All determinant
arithmetic stays in the log domain; with 20 patterns at high SNR the raw
determinants overflow doubles long before the rates get interesting.
"""

from dataclasses import dataclass

import numpy as np

from .channel import EffectiveChannelSet, UnequalRankError
from .linalg import logdet_hpd
from .waterfill import assemble_covariance, waterfill

# Power budget shared by the per-pattern inputs.  The joint constraint
# sum_i p_i tr(Q_i) <= 1 separates: at the optimum every pattern spends
# exactly unit power regardless of its probability.
TOTAL_POWER = 1.0


@dataclass(frozen=True)
class MixtureDesign:
    """Activation probabilities plus per-pattern input covariances."""

    probs: np.ndarray
    covariances: list[np.ndarray]
    snr: float

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        if probs.ndim != 1 or probs.size != len(self.covariances):
            raise ValueError("need one probability per covariance")
        if np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-12:
            raise ValueError("probabilities must be nonnegative and sum to 1")
        joint = sum(p * float(np.real(np.trace(q))) for p, q in zip(probs, self.covariances))
        if joint > TOTAL_POWER + 1e-9:
            raise ValueError(f"joint power {joint:.6g} exceeds the unit budget")
        object.__setattr__(self, "probs", probs)


@dataclass(frozen=True)
class ReceiveCovSet:
    """Received covariances D_i with their cached log2-determinants."""

    matrices: list[np.ndarray]
    logdets: np.ndarray

    def __len__(self) -> int:
        return len(self.matrices)

    @property
    def dim(self) -> int:
        return self.matrices[0].shape[0]


def receive_covariances(eff_set: EffectiveChannelSet, covariances) -> ReceiveCovSet:
    """Form D_i = I + snr * B_i Q_i B_i^H for every pattern.

    ``covariances`` must supply one n_rf x n_rf Hermitian PSD matrix per
    pattern of ``eff_set``.
    """
    if len(covariances) != len(eff_set):
        raise ValueError(
            f"expected {len(eff_set)} covariances, got {len(covariances)}"
        )
    eye = np.eye(eff_set.receive_dim)
    mats = []
    for b, q in zip(eff_set.effective, covariances):
        q = np.asarray(q, dtype=complex)
        if q.shape != (eff_set.n_rf, eff_set.n_rf):
            raise ValueError(f"covariance shape {q.shape} does not match n_rf={eff_set.n_rf}")
        d = eye + eff_set.snr * (b @ q @ b.conj().T)
        mats.append(0.5 * (d + d.conj().T))
    logdets = np.array([logdet_hpd(d) for d in mats])
    return ReceiveCovSet(matrices=mats, logdets=logdets)


def optimal_probs(covset: ReceiveCovSet) -> np.ndarray:
    """Activation probabilities proportional to det(D_i).

    Normalized through a max-shifted exponentiation of the cached
    log-determinants so huge determinants cannot overflow.
    """
    if len(covset) == 0:
        raise ValueError("empty covariance set")
    shifted = covset.logdets - covset.logdets.max()
    w = np.exp2(shifted)
    return w / w.sum()


def capacity_upper_bound(design: MixtureDesign, covset: ReceiveCovSet) -> float:
    """Rate upper bound: mean log-determinant plus pattern entropy (bits)."""
    p = design.probs
    if p.size != len(covset):
        raise ValueError("design and covariance set sizes differ")
    nz = p > 0
    entropy = -float(np.sum(p[nz] * np.log2(p[nz])))
    return float(np.sum(p * covset.logdets)) + entropy


def high_snr_capacity(covset: ReceiveCovSet) -> float:
    """log2 of the summed determinants, via a base-2 log-sum-exp."""
    top = covset.logdets.max()
    return float(top + np.log2(np.sum(np.exp2(covset.logdets - top))))


def optimize_mixture(eff_set: EffectiveChannelSet) -> tuple[MixtureDesign, ReceiveCovSet, float]:
    """Best mixture for an effective channel set.

    Water-fills each pattern's sub-channels under unit power, assembles
    the per-pattern covariances, and sets the activation probabilities
    proportional to the resulting determinants.  Requires every pattern to
    have the same effective rank.

    Returns:
        (design, covset, upper_bound) with the joint power constraint met
        with equality.
    """
    if eff_set.common_rank is None:
        ranks = [s.rank for s in eff_set.svds]
        raise UnequalRankError(
            f"patterns have unequal effective ranks {sorted(set(ranks))}; "
            "no closed-form mixture optimum exists"
        )
    if eff_set.common_rank == 0:
        raise ValueError("all effective channels are zero; nothing to allocate")
    covs = []
    for s in eff_set.svds:
        alloc = waterfill(s.singular_values**2, eff_set.snr, budget=TOTAL_POWER)
        covs.append(assemble_covariance(s, alloc))
    covset = receive_covariances(eff_set, covs)
    probs = optimal_probs(covset)
    design = MixtureDesign(probs=probs, covariances=covs, snr=eff_set.snr)
    return design, covset, capacity_upper_bound(design, covset)
