"""Water-filling power allocation over parallel sub-channels.

The solver is the exact active-set method: sort the gains descending,
close the water level analytically over each candidate prefix, and keep
the largest prefix whose weakest channel still gets nonnegative power.
No iteration, so the KKT conditions hold to rounding error.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import SvdResult


@dataclass(frozen=True)
class PowerAllocation:
    """Per-subchannel powers plus the water level that produced them.

    ``sigma_sq`` is aligned with the gains passed to :func:`waterfill`
    (not with the internal sorted order) and sums to ``budget``.
    """

    sigma_sq: np.ndarray
    water_level: float
    budget: float

    @property
    def active_count(self) -> int:
        return int(np.count_nonzero(self.sigma_sq > 0))


def waterfill(gains, snr: float, budget: float = 1.0) -> PowerAllocation:
    """Maximize sum log2(1 + snr * gain_j * power_j) over a power budget.

    Args:
        gains: positive squared sub-channel gains (zero gains must be
            excluded upstream by the rank cutoff).
        snr: linear SNR multiplying the gains.
        budget: total power to distribute.

    Returns:
        PowerAllocation with power_j = max(0, level - 1/(snr * gain_j))
        and powers summing to the budget.
    """
    gains = np.asarray(gains, dtype=float)
    if gains.size == 0:
        raise ValueError("gains must be nonempty")
    if np.any(gains <= 0) or not np.all(np.isfinite(gains)):
        raise ValueError("gains must be positive and finite")
    if not snr > 0:
        raise ValueError(f"snr must be positive, got {snr}")
    if not budget > 0:
        raise ValueError(f"budget must be positive, got {budget}")

    order = np.argsort(gains)[::-1]
    inv = 1.0 / (snr * gains[order])  # ascending noise floors
    prefix = np.cumsum(inv)
    # Largest k with level (budget + sum of k floors)/k above the k-th floor.
    k = gains.size
    while k > 1 and (budget + prefix[k - 1]) / k <= inv[k - 1]:
        k -= 1
    level = (budget + prefix[k - 1]) / k

    sigma_sorted = np.zeros(gains.size)
    sigma_sorted[:k] = level - inv[:k]
    sigma = np.zeros(gains.size)
    sigma[order] = sigma_sorted
    return PowerAllocation(sigma_sq=sigma, water_level=float(level), budget=float(budget))


def assemble_covariance(svd_result: SvdResult, alloc: PowerAllocation) -> np.ndarray:
    """Input covariance V diag(powers) V^H from an SVD and an allocation.

    The allocation must have one power per retained singular value; the
    result is Hermitian PSD with trace equal to the allocation budget.
    """
    if alloc.sigma_sq.size != svd_result.rank:
        raise ValueError(
            f"allocation length {alloc.sigma_sq.size} does not match rank {svd_result.rank}"
        )
    v = svd_result.v
    q = (v * alloc.sigma_sq) @ v.conj().T
    return 0.5 * (q + q.conj().T)
