"""Dense complex linear algebra used throughout the package.

Matrices are plain ``numpy`` arrays of ``complex128``.  Everything here
operates on small dense matrices (a handful of antennas per side), so the
routines favour robustness and exact contracts over speed.  All logarithms
are base 2 so that downstream rates come out in bits.
"""

from dataclasses import dataclass

import numpy as np

# Singular values below RANK_TOL * sigma_max are treated as zero.
RANK_TOL = 1e-10


@dataclass(frozen=True)
class SvdResult:
    """Thin SVD truncated to the numerical rank.

    ``u`` is n_r x m, ``v`` is n_t x m (columns are singular vectors, not the
    conjugate transpose), ``singular_values`` is length m and sorted
    descending, with m the numerical rank.
    """

    u: np.ndarray
    singular_values: np.ndarray
    v: np.ndarray
    rank: int

    def reconstruct(self) -> np.ndarray:
        """Return U diag(s) V^H."""
        return (self.u * self.singular_values) @ self.v.conj().T


def svd(m: np.ndarray) -> SvdResult:
    """Singular value decomposition truncated at the rank tolerance.

    Args:
        m: 2-D array with finite entries.

    Returns:
        SvdResult with singular values above RANK_TOL * sigma_max only.

    Raises:
        ValueError: on non-2-D or non-finite input.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    if s.size and s[0] > 0:
        rank = int(np.count_nonzero(s > RANK_TOL * s[0]))
    else:
        rank = 0
    return SvdResult(
        u=u[:, :rank],
        singular_values=s[:rank],
        v=vh[:rank].conj().T,
        rank=rank,
    )


def is_hermitian(m: np.ndarray, tol: float = 1e-9) -> bool:
    """Check M == M^H up to ``tol`` relative to the largest entry."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    scale = max(1.0, float(np.max(np.abs(m))))
    return bool(np.max(np.abs(m - m.conj().T)) <= tol * scale)


def logdet_hpd(m: np.ndarray) -> float:
    """log2 of the determinant of a Hermitian positive definite matrix.

    Computed from the Cholesky factor, never from an explicit determinant,
    so it stays finite for determinants far beyond float range.

    Raises:
        ValueError: if the input is not Hermitian (to 1e-9, relative) or the
            factorization fails (not positive definite).
    """
    m = np.asarray(m, dtype=complex)
    if not is_hermitian(m):
        raise ValueError("matrix is not Hermitian")
    try:
        chol = np.linalg.cholesky(m)
    except np.linalg.LinAlgError:
        raise ValueError("matrix is not positive definite") from None
    return float(2.0 * np.sum(np.log2(np.real(np.diag(chol)))))


def _psd_factor(cov: np.ndarray) -> np.ndarray:
    """Factor A with A A^H = cov; accepts semidefinite input."""
    try:
        return np.linalg.cholesky(cov)
    except np.linalg.LinAlgError:
        pass
    evals, evecs = np.linalg.eigh(cov)
    floor = -1e-9 * max(1.0, float(evals[-1]))
    if evals[0] < floor:
        raise ValueError("covariance is indefinite")
    return evecs * np.sqrt(np.clip(evals, 0.0, None))


def sample_complex_gaussian(
    mean: np.ndarray,
    cov: np.ndarray,
    count: int,
    seed: int,
) -> np.ndarray:
    """Draw circularly-symmetric complex Gaussian vectors.

    The convention is that real and imaginary parts each carry half the
    variance, so a unit-covariance scalar draw has E|x|^2 = 1.

    Args:
        mean: length-n complex vector.
        cov: n x n Hermitian positive semidefinite covariance.
        count: number of draws (0 gives an empty array).
        seed: identical seeds give bit-identical output.

    Returns:
        ``count x n`` complex array.
    """
    mean = np.asarray(mean, dtype=complex).reshape(-1)
    cov = np.asarray(cov, dtype=complex)
    n = mean.size
    if cov.shape != (n, n):
        raise ValueError(f"covariance shape {cov.shape} does not match mean length {n}")
    if not is_hermitian(cov):
        raise ValueError("covariance is not Hermitian")
    if count < 0:
        raise ValueError("count must be nonnegative")
    factor = _psd_factor(cov)
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    z /= np.sqrt(2.0)
    # Row s is factor @ z[s], so E[x x^H] = factor factor^H = cov.
    return mean + z @ factor.T
