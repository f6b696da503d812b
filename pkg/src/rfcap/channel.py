"""Channel realizations, RF-chain connectors, and sparsity patterns.

The transmitter owns fewer RF chains than antennas, so every transmit
vector is supported on at most ``n_rf`` coordinates.  The connector between
chains and antennas decides the ambient space of those coordinates:

* an antenna switch selects physical antennas, so the effective channel of
  a pattern is the corresponding column subset of H;
* a beamformer maps chains through the right-singular vectors of H, which
  reduces the problem to the diagonal channel of singular values and
  selects coordinates of that.

Either way, a pattern is a strictly increasing index tuple and activating
it turns the link into an ordinary MIMO channel of ``n_rf`` inputs.
"""

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from math import comb

import numpy as np

from .linalg import SvdResult, svd


class Connector(Enum):
    """Hardware between the RF chains and the transmit antennas."""

    SWITCH = "switch"
    BEAMFORMER = "beamformer"


class RdofError(ValueError):
    """Receive degrees of freedom do not exceed the number of RF chains."""


class UnequalRankError(ValueError):
    """Per-pattern effective channels do not share a common rank.

    The closed-form mixture optimum is only defined when every pattern's
    effective channel has the same rank; callers must handle this case.
    """


class ChannelFileError(ValueError):
    """Malformed channel file; carries the offending 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class SystemConfig:
    """Antenna/RF-chain counts plus connector choice.

    The regime of interest is n_rf < n_t and n_rf < n_r.  With a switch the
    receive dimension n_r must strictly exceed n_rf; the analogous check for
    a beamformer needs rank(H) and happens in :func:`build_effective_set`.
    """

    n_t: int
    n_r: int
    n_rf: int
    connector: Connector

    def __post_init__(self):
        if min(self.n_t, self.n_r, self.n_rf) < 1:
            raise ValueError("antenna and RF chain counts must be positive")
        if self.n_rf >= self.n_t:
            raise ValueError(
                f"need fewer RF chains than transmit antennas (n_rf={self.n_rf}, n_t={self.n_t})"
            )
        if self.n_rf >= self.n_r:
            raise RdofError(
                f"receive dimension must exceed RF chain count (n_r={self.n_r}, n_rf={self.n_rf})"
            )


@dataclass(frozen=True)
class SparsityPattern:
    """One feasible activation: which ambient coordinates carry signal."""

    indices: tuple[int, ...]

    def __post_init__(self):
        if len(self.indices) == 0:
            raise ValueError("pattern must select at least one index")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError(f"indices must be strictly increasing, got {self.indices}")
        if self.indices[0] < 0:
            raise ValueError("indices must be nonnegative")

    def matrix(self, ambient_dim: int) -> np.ndarray:
        """Indicator matrix E whose columns are standard basis vectors."""
        if self.indices[-1] >= ambient_dim:
            raise ValueError(
                f"index {self.indices[-1]} out of range for ambient dimension {ambient_dim}"
            )
        e = np.zeros((ambient_dim, len(self.indices)))
        e[list(self.indices), range(len(self.indices))] = 1.0
        return e


def enumerate_patterns(ambient_dim: int, n_rf: int) -> list[SparsityPattern]:
    """All C(ambient_dim, n_rf) patterns in lexicographic order."""
    if n_rf < 1 or n_rf > ambient_dim:
        raise ValueError(f"need 1 <= n_rf <= ambient_dim, got n_rf={n_rf}, ambient={ambient_dim}")
    return [SparsityPattern(c) for c in combinations(range(ambient_dim), n_rf)]


@dataclass(frozen=True)
class EffectiveChannelSet:
    """Every pattern's effective channel at one SNR, with its SVD.

    ``common_rank`` is set when all patterns share the same effective rank
    and is None otherwise.  ``receive_dim`` is the dimension the receiver
    actually observes: n_r for a switch, rank(H) for a beamformer.
    """

    connector: Connector
    n_rf: int
    ambient_dim: int
    receive_dim: int
    snr: float
    patterns: list[SparsityPattern]
    effective: list[np.ndarray]
    svds: list[SvdResult]
    common_rank: int | None = field(default=None)

    def __len__(self) -> int:
        return len(self.patterns)

    def gains(self) -> np.ndarray:
        """Single-column channel gains; only defined for n_rf = 1."""
        return np.array([channel_gain(e) for e in self.effective])


def build_effective_set(h: np.ndarray, config: SystemConfig, snr: float) -> EffectiveChannelSet:
    """Construct all effective channels for a channel matrix and config.

    Args:
        h: n_r x n_t channel matrix.
        config: system configuration; dimensions must match ``h``.
        snr: linear receive SNR (> 0); the received covariance under a
            pattern is I + snr * (H E) Q (H E)^H, i.e. signal amplitudes
            scale with sqrt(snr).

    Raises:
        RdofError: if the receive degrees of freedom (n_r for a switch,
            rank(H) for a beamformer) do not exceed n_rf.
    """
    h = np.asarray(h, dtype=complex)
    if h.shape != (config.n_r, config.n_t):
        raise ValueError(f"channel shape {h.shape} does not match config ({config.n_r}, {config.n_t})")
    if not np.all(np.isfinite(h)):
        raise ValueError("channel has non-finite entries")
    if not snr > 0:
        raise ValueError(f"snr must be positive, got {snr}")

    if config.connector is Connector.SWITCH:
        if config.n_r <= config.n_rf:
            raise RdofError(
                f"receive dimension must exceed RF chain count (n_r={config.n_r}, n_rf={config.n_rf})"
            )
        ambient = config.n_t
        base = h
        receive_dim = config.n_r
    else:
        full = svd(h)
        if full.rank <= config.n_rf:
            raise RdofError(
                f"channel rank must exceed RF chain count (rank={full.rank}, n_rf={config.n_rf})"
            )
        ambient = full.rank
        base = np.diag(full.singular_values).astype(complex)
        receive_dim = full.rank

    patterns = enumerate_patterns(ambient, config.n_rf)
    effective = [base[:, list(p.indices)] for p in patterns]
    svds = [svd(e) for e in effective]
    ranks = {s.rank for s in svds}
    common = ranks.pop() if len(ranks) == 1 else None
    return EffectiveChannelSet(
        connector=config.connector,
        n_rf=config.n_rf,
        ambient_dim=ambient,
        receive_dim=receive_dim,
        snr=float(snr),
        patterns=patterns,
        effective=effective,
        svds=svds,
        common_rank=common,
    )


def rayleigh_channel(n_r: int, n_t: int, seed: int) -> np.ndarray:
    """i.i.d. unit-variance complex Gaussian channel draw, fixed by seed."""
    if n_r < 1 or n_t < 1:
        raise ValueError("channel dimensions must be positive")
    rng = np.random.default_rng(seed)
    h = rng.standard_normal((n_r, n_t)) + 1j * rng.standard_normal((n_r, n_t))
    return h / np.sqrt(2.0)


def channel_gain(effective: np.ndarray) -> float:
    """Squared norm of a single-column effective channel.

    Per-pattern scalar gains only make sense with one RF chain; wider
    effective channels need the full SVD instead.
    """
    effective = np.asarray(effective)
    if effective.ndim != 2 or effective.shape[1] != 1:
        raise ValueError(f"expected a single column, got shape {effective.shape}")
    return float(np.sum(np.abs(effective) ** 2))


def pattern_count(ambient_dim: int, n_rf: int) -> int:
    """Number of feasible patterns, C(ambient_dim, n_rf)."""
    return comb(ambient_dim, n_rf)


# Reference channel realizations bundled for the comparison experiments,
# printed at 4-decimal precision.  "h2a"/"h2b" drive the 2x2 single-chain
# comparisons, "h53" the 3x5 two-chain one.
H2A = np.array(
    [
        [-0.0062 + 0.8531j, -0.3000 - 0.4998j],
        [0.1650 + 0.1395j, -1.0391 + 0.8601j],
    ]
)

H2B = np.array(
    [
        [0.1901 + 0.1127j, -1.5972 - 0.3066j],
        [0.6484 - 0.4623j, 0.6096 + 0.2423j],
    ]
)

H53 = np.array(
    [
        [0.2248 + 0.9300j, -1.6193 + 0.1124j, 0.7983 + 1.4626j, 0.7101 - 0.5903j, -1.1416 - 0.5433j],
        [0.6925 + 0.2182j, -0.4773 - 0.7437j, 0.5020 + 0.0908j, 0.5070 + 0.3351j, -0.7329 + 0.3995j],
        [-1.2944 - 1.2016j, 0.2182 - 0.2740j, 1.5437 + 0.1045j, 0.5398 - 0.6127j, 0.1665 - 0.0869j],
    ]
)

BUILTIN_CHANNELS = {"h2a": H2A, "h2b": H2B, "h53": H53}


def builtin_channel(name: str) -> np.ndarray:
    """Look up a bundled channel realization by name."""
    try:
        return BUILTIN_CHANNELS[name].copy()
    except KeyError:
        raise ValueError(
            f"unknown builtin channel {name!r}; available: {sorted(BUILTIN_CHANNELS)}"
        ) from None


def _parse_complex_token(token: str) -> complex:
    """Parse one 'a+bi' style token; raises ValueError when malformed."""
    try:
        value = complex(token.replace("i", "j").replace("I", "j"))
    except ValueError:
        raise ValueError(f"bad complex token {token!r}") from None
    if not np.isfinite(value):
        raise ValueError(f"non-finite entry {token!r}")
    return value


def parse_channel_text(text: str) -> np.ndarray:
    """Parse the plain-text channel format.

    First line is "n_r n_t"; then exactly n_r lines of n_t complex entries
    written as a+bi tokens separated by whitespace.  Anything else raises
    :class:`ChannelFileError` carrying the offending line number.
    """
    lines = text.splitlines()
    if not lines or not lines[0].split():
        raise ChannelFileError(1, "missing 'n_r n_t' header")
    header = lines[0].split()
    if len(header) != 2:
        raise ChannelFileError(1, f"header must be 'n_r n_t', got {lines[0]!r}")
    try:
        n_r, n_t = int(header[0]), int(header[1])
    except ValueError:
        raise ChannelFileError(1, f"header must be two integers, got {lines[0]!r}") from None
    if n_r < 1 or n_t < 1:
        raise ChannelFileError(1, "dimensions must be positive")

    h = np.zeros((n_r, n_t), dtype=complex)
    row = 0
    for lineno, line in enumerate(lines[1:], start=2):
        tokens = line.split()
        if not tokens:
            continue
        if row >= n_r:
            raise ChannelFileError(lineno, f"expected {n_r} rows, found extra data")
        if len(tokens) != n_t:
            raise ChannelFileError(lineno, f"expected {n_t} entries, got {len(tokens)}")
        for col, token in enumerate(tokens):
            try:
                h[row, col] = _parse_complex_token(token)
            except ValueError as exc:
                raise ChannelFileError(lineno, f"column {col + 1}: {exc}") from None
        row += 1
    if row != n_r:
        raise ChannelFileError(len(lines), f"expected {n_r} rows, got {row}")
    return h


def parse_channel_file(path) -> np.ndarray:
    """Read a channel matrix from a file in the plain-text format."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_channel_text(fh.read())


def format_channel(h: np.ndarray) -> str:
    """Render a channel matrix in the plain-text format at 4 decimals.

    Round-trips bit-exactly for matrices whose entries are 4-decimal
    values, which covers the bundled realizations.
    """
    h = np.asarray(h, dtype=complex)
    lines = [f"{h.shape[0]} {h.shape[1]}"]
    for row in h:
        lines.append(" ".join(f"{z.real:.4f}{z.imag:+.4f}i" for z in row))
    return "\n".join(lines) + "\n"
