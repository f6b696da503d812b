"""Command-line harness for the capacity experiments.

Three subcommands:

* ``capacity``: full single-SNR breakdown of the optimized mixture
  (activation probabilities, per-pattern log-determinants, bound, Monte
  Carlo rate) plus every scheme's rate at that SNR;
* ``sweep``: all schemes over an SNR grid for one channel realization;
* ``ergodic``: mean rates over independent Rayleigh draws.

Channels come from a bundled name (h2a, h2b, h53), a plain-text file, or
a seeded Rayleigh draw.  Output is CSV (rate rows only, byte-stable for a
fixed seed) or JSON (full report); sweeps can additionally render the
curves to an image with ``--plot``.

Exit codes: 0 success, 2 channel file parse failure, 3 violated
receive-degrees-of-freedom assumption, 4 patterns without a common rank,
1 any other invalid request.
"""

import argparse
import sys
import time
from dataclasses import dataclass

from . import __version__
from .channel import (
    BUILTIN_CHANNELS,
    ChannelFileError,
    Connector,
    RdofError,
    SystemConfig,
    UnequalRankError,
    builtin_channel,
    build_effective_set,
    parse_channel_file,
    rayleigh_channel,
)
from .mixture import optimize_mixture
from .report import CapacityReport, write_report
from .schemes import Scheme, compare_all, derive_seed, ergodic_compare, snr_db_to_linear

MIN_SAMPLES = 1000


@dataclass
class ExperimentSpec:
    """Parsed and validated description of one experiment run."""

    command: str
    connector: Connector
    n_rf: int
    snr_db_grid: list[float]
    samples: int
    seed: int
    output: str
    format: str
    channel_source: str | None = None
    n_r: int | None = None
    n_t: int | None = None
    n_channels: int = 100
    plot: str | None = None


def parse_snr_grid(text: str) -> list[float]:
    """Parse 'start:step:stop' (dB, inclusive) or a single dB value."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"grid must be start:step:stop, got {text!r}")
        try:
            start, step, stop = (float(p) for p in parts)
        except ValueError:
            raise argparse.ArgumentTypeError(f"grid values must be numbers, got {text!r}") from None
        if step <= 0 or stop < start:
            raise argparse.ArgumentTypeError("grid needs step > 0 and stop >= start")
        grid = []
        value = start
        while value <= stop + 1e-9:
            grid.append(round(value, 9))
            value += step
        return grid
    try:
        return [float(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad SNR value {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rfcap",
        description="MIMO capacity experiments under an RF-chain sparsity constraint",
    )
    parser.add_argument("--version", action="version", version=f"rfcap {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_plot: bool):
        p.add_argument("--connector", choices=[c.value for c in Connector], default="switch")
        p.add_argument("--nrf", type=int, default=1, help="number of RF chains")
        p.add_argument("--samples", type=int, default=100_000, help="Monte Carlo sample count")
        p.add_argument("--seed", type=int, default=0, help="base seed; fixes all randomness")
        p.add_argument("-o", "--output", default="-", help="output path, '-' for stdout")
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        if with_plot:
            p.add_argument("--plot", default=None, metavar="PATH", help="also render curves to an image")

    cap = sub.add_parser("capacity", help="single-SNR mixture breakdown")
    cap.add_argument("--channel", required=True, help="builtin name, file path, or 'rayleigh'")
    cap.add_argument("--snr-db", type=float, required=True)
    cap.add_argument("--nr", type=int, default=None, help="receive antennas (rayleigh source)")
    cap.add_argument("--nt", type=int, default=None, help="transmit antennas (rayleigh source)")
    common(cap, with_plot=False)

    swp = sub.add_parser("sweep", help="scheme comparison over an SNR grid")
    swp.add_argument("--channel", required=True, help="builtin name, file path, or 'rayleigh'")
    swp.add_argument("--snr", type=parse_snr_grid, default=parse_snr_grid("0:3:30"),
                     help="dB grid as start:step:stop (default 0:3:30)")
    swp.add_argument("--nr", type=int, default=None)
    swp.add_argument("--nt", type=int, default=None)
    common(swp, with_plot=True)

    erg = sub.add_parser("ergodic", help="mean rates over Rayleigh channel draws")
    erg.add_argument("--nr", type=int, required=True)
    erg.add_argument("--nt", type=int, required=True)
    erg.add_argument("--channels", type=int, default=100, help="number of channel draws")
    erg.add_argument("--snr", type=parse_snr_grid, default=parse_snr_grid("0:3:30"))
    common(erg, with_plot=True)
    return parser


def spec_from_args(args: argparse.Namespace) -> ExperimentSpec:
    if args.command == "capacity":
        grid = [args.snr_db]
    else:
        grid = list(args.snr)
    return ExperimentSpec(
        command=args.command,
        connector=Connector(args.connector),
        n_rf=args.nrf,
        snr_db_grid=grid,
        samples=args.samples,
        seed=args.seed,
        output=args.output,
        format=args.format,
        channel_source=getattr(args, "channel", None),
        n_r=getattr(args, "nr", None),
        n_t=getattr(args, "nt", None),
        n_channels=getattr(args, "channels", 100),
        plot=getattr(args, "plot", None),
    )


def _resolve_channel(spec: ExperimentSpec):
    name = spec.channel_source
    if name in BUILTIN_CHANNELS:
        return builtin_channel(name), name
    if name == "rayleigh":
        if spec.n_r is None or spec.n_t is None:
            raise ValueError("--channel rayleigh needs --nr and --nt")
        return rayleigh_channel(spec.n_r, spec.n_t, derive_seed(spec.seed, 97)), "rayleigh"
    return parse_channel_file(name), name


def run(spec: ExperimentSpec) -> CapacityReport:
    """Execute an experiment spec and return its report."""
    if not spec.snr_db_grid:
        raise ValueError("SNR grid must be nonempty")
    if sorted(spec.snr_db_grid) != list(spec.snr_db_grid):
        raise ValueError("SNR grid must be ascending")
    if spec.samples < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} Monte Carlo samples, got {spec.samples}")
    if spec.seed < 0:
        raise ValueError("seed must be nonnegative")

    started = time.perf_counter()
    params = {
        "connector": spec.connector.value,
        "n_rf": spec.n_rf,
        "snr_db_grid": spec.snr_db_grid,
        "samples": spec.samples,
        "seed": spec.seed,
    }
    breakdown = None
    redraws = 0

    if spec.command == "ergodic":
        config = SystemConfig(n_t=spec.n_t, n_r=spec.n_r, n_rf=spec.n_rf, connector=spec.connector)
        rows, redraws = ergodic_compare(
            config, spec.n_channels, spec.snr_db_grid, samples=spec.samples, seed=spec.seed
        )
        params.update({"n_r": spec.n_r, "n_t": spec.n_t, "n_channels": spec.n_channels})
    else:
        h, source = _resolve_channel(spec)
        config = SystemConfig(
            n_t=h.shape[1], n_r=h.shape[0], n_rf=spec.n_rf, connector=spec.connector
        )
        params.update({"channel": source, "n_r": h.shape[0], "n_t": h.shape[1]})
        rows = compare_all(h, config, spec.snr_db_grid, samples=spec.samples, seed=spec.seed)
        if spec.command == "capacity":
            snr_db = spec.snr_db_grid[0]
            eff = build_effective_set(h, config, snr_db_to_linear(snr_db))
            design, covset, c_bar = optimize_mixture(eff)
            nu = next(r for r in rows if r.scheme is Scheme.NONUNIFORM)
            breakdown = {
                "snr_db": snr_db,
                "patterns": [list(p.indices) for p in eff.patterns],
                "activation_probs": [float(p) for p in design.probs],
                "pattern_logdets": [float(x) for x in covset.logdets],
                "upper_bound": c_bar,
                "mc_rate": nu.rate,
                "mc_std_error": nu.std_error,
            }

    metadata = {
        "version": __version__,
        "wall_time_s": round(time.perf_counter() - started, 3),
        "redraws": redraws,
    }
    return CapacityReport(
        command=spec.command, params=params, rows=rows, breakdown=breakdown, metadata=metadata
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = spec_from_args(args)
    try:
        report = run(spec)
    except ChannelFileError as exc:
        print(f"error: channel file: {exc}", file=sys.stderr)
        return 2
    except RdofError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except UnequalRankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    write_report(report, spec.output, spec.format)
    if spec.plot:
        from .plotting import plot_rates

        title = f"{spec.command}: {spec.connector.value}, n_rf={spec.n_rf}"
        plot_rates(report.rows, spec.plot, title=title)
    return 0


if __name__ == "__main__":
    sys.exit(main())
