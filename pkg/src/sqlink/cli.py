"""Command-line front end: single-link evaluation, parameter sweeps,
Monte Carlo runs and repeater-chain attempt statistics.

Exit codes: 0 success, 2 usage error, 3 failed --check, 4 I/O error.
Parameter precedence: built-in defaults < config file < flags.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass

from . import __version__
from .analytic import LinkFigures, fidelity_small_window_limit, link_figures
from .montecarlo import LinkEstimate, estimate_link
from .params import LinkParams

PARAM_FIELDS = ("alpha", "r", "theta", "eta_sq", "zeta", "p_c")
SWEEP_VARIABLES = ("p_c", "eta_sq", "r", "theta", "zeta", "alpha")

SPEED_OF_LIGHT_FIBER = 2.0e8  # m/s


def eta_from_length(length_km: float, loss_db_per_km: float = 0.17) -> float:
    """Fiber power transmittance eta^2 = 10^(-loss * L / 10)."""
    if length_km < 0.0:
        raise ValueError(f"fiber length must be >= 0, got {length_km!r}")
    if loss_db_per_km < 0.0:
        raise ValueError(f"fiber loss must be >= 0, got {loss_db_per_km!r}")
    return 10.0 ** (-loss_db_per_km * length_km / 10.0)


@dataclass(frozen=True)
class SweepSpec:
    """One swept variable over [start, stop] in uniform steps, with the
    remaining link parameters held fixed."""

    variable: str
    start: float
    stop: float
    step: float
    fixed: LinkParams

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(f"sweep variable must be one of {SWEEP_VARIABLES}, got {self.variable!r}")
        if not self.start <= self.stop:
            raise ValueError(f"sweep requires start <= stop, got {self.start} > {self.stop}")
        if not self.step > 0.0:
            raise ValueError(f"sweep step must be > 0, got {self.step!r}")

    def grid(self) -> list[tuple[float, LinkParams]]:
        points = []
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        for i in range(count):
            value = self.start + i * self.step
            points.append((value, dataclasses.replace(self.fixed, **{self.variable: value})))
        return points


@dataclass(frozen=True)
class RunRecord:
    """Self-describing result of one evaluation: everything needed to
    reproduce the numbers."""

    params: LinkParams
    figures: LinkFigures
    estimate: LinkEstimate | None = None
    seed: int | None = None

    def to_dict(self) -> dict:
        bm, b0, bp = self.figures.b
        record = {
            "tool": "sqlink",
            "version": __version__,
            "seed": self.seed,
            "params": {name: getattr(self.params, name) for name in PARAM_FIELDS},
            "derived": {
                "eta": self.params.eta,
                "d": self.params.d,
                "r_prime": self.params.r_prime,
            },
            "results": {
                "p_s": self.figures.p_s,
                "fidelity": self.figures.fidelity,
                "b_minus": bm,
                "b_zero": b0,
                "b_plus": bp,
            },
            "mc": None,
        }
        if self.estimate is not None:
            est = self.estimate
            record["mc"] = {
                "n": est.n_samples,
                "seed": est.seed,
                "p_s_hat": est.p_s_hat,
                "fidelity_hat": None if math.isnan(est.fidelity_hat) else est.fidelity_hat,
                "std_err_ps": est.std_err_ps,
                "std_err_f": None if math.isnan(est.std_err_f) else est.std_err_f,
                "n_accepted": est.n_accepted,
                "accepted_by_branch": list(est.accepted_by_branch),
            }
        return record

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    @staticmethod
    def params_from_json(text: str) -> LinkParams:
        return LinkParams(**json.loads(text)["params"])


def load_config(path: str) -> dict[str, float]:
    """Flat key=value file; '#' starts a comment, blank lines ignored."""
    values: dict[str, float] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw.rstrip()!r}")
            key, _, text = line.partition("=")
            key = key.strip()
            if key not in PARAM_FIELDS:
                raise ValueError(f"{path}:{lineno}: unknown parameter {key!r}")
            values[key] = float(text.strip())
    return values


def resolve_params(args: argparse.Namespace) -> LinkParams:
    merged: dict[str, float] = {}
    if getattr(args, "config", None):
        merged.update(load_config(args.config))
    for name in PARAM_FIELDS:
        value = getattr(args, name, None)
        if value is not None:
            merged[name] = value
    return LinkParams(**merged)


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _format_record_text(record: RunRecord) -> str:
    params, figures = record.params, record.figures
    bm, b0, bp = figures.b
    lines = [f"{name:<9}= {getattr(params, name)!r}" for name in PARAM_FIELDS]
    lines += [
        f"r_prime  = {params.r_prime:.6f}",
        f"d        = {params.d:.6f}",
        f"P_s      = {figures.p_s:.6f}",
        f"F        = {figures.fidelity:.6f}",
        f"b_-1     = {bm:.6f}",
        f"b_0      = {b0:.6f}",
        f"b_+1     = {bp:.6f}",
    ]
    if record.estimate is not None:
        est = record.estimate
        lines += [
            f"n        = {est.n_samples}",
            f"seed     = {est.seed}",
            f"P_s_hat  = {est.p_s_hat:.6f} +- {est.std_err_ps:.6f}",
            f"F_hat    = {est.fidelity_hat:.6f} +- {est.std_err_f:.6f}",
            f"accepted = {est.n_accepted}",
        ]
    return "\n".join(lines) + "\n"


def _format_record_table(record: RunRecord) -> str:
    params, figures = record.params, record.figures
    bm, b0, bp = figures.b
    header = list(PARAM_FIELDS) + ["ps", "fidelity", "r_prime", "d", "b_minus", "b_zero", "b_plus"]
    row = [getattr(params, name) for name in PARAM_FIELDS]
    row += [figures.p_s, figures.fidelity, params.r_prime, params.d, bm, b0, bp]
    if record.estimate is not None:
        est = record.estimate
        header += ["n", "mc_seed", "ps_hat", "fidelity_hat", "std_err_ps", "std_err_f"]
        row += [est.n_samples, est.seed, est.p_s_hat, est.fidelity_hat, est.std_err_ps, est.std_err_f]
    cells = [f"{v:.12g}" if isinstance(v, float) else str(v) for v in row]
    return ",".join(header) + "\n" + ",".join(cells) + "\n"


def _render(record: RunRecord, fmt: str) -> str:
    if fmt == "record":
        return record.to_json() + "\n"
    if fmt == "table":
        return _format_record_table(record)
    return _format_record_text(record)


def cmd_link(args: argparse.Namespace) -> int:
    params = resolve_params(args)
    record = RunRecord(params=params, figures=link_figures(params))
    _emit(_render(record, args.format), args.out)
    return 0


def _sweep_table(spec: SweepSpec, column: str) -> str:
    rows = [f"{column},ps,fidelity"]
    for value, params in spec.grid():
        figures = link_figures(params)
        rows.append(f"{value:.12g},{figures.p_s:.12g},{figures.fidelity:.12g}")
    return "\n".join(rows) + "\n"


def cmd_fig2(args: argparse.Namespace) -> int:
    fixed = resolve_params(args)
    spec = SweepSpec(variable="p_c", start=args.start, stop=args.stop, step=args.step, fixed=fixed)
    _emit(_sweep_table(spec, column="pc"), args.out)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    fixed = resolve_params(args)
    spec = SweepSpec(variable=args.var, start=args.start, stop=args.stop, step=args.step, fixed=fixed)
    _emit(_sweep_table(spec, column=args.var), args.out)
    return 0


def cmd_mc(args: argparse.Namespace) -> int:
    params = resolve_params(args)
    figures = link_figures(params)
    estimate = estimate_link(params, n=args.n, seed=args.seed, workers=args.workers)
    record = RunRecord(params=params, figures=figures, estimate=estimate, seed=args.seed)
    _emit(_render(record, args.format), args.out)
    if args.check:
        ok_ps = abs(estimate.p_s_hat - figures.p_s) <= 4.0 * estimate.std_err_ps
        ok_f = (
            not math.isnan(estimate.fidelity_hat)
            and abs(estimate.fidelity_hat - figures.fidelity) <= 4.0 * estimate.std_err_f
        )
        if not (ok_ps and ok_f):
            print(
                f"check failed: p_s_hat={estimate.p_s_hat!r} vs {figures.p_s!r}, "
                f"fidelity_hat={estimate.fidelity_hat!r} vs {figures.fidelity!r}",
                file=sys.stderr,
            )
            return 3
    return 0


def cmd_chain_rate(args: argparse.Namespace) -> int:
    base = resolve_params(args)
    eta_sq = eta_from_length(args.spacing_km, args.loss_db_per_km)
    params = dataclasses.replace(base, eta_sq=eta_sq)
    figures = link_figures(params)
    period = args.spacing_km * 1e3 / args.c_fiber + args.t_overhead
    rate = figures.p_s / period if period > 0.0 else math.inf
    rows = ["link,length_km,eta_sq,ps,fidelity,expected_attempts,period_s,rate_hz"]
    for index in range(1, args.n_links + 1):
        rows.append(
            f"{index},{args.spacing_km:.12g},{eta_sq:.12g},{figures.p_s:.12g},"
            f"{figures.fidelity:.12g},{1.0 / figures.p_s:.12g},{period:.12g},{rate:.12g}"
        )
    _emit("\n".join(rows) + "\n", args.out)
    return 0


def _add_param_flags(parser: argparse.ArgumentParser, with_eta: bool = True) -> None:
    group = parser.add_argument_group("link parameters")
    group.add_argument("--alpha", type=float, help="probe amplitude (> 0)")
    group.add_argument("--r", type=float, help="probe squeeze factor (>= 0)")
    group.add_argument("--theta", type=float, help="dispersive phase per node, rad")
    if with_eta:
        group.add_argument("--eta-sq", dest="eta_sq", type=float, help="fiber power transmittance in (0, 1]")
    group.add_argument("--zeta", type=float, help="qubit coherence factor in [0, 1]")
    group.add_argument("--p-c", dest="p_c", type=float, help="homodyne selection half-window (>= 0)")
    group.add_argument("--config", help="key=value file with link parameters")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqlink",
        description="Squeezed-light entanglement link: closed forms, sweeps and Monte Carlo checks.",
    )
    parser.add_argument("--version", action="version", version=f"sqlink {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_link = sub.add_parser("link", help="evaluate one parameter set")
    _add_param_flags(p_link)
    p_link.add_argument("--format", choices=("text", "table", "record"), default="text")
    p_link.add_argument("--out", help="write output to this file instead of stdout")
    p_link.set_defaults(func=cmd_link)

    p_fig2 = sub.add_parser("fig2", help="success/fidelity vs selection window p_c")
    _add_param_flags(p_fig2)
    p_fig2.add_argument("--start", type=float, default=0.02)
    p_fig2.add_argument("--stop", type=float, default=1.0)
    p_fig2.add_argument("--step", type=float, default=0.02)
    p_fig2.add_argument("--out", help="write the CSV here instead of stdout")
    p_fig2.set_defaults(func=cmd_fig2)

    p_sweep = sub.add_parser("sweep", help="sweep one link parameter")
    _add_param_flags(p_sweep)
    p_sweep.add_argument("--var", choices=SWEEP_VARIABLES, required=True)
    p_sweep.add_argument("--start", type=float, required=True)
    p_sweep.add_argument("--stop", type=float, required=True)
    p_sweep.add_argument("--step", type=float, required=True)
    p_sweep.add_argument("--out", help="write the CSV here instead of stdout")
    p_sweep.set_defaults(func=cmd_sweep)

    p_mc = sub.add_parser("mc", help="seeded Monte Carlo estimate")
    _add_param_flags(p_mc)
    p_mc.add_argument("--n", type=int, default=10**6, help="number of samples")
    p_mc.add_argument("--seed", type=int, default=12345)
    p_mc.add_argument("--workers", type=int, default=1)
    p_mc.add_argument("--check", action="store_true", help="exit 3 unless within 4 sigma of the closed forms")
    p_mc.add_argument("--format", choices=("text", "table", "record"), default="text")
    p_mc.add_argument("--out", help="write output to this file instead of stdout")
    p_mc.set_defaults(func=cmd_mc)

    p_chain = sub.add_parser("chain-rate", help="per-link attempt statistics for a repeater chain")
    _add_param_flags(p_chain, with_eta=False)
    p_chain.add_argument("--n-links", dest="n_links", type=int, required=True)
    p_chain.add_argument("--spacing-km", dest="spacing_km", type=float, required=True)
    p_chain.add_argument("--loss-db-per-km", dest="loss_db_per_km", type=float, default=0.17)
    p_chain.add_argument("--c-fiber", dest="c_fiber", type=float, default=SPEED_OF_LIGHT_FIBER,
                         help="signal velocity in fiber, m/s")
    p_chain.add_argument("--t-overhead", dest="t_overhead", type=float, default=0.0,
                         help="per-attempt overhead, s")
    p_chain.add_argument("--out", help="write the CSV here instead of stdout")
    p_chain.set_defaults(func=cmd_chain_rate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n_links", 1) < 1:
        print("chain-rate requires --n-links >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ValueError, TypeError) as exc:
        print(f"sqlink: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"sqlink: {exc}", file=sys.stderr)
        return 4


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
