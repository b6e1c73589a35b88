"""Command-line front end.

Usage::

    cflab construct --density '{"kind":"gaussian","mean":0,"sd":1}' --sigma 1 --alpha -4 --beta 4 --out pair.json
    cflab construct-boundary --density '{"kind":"half_sine","alpha":0,"sigma":3.141592653589793}' --sigma 3.141592653589793 --alpha 0
    cflab certify --density '{"kind":"triangular","a":1}' --sigma 3.14159265 --out cert.json
    cflab verify --pair pair.json --out report.json
    cflab eval-cf --density '{"kind":"triangular","a":1}' --t-min -20 --t-max 20 --n 401 --csv cf.csv
    cflab bump-table --a 0 --sigma 3.141592653589793 --csv bump.csv

A report written by ``construct`` or ``construct-boundary`` is itself a
valid pair file (top-level ``phi``, ``sigma``, ``bump``, ``rho``).

Exit codes: 0 success, 1 malformed input, 2 hypothesis violated,
3 verification failed (or no certificate found), 4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .bandlimited import ExtremalBump, bump_table
from .densities import density_from_json
from .errors import (
    CFLabError,
    HypothesisViolation,
    NumericalError,
    ParameterError,
    UnsupportedInput,
    ValidationError,
)
from .fourier import char_fn_eval
from .substitution import SubstitutionPair, construct_pair, construct_pair_boundary, verify_pair
from .uniqueness import UniquenessCertificate, certify

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_HYPOTHESIS = 2
EXIT_VERIFY = 3
EXIT_NUMERICAL = 4

COMMANDS = ("construct", "construct-boundary", "certify", "verify", "eval-cf", "bump-table")
MIN_RESOLUTION = 16


@dataclass
class RunConfig:
    command: str
    density: str | None = None
    pair: str | None = None
    sigma: float | None = None
    window: tuple[float, float] | None = None
    alpha: float | None = None
    a: float | None = None
    tau: float | None = None
    grids: dict[str, int] = field(default_factory=dict)
    t_range: tuple[float, float] = (-20.0, 20.0)
    x_range: tuple[float, float] | None = None
    method: str = "auto"
    verify: bool = False
    inside_threshold: float | None = None
    output: str | None = None
    csv: str | None = None
    timestamp: bool = True


def _load_json_source(src: str, what: str) -> Any:
    text = src.strip()
    try:
        if text.startswith("{"):
            return json.loads(text)
        return json.loads(Path(src).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParameterError(f"{what}: malformed JSON ({exc.msg} at line {exc.lineno} column {exc.colno})") from None
    except OSError as exc:
        raise ParameterError(f"{what}: cannot read {src!r} ({exc.strerror})") from None


def _clean(obj: Any) -> Any:
    """Make a report strictly JSON: numpy scalars to Python, non-finite floats to strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _require(value, name: str):
    if value is None:
        raise ParameterError(f"--{name} is required for this command")
    return value


def _check_config(cfg: RunConfig) -> None:
    if cfg.command not in COMMANDS:
        raise ParameterError(f"unknown command {cfg.command!r}")
    if cfg.sigma is not None and not cfg.sigma > 0:
        raise ParameterError(f"sigma: must be positive, got {cfg.sigma}")
    for name, n in cfg.grids.items():
        if n < MIN_RESOLUTION:
            raise ParameterError(f"{name}: grid resolution must be >= {MIN_RESOLUTION}, got {n}")


def _verify_into(report: dict, pair: SubstitutionPair, cfg: RunConfig, default_threshold: float) -> int:
    threshold = cfg.inside_threshold if cfg.inside_threshold is not None else default_threshold
    kwargs = {"inside_threshold": threshold}
    if "n_grid" in cfg.grids:
        kwargs["n_grid"] = cfg.grids["n_grid"]
    if "psd_nodes" in cfg.grids:
        kwargs["psd_nodes"] = cfg.grids["psd_nodes"]
    result = verify_pair(pair, **kwargs)
    report["verification"] = result.to_json()
    return EXIT_OK if result.passed else EXIT_VERIFY


def _execute(cfg: RunConfig, report: dict) -> int:
    cmd = cfg.command
    if cmd == "bump-table":
        sigma = _require(cfg.sigma, "sigma")
        a = 0.0 if cfg.a is None else cfg.a
        F = ExtremalBump(a, sigma, math.pi / (2 * sigma) if cfg.tau is None else cfg.tau)
        lo, hi = cfg.x_range or (F.a - 4 * F.width, F.b + 4 * F.width)
        table = bump_table(F, np.linspace(lo, hi, cfg.grids.get("n", 1001)))
        report["bump"] = F.to_json()
        report["rows"] = len(table)
        if cfg.csv:
            _write_csv(cfg.csv, ("x", "F", "Fprime"), table)
        return EXIT_OK

    if cmd == "verify":
        pair = SubstitutionPair.from_json(_load_json_source(_require(cfg.pair, "pair"), "pair"))
        report["pair"] = pair.to_json()
        return _verify_into(report, pair, cfg, 1e-4)

    phi = density_from_json(_load_json_source(_require(cfg.density, "density"), "density"))
    if cmd in ("construct", "construct-boundary"):
        report["phi"] = phi.to_json()
    else:
        report["density"] = phi.to_json()

    if cmd == "eval-cf":
        lo, hi = cfg.t_range
        res = char_fn_eval(phi, np.linspace(lo, hi, cfg.grids.get("n", 401)), cfg.method)
        report["achieved_tol"] = res.achieved_tol
        report["points"] = len(res.t_grid)
        if cfg.csv:
            _write_csv(cfg.csv, ("t", "re", "im", "abs"), res.rows())
        return EXIT_OK

    sigma = _require(cfg.sigma, "sigma")
    report["sigma"] = sigma
    if cmd == "construct":
        alpha, beta = _require(cfg.window, "alpha/--beta")
        pair = construct_pair(phi, sigma, alpha, beta)
        report.update(pair.to_json())
        return _verify_into(report, pair, cfg, 1e-4 * pair.rho) if cfg.verify else EXIT_OK
    if cmd == "construct-boundary":
        pair = construct_pair_boundary(phi, sigma, _require(cfg.alpha, "alpha"))
        report.update(pair.to_json())
        return _verify_into(report, pair, cfg, 1e-4 * pair.bump.tau) if cfg.verify else EXIT_OK
    if cmd == "certify":
        result = certify(phi, sigma, cfg.a)
        report["certificate"] = result.to_json()
        report["certified"] = isinstance(result, UniquenessCertificate)
        return EXIT_OK if report["certified"] else EXIT_VERIFY
    raise ParameterError(f"unknown command {cmd!r}")


def _write_csv(path: str, header, rows) -> None:
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(v)) for v in row])


def _exit_code_for(exc: CFLabError) -> int:
    if isinstance(exc, (HypothesisViolation, UnsupportedInput)):
        return EXIT_HYPOTHESIS
    if isinstance(exc, NumericalError):
        return EXIT_NUMERICAL
    if isinstance(exc, ValidationError):
        return EXIT_VERIFY
    return EXIT_INPUT


def run(cfg: RunConfig) -> int:
    """Execute one command, write its JSON report, return the exit code."""
    report: dict[str, Any] = {"command": cfg.command, "version": __version__}
    try:
        _check_config(cfg)
        code = _execute(cfg, report)
    except CFLabError as exc:
        code = _exit_code_for(exc)
        report["error"] = str(exc)
        if isinstance(exc, HypothesisViolation):
            report["condition"] = exc.condition
        print(f"cflab {cfg.command}: {exc}", file=sys.stderr)
    report["exit_code"] = code
    report["status"] = "ok" if code == EXIT_OK else "failed"
    if cfg.timestamp:
        report["generated_at"] = _dt.datetime.now(_dt.timezone.utc).isoformat()
    text = json.dumps(_clean(report), indent=2, sort_keys=True, allow_nan=False) + "\n"
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse's default status 2 would collide with "hypothesis violated"
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cflab", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, density=True):
        if density:
            p.add_argument("--density", required=True, help="inline JSON density or path to a JSON file")
        p.add_argument("--out", help="JSON report path (default: stdout)")
        p.add_argument("--no-timestamp", action="store_true", help="omit generated_at for reproducible output")

    def verification(p):
        p.add_argument("--n-grid", type=int, help="nonnegativity grid size")
        p.add_argument("--psd-nodes", type=int, help="Gram matrix size")
        p.add_argument("--inside-threshold", type=float)

    p = sub.add_parser("construct", help="build psi = phi - rho F on a window inside (alpha, beta)")
    common(p)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--verify", action="store_true", help="also run the full verification")
    verification(p)

    p = sub.add_parser("construct-boundary", help="substitution when the support has length exactly 2pi/sigma")
    common(p)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--verify", action="store_true")
    verification(p)

    p = sub.add_parser("certify", help="search for a uniqueness certificate")
    common(p)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--a", type=float, help="fixed period (default: scan)")

    p = sub.add_parser("verify", help="verify a pair file written by construct")
    common(p, density=False)
    p.add_argument("--pair", required=True)
    verification(p)

    p = sub.add_parser("eval-cf", help="tabulate a characteristic function")
    common(p)
    p.add_argument("--t-min", type=float, default=-20.0)
    p.add_argument("--t-max", type=float, default=20.0)
    p.add_argument("--n", type=int, default=401)
    p.add_argument("--method", choices=("auto", "closed", "quadrature"), default="auto")
    p.add_argument("--csv", help="write t,re,im,abs")

    p = sub.add_parser("bump-table", help="tabulate the extremal bump and its derivative")
    common(p, density=False)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--tau", type=float)
    p.add_argument("--x-min", type=float)
    p.add_argument("--x-max", type=float)
    p.add_argument("--n", type=int, default=1001)
    p.add_argument("--csv", help="write x,F,Fprime")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    get = lambda name: getattr(ns, name, None)  # noqa: E731
    grids = {k: v for k, v in (("n", get("n")), ("n_grid", get("n_grid")), ("psd_nodes", get("psd_nodes"))) if v is not None}
    x_range = None
    if get("x_min") is not None or get("x_max") is not None:
        if get("x_min") is None or get("x_max") is None:
            raise ParameterError("--x-min and --x-max must be given together")
        x_range = (ns.x_min, ns.x_max)
    window = (ns.alpha, ns.beta) if ns.command == "construct" else None
    return RunConfig(
        command=ns.command,
        density=get("density"),
        pair=get("pair"),
        sigma=get("sigma"),
        window=window,
        alpha=get("alpha"),
        a=get("a"),
        tau=get("tau"),
        grids=grids,
        t_range=(ns.t_min, ns.t_max) if ns.command == "eval-cf" else (-20.0, 20.0),
        x_range=x_range,
        method=get("method") or "auto",
        verify=bool(get("verify")),
        inside_threshold=get("inside_threshold"),
        output=get("out"),
        csv=get("csv"),
        timestamp=not ns.no_timestamp,
    )


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ParameterError as exc:
        print(f"cflab {ns.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
