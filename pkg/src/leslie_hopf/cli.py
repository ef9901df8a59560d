"""``leslie-hopf``: analyze, verify, simulate and portrait subcommands.

Exit status is 0 when every asserted check passes, 1 for a Mismatch,
Refuted or Inconclusive outcome and 2 for bad input. Artifacts go to
``--out`` or, failing that, ``$LESLIE_HOPF_OUT``; JSON is written with
sorted keys so identical runs give identical bytes.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .certify import (DEFAULT_CERT_WIDTH, Verdict, certify_first_equilibrium,
                      certify_simultaneous_hopf, certify_third_equilibrium,
                      certify_unique_cyclicity, classify_origin, global_stability_certificate,
                      jsonable)
from .certify.certificate import Certificate
from .dynamics import SCENARIOS, get_scenario, integrate_orbit, reproduce_portrait
from .errors import LeslieHopfError, RegimeError, StiffnessError
from .model import (AlphaBetaParams, ModelParams, boundary_equilibrium, find_positive_equilibria,
                    hopf_thresholds)

__all__ = ["RunConfig", "run", "main", "CLAIMS", "OUT_ENV", "ANALYSIS_SCHEMA"]

OUT_ENV = "LESLIE_HOPF_OUT"
ANALYSIS_SCHEMA = "leslie-hopf/analysis/1"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _global_stability(params, width):
    """Wrap the stability regime as a certificate so ``verify`` treats it uniformly."""
    cert = Certificate("global-stability",
                       "the unit equilibrium is globally asymptotically stable")
    try:
        regime = global_stability_certificate(params.to_model()
                                              if isinstance(params, AlphaBetaParams) else params)
    except RegimeError as exc:
        cert.add("regime", "a sufficient condition applies", None, reason=str(exc))
        return cert
    # no applicable condition is a gap in the sufficient conditions, not a refutation
    cert.add("condition", "a sufficient condition holds", True if regime.certified else None,
             **regime.to_json_obj())
    return cert


CLAIMS = {
    "unique-cyclicity": lambda params, width: certify_unique_cyclicity(width),
    "first-equilibrium-cyclicity": lambda params, width: certify_first_equilibrium(width),
    "third-equilibrium-stability": lambda params, width: certify_third_equilibrium(),
    "simultaneous-hopf": lambda params, width: certify_simultaneous_hopf(),
    "global-stability": _global_stability,
}


@dataclass
class RunConfig:
    """One validated invocation."""

    command: str
    params: object = None
    tol: float | None = None
    out_dir: Path | None = None
    scenario: str | None = None
    claim: str | None = None
    width: Fraction = DEFAULT_CERT_WIDTH
    fmt: str | None = None
    start: tuple | None = None
    t_span: float = 100.0
    backend: str | None = None
    csv: bool = False
    overrides: dict | None = None


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(cfg: RunConfig, name: str, text: str):
    if cfg.out_dir is None:
        return None
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    path = cfg.out_dir / name
    path.write_text(text)
    return path


def _analyze(cfg: RunConfig, out) -> int:
    params = cfg.params
    model = params.to_model() if isinstance(params, AlphaBetaParams) else params
    report = {"schema": ANALYSIS_SCHEMA, "params": params.to_json_obj(),
              "model_params": model.to_json_obj(),
              "equilibria": [e.to_json_obj() for e in find_positive_equilibria(params)],
              "boundary_equilibrium": boundary_equilibrium(params).to_json_obj(),
              "origin": classify_origin(model).to_json_obj()}
    try:
        report["hopf_thresholds"] = hopf_thresholds(model.K, model.b).to_json_obj()
    except LeslieHopfError as exc:
        report["hopf_thresholds"] = {"unavailable": str(exc)}
    try:
        report["global_stability"] = global_stability_certificate(model).to_json_obj()
    except RegimeError as exc:
        report["global_stability"] = {"unavailable": str(exc)}
    text = _dump(jsonable(report))
    _write(cfg, "analysis.json", text)
    out.write(text)
    return EXIT_OK


def _verify(cfg: RunConfig, out) -> int:
    cert = CLAIMS[cfg.claim](cfg.params, cfg.width)
    text = cert.to_json() + "\n"
    _write(cfg, f"{cfg.claim}.json", text)
    _write(cfg, f"{cfg.claim}.audit.txt", cert.audit() + "\n")
    out.write(text if cfg.fmt == "json" else cert.audit() + "\n")
    return EXIT_OK if cert.verdict is Verdict.VERIFIED else EXIT_FAIL


def _simulate(cfg: RunConfig, out) -> int:
    status = EXIT_OK
    try:
        traj = integrate_orbit(cfg.params, cfg.start, cfg.t_span, cfg.tol or 1e-10,
                               backend=cfg.backend)
    except StiffnessError as exc:
        traj, status = exc.trajectory, EXIT_FAIL
        sys.stderr.write(f"leslie-hopf: {exc}\n")
    text = traj.to_csv()
    _write(cfg, "trajectory.csv", text)
    out.write(text)
    return status


def _portrait(cfg: RunConfig, out) -> int:
    sc = get_scenario(cfg.scenario)
    if cfg.overrides:
        sc = sc.with_params(_override(sc.params, cfg.overrides))
    kw = {"backend": cfg.backend, "csv": cfg.csv or cfg.fmt == "csv"}
    if cfg.tol is not None:
        kw["tol"] = cfg.tol
    result = reproduce_portrait(sc, out_dir=cfg.out_dir, **kw)
    if cfg.fmt == "svg":
        out.write(result.svg)
    elif cfg.fmt == "csv":
        out.write(result.csv)
    else:
        out.write(result.report_json())
    return EXIT_OK if result.matches else EXIT_FAIL


def _emit(cfg: RunConfig, out) -> int:
    from .lyapunov import appendix_check
    check = appendix_check()
    out.write(check.report() + "\n")
    _write(cfg, "appendix-check.txt", check.report() + "\n")
    return EXIT_OK if check.agrees else EXIT_FAIL


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    handler = {"analyze": _analyze, "verify": _verify, "simulate": _simulate,
               "portrait": _portrait, "emit": _emit}[cfg.command]
    return handler(cfg, out)


# argument parsing ----------------------------------------------------------

def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _fraction(text):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational p/q: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _add_params(p, required):
    g = p.add_argument_group("parameters (give --K --b --s or --alpha --beta --s)")
    for name in ("K", "b", "alpha", "beta", "s"):
        g.add_argument(f"--{name}", metavar="Q", help="rational, e.g. 27/50 or 0.54")
    p.set_defaults(params_required=required)


def _add_common(p):
    p.add_argument("--out", metavar="DIR", help=f"artifact directory (default ${OUT_ENV})")
    p.add_argument("--format", dest="fmt", choices=("json", "csv", "svg", "text"))
    p.add_argument("--backend", choices=("auto", "cython", "python"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leslie-hopf",
        description="Exact certificates and cycle simulation for a Leslie predator-prey "
                    "model with simplified Holling IV response.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--emit", choices=("appendix-check",),
                        help="recompute the unit-focus constants and diff them against the "
                             "embedded closed forms")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("analyze", help="equilibria, classifications and thresholds as JSON")
    _add_params(p, True)
    _add_common(p)

    p = sub.add_parser("verify", help="replay an exact certificate")
    p.add_argument("claim", choices=sorted(CLAIMS))
    p.add_argument("--width", type=_fraction, default=None, metavar="P/Q",
                   help="isolation box width (default 1/2^100)")
    _add_params(p, False)
    _add_common(p)

    p = sub.add_parser("simulate", help="integrate one orbit and print it as CSV")
    _add_params(p, True)
    p.add_argument("--x0", type=_positive_float, nargs=2, required=True, metavar=("X", "Y"))
    p.add_argument("--t", dest="t_span", type=_positive_float, default=100.0)
    p.add_argument("--tol", type=_positive_float)
    _add_common(p)

    p = sub.add_parser("portrait", help="reproduce a named cycle configuration",
                       description="Detect cycles for a named scenario and compare them "
                                   "with its expected configuration. Parameters given on "
                                   "the command line replace the scenario's own.")
    p.add_argument("scenario", choices=sorted(SCENARIOS))
    p.add_argument("--tol", type=_positive_float, help="cycle radial tolerance (default 1e-6)")
    p.add_argument("--csv", action="store_true", help="also write the cycles as CSV")
    _add_params(p, False)
    _add_common(p)
    return parser


def _override(params, changes: dict):
    """``params`` with some of its fields replaced, in the same parameterization."""
    if isinstance(params, AlphaBetaParams):
        if {"K", "b"} & changes.keys():
            raise UsageError("this scenario is parameterized by --alpha --beta --s")
        fields = {"alpha": params.alpha, "beta": params.beta, "s": params.s}
        cls = AlphaBetaParams
    else:
        if {"alpha", "beta"} & changes.keys():
            raise UsageError("this scenario is parameterized by --K --b --s")
        fields = {"K": params.K, "b": params.b, "s": params.s}
        cls = ModelParams
    fields.update(changes)
    try:
        return cls(*fields.values())
    except (LeslieHopfError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid parameters: {exc}") from None


def _params(ns, required):
    kb = [getattr(ns, k, None) for k in ("K", "b")]
    ab = [getattr(ns, k, None) for k in ("alpha", "beta")]
    s = getattr(ns, "s", None)
    given_kb, given_ab = any(v is not None for v in kb), any(v is not None for v in ab)
    if not (given_kb or given_ab or s is not None):
        if required:
            raise UsageError("parameters required: --K --b --s or --alpha --beta --s")
        return None
    if given_kb == given_ab:
        raise UsageError("give exactly one parameterization: --K --b --s or --alpha --beta --s")
    if s is None or None in (kb if given_kb else ab):
        raise UsageError("incomplete parameters: all three of the chosen set are needed")
    try:
        return ModelParams(*kb, s) if given_kb else AlphaBetaParams(*ab, s)
    except (LeslieHopfError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid parameters: {exc}") from None


def parse_config(argv) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    command = "emit" if ns.emit else ns.command
    if command is None:
        parser.print_usage(sys.stderr)
        raise UsageError("a subcommand or --emit is required")
    out_dir = getattr(ns, "out", None) or os.environ.get(OUT_ENV) or None
    cfg = RunConfig(command, out_dir=Path(out_dir) if out_dir else None,
                    fmt=getattr(ns, "fmt", None), backend=getattr(ns, "backend", None))
    if command == "emit":
        return cfg
    if command == "portrait":
        cfg.scenario, cfg.tol, cfg.csv = ns.scenario, ns.tol, ns.csv
        cfg.overrides = {k: getattr(ns, k) for k in ("K", "b", "alpha", "beta", "s")
                         if getattr(ns, k) is not None}
        if cfg.overrides:
            _override(get_scenario(ns.scenario).params, cfg.overrides)
        return cfg
    cfg.params = _params(ns, ns.params_required)
    if command == "verify":
        cfg.claim = ns.claim
        if ns.width is not None:
            cfg.width = ns.width
        if ns.claim == "global-stability" and cfg.params is None:
            raise UsageError("global-stability needs --K --b --s")
    elif command == "simulate":
        cfg.start, cfg.t_span, cfg.tol = tuple(ns.x0), ns.t_span, ns.tol
    return cfg


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        sys.stderr.write(f"leslie-hopf: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # argparse reports schema errors with status 2
        return int(exc.code or 0)
    try:
        return run(cfg)
    except (LeslieHopfError, ValueError) as exc:
        sys.stderr.write(f"leslie-hopf: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
