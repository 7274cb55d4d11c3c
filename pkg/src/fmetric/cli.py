"""Command-line surface: batch verification and report generation.

Exit status contract: 0 when every verdict in the report passes, 1 on a
verdict failure (axiom or regularity violation), 2 on input or usage
errors.  JSON reports are stable-ordered (sorted keys) so identical
configurations produce byte-identical output; table output rounds to 9
significant digits while JSON carries full double precision.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from .analysis import (min_alpha, random_space, search_fmetric_not_metric,
                       search_result_to_dict)
from .chittenden import (RegularityCertificate, certificate_to_dict,
                         chittenden_report, phi_certificate,
                         verify_uniform_regularity)
from .core import DEFAULT_TOL, check_axioms, load_space, make_space
from .errors import (ChainBudgetError, DeltaExtractionError, NotFMetricError,
                     SpaceFormatError, UnknownGeneratorError)
from .generators import Witness, get_generator
from .induced import induced_metric, induced_to_dict

DEFAULT_EPSILONS = (1e-3, 1e-1, 1.0, 10.0)


@dataclass(frozen=True)
class RunConfig:
    """One CLI invocation; command-specific required fields are checked in run()."""

    command: str
    space_path: str | None = None
    generator: str = "log"
    alpha: float = 0.0
    epsilons: tuple[float, ...] = DEFAULT_EPSILONS
    seed: int = 0
    trials: int = 100
    n: int = 4
    output: str | None = None
    format: str = "json"
    tol: float = DEFAULT_TOL


def _witness(config: RunConfig) -> Witness:
    return Witness(get_generator(config.generator), config.alpha)


def _need_space(config: RunConfig):
    if not config.space_path:
        raise ValueError(f"command {config.command!r} requires --space")
    return load_space(config.space_path)


def _jsonable(obj):
    """Recursively convert reports to JSON-clean primitives.

    Dataclasses become dicts (including a computed ``passed`` when the
    type defines one); non-finite floats become repr strings so strict
    JSON stays valid.
    """
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {f.name: _jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        if hasattr(type(obj), "passed") and "passed" not in out:
            out["passed"] = bool(obj.passed)
        return out
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    if isinstance(obj, frozenset):
        return sorted(obj)
    return obj


def _cmd_verify(config: RunConfig):
    space = _need_space(config)
    w = _witness(config)
    report = check_axioms(space, w, config.tol)
    doc = {
        "command": "verify",
        "space": config.space_path,
        "generator": w.generator.name,
        "alpha": w.alpha,
        "tol": config.tol,
        "passed": report.passed,
        "axioms": _jsonable(report),
    }
    return (0 if report.passed else 1), doc


def _cmd_induce(config: RunConfig):
    space = _need_space(config)
    w = _witness(config)
    report = check_axioms(space, w, config.tol)
    if not report.passed:
        doc = {"command": "induce", "space": config.space_path, "passed": False,
               "error": "space is not an F-metric under this witness",
               "axioms": _jsonable(report)}
        return 1, doc
    im = induced_metric(space, w, config.tol)
    return 0, induced_to_dict(im)


def _cmd_certify(config: RunConfig):
    space = _need_space(config)
    w = _witness(config)
    report = chittenden_report(space, w, config.epsilons, config.tol)
    doc = {
        "command": "certify",
        "space": config.space_path,
        "generator": w.generator.name,
        "alpha": w.alpha,
        "tol": config.tol,
        "passed": report.passed,
        "refused": report.refused,
        "summary": report.summary,
        "axioms": _jsonable(report.axioms),
        "certificate": certificate_to_dict(report.certificate) if report.certificate else None,
        "regularity": _jsonable(report.regularity) if report.regularity else None,
    }
    return (0 if report.passed else 1), doc


def _cmd_min_alpha(config: RunConfig):
    space = _need_space(config)
    g = get_generator(config.generator)
    value = min_alpha(space, g)
    doc = {"command": "min-alpha", "space": config.space_path,
           "generator": g.name, "alpha_star": value}
    return 0, doc


def _cmd_search(config: RunConfig):
    g = get_generator(config.generator)
    result = search_fmetric_not_metric(g, config.alpha, config.n, config.trials,
                                       config.seed, tol=config.tol)
    doc = {"command": "search", **search_result_to_dict(result)}
    return 0, doc


def _rescaled(base, target: float):
    """Scale a matrix so every entry lands strictly inside (0, target)."""
    mx = float(base.dist.max())
    return make_space(base.dist * ((target / mx) * (1.0 - 1e-12)), base.labels)


def sweep(config: RunConfig):
    """Randomized uniform-regularity sweep.

    Pipeline per trial and certificate entry: generate a random space,
    rescale its entries into (0, 2*phi(eps)) so the regularity premise
    fires, re-run the axiom checks on the rescaled matrix, and scan for
    violating triples.  Any violation on a validated space falsifies the
    implementation, so the reported count must be zero.
    """
    if config.trials < 1:
        raise ValueError(f"sweep requires trials >= 1, got {config.trials}")
    if config.n < 2:
        raise ValueError(f"sweep requires n >= 2, got {config.n}")
    w = _witness(config)
    cert = phi_certificate(w, config.epsilons, config.tol)
    valid_instances = 0
    valid_trials = 0
    violations = 0
    violating = []
    for t in range(config.trials):
        base = random_space(config.n, 1.0, seed=(config.seed, t))
        trial_all_valid = True
        for entry in cert.entries:
            scaled = _rescaled(base, 2.0 * entry.phi)
            report = check_axioms(scaled, w, config.tol)
            if not report.passed:
                trial_all_valid = False
                continue
            valid_instances += 1
            reg = verify_uniform_regularity(
                scaled, w, RegularityCertificate(w, (entry,)))
            for scan in reg.scans:
                violations += len(scan.violations)
                violating.extend({"trial": t, "epsilon": scan.epsilon,
                                  "triple": list(v)} for v in scan.violations)
        if trial_all_valid:
            valid_trials += 1
    doc = {
        "command": "sweep",
        "generator": w.generator.name,
        "alpha": w.alpha,
        "n": config.n,
        "trials": config.trials,
        "seed": config.seed,
        "tol": config.tol,
        "epsilons": sorted(config.epsilons),
        "certificate": certificate_to_dict(cert),
        "generated": config.trials,
        "valid_instances": valid_instances,
        "valid_trials": valid_trials,
        "violations": violations,
        "violating": violating,
        "passed": violations == 0,
    }
    return (0 if violations == 0 else 1), doc


_HANDLERS = {
    "verify": _cmd_verify,
    "induce": _cmd_induce,
    "certify": _cmd_certify,
    "min-alpha": _cmd_min_alpha,
    "search": _cmd_search,
    "sweep": sweep,
}


def run(config: RunConfig):
    """Execute one command; returns (exit_status, report_dict)."""
    handler = _HANDLERS.get(config.command)
    if handler is None:
        return 2, {"command": config.command, "error": f"unknown command {config.command!r}"}
    try:
        return handler(config)
    except (NotFMetricError, DeltaExtractionError) as exc:
        return 1, {"command": config.command, "passed": False, "error": str(exc)}
    except (SpaceFormatError, UnknownGeneratorError, ChainBudgetError,
            FileNotFoundError, IsADirectoryError, PermissionError, ValueError) as exc:
        return 2, {"command": config.command, "error": str(exc)}


def render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_jsonable(report), indent=2, sort_keys=True,
                          allow_nan=False) + "\n"
    lines = []
    _render_table(_jsonable(report), "", lines)
    return "\n".join(lines) + "\n"


def _fmt_scalar(v) -> str:
    if isinstance(v, bool) or not isinstance(v, float):
        return str(v)
    return f"{v:.9g}"


def _render_table(node, prefix: str, lines: list) -> None:
    if isinstance(node, dict):
        for k in sorted(node):
            _render_table(node[k], f"{prefix}{k}.", lines)
        return
    if isinstance(node, list):
        if all(not isinstance(v, (dict, list)) for v in node):
            lines.append(f"{prefix[:-1]} = [{', '.join(_fmt_scalar(v) for v in node)}]")
        else:
            for i, v in enumerate(node):
                _render_table(v, f"{prefix[:-1]}[{i}].", lines)
        return
    lines.append(f"{prefix[:-1]} = {_fmt_scalar(node)}")


def _parse_epsilons(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip() != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid epsilon list {text!r}: {exc}")
    if not values:
        raise argparse.ArgumentTypeError(f"empty epsilon list {text!r}")
    if any(v <= 0 for v in values):
        raise argparse.ArgumentTypeError(f"epsilons must be > 0, got {text!r}")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fmetric",
        description="Verify F-metric axioms, build induced metrics and "
                    "uniform-regularity certificates on finite spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, space=False, witness=False, epsilons=False, randomized=False):
        if space:
            p.add_argument("--space", required=True, help="space document (JSON or CSV)")
        if witness:
            p.add_argument("--generator", default="log",
                           help="catalog generator: log, neg_inverse, log_plus_linear")
            p.add_argument("--alpha", type=float, default=0.0,
                           help="slack alpha >= 0 (raw scale)")
        if epsilons:
            p.add_argument("--epsilons", type=_parse_epsilons,
                           default=DEFAULT_EPSILONS,
                           help="comma-separated positive radii (default 0.001,0.1,1,10)")
        if randomized:
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--trials", type=int, default=100)
            p.add_argument("--n", type=int, default=4, help="points per random space")
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.add_argument("--output", default=None, help="report path (default stdout)")

    add_common(sub.add_parser("verify", help="check the axioms on a space"),
               space=True, witness=True)
    add_common(sub.add_parser("induce", help="build and emit the induced metric"),
               space=True, witness=True)
    add_common(sub.add_parser("certify", help="metrizability certificate report"),
               space=True, witness=True, epsilons=True)
    add_common(sub.add_parser("min-alpha", help="smallest slack for a generator"),
               space=True, witness=True)
    add_common(sub.add_parser("search", help="random search for non-metric F-metrics"),
               witness=True, randomized=True)
    add_common(sub.add_parser("sweep", help="randomized uniform-regularity sweep"),
               witness=True, epsilons=True, randomized=True)
    return parser


def config_from_args(args: argparse.Namespace, tol: float) -> RunConfig:
    return RunConfig(
        command=args.command,
        space_path=getattr(args, "space", None),
        generator=getattr(args, "generator", "log"),
        alpha=getattr(args, "alpha", 0.0),
        epsilons=tuple(getattr(args, "epsilons", DEFAULT_EPSILONS)),
        seed=getattr(args, "seed", 0),
        trials=getattr(args, "trials", 100),
        n=getattr(args, "n", 4),
        output=getattr(args, "output", None),
        format=getattr(args, "format", "json"),
        tol=tol,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    tol_text = os.environ.get("FMETRIC_TOL", "").strip()
    try:
        tol = float(tol_text) if tol_text else DEFAULT_TOL
        if not tol > 0:
            raise ValueError(f"FMETRIC_TOL must be > 0, got {tol_text!r}")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    config = config_from_args(args, tol)
    code, report = run(config)
    if code == 2:
        print(f"error: {report.get('error', 'usage error')}", file=sys.stderr)
        return code
    text = render_report(report, config.format)
    if config.output:
        with open(config.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
