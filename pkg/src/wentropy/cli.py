"""Command-line front end.

Every subcommand writes one payload to stdout, JSON by default or CSV with
``--format csv``. Exit status is 0 on success, 2 when the request itself is
invalid and 3 when the numerics fail; in JSON mode the two failure cases also
print an ``{"error": ...}`` object.
"""

from __future__ import annotations

import argparse
import enum
import math
import sys
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from .bounds import bound_global, bound_past_upper, bound_residual_lower, classify
from .characterization import reconstruct_survival_curve
from .distributions import DegenerateTailError, DistSpecError, format_number, parse_dist
from .entropies import MeasureKind, default_grid, entropy_curve, evaluate
from .identities import (
    audit_limit_claims,
    audit_paper_derivative_identities,
    check_corrected_derivatives,
    check_decomposition,
)
from .numerics import DifferentiationError, QuadratureError, RootError
from .serialize import csv_rows, dumps
from .transforms import (
    MonotoneTransform,
    affine_past,
    affine_residual,
    direct_weighted_past,
    direct_weighted_residual,
    transformed_weighted_past,
    transformed_weighted_residual,
)

__all__ = ["Command", "OutputFormat", "JobSpec", "JobError", "run", "build_parser", "main"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

_NUMERIC_ERRORS = (ArithmeticError, RuntimeError, QuadratureError, RootError,
                   DifferentiationError, DegenerateTailError)


class Command(enum.Enum):
    ENTROPY = "entropy"
    CURVE = "curve"
    CLASSIFY = "classify"
    BOUNDS = "bounds"
    AUDIT = "audit"
    TRANSFORM = "transform"
    RECONSTRUCT = "reconstruct"


class OutputFormat(enum.Enum):
    JSON = "json"
    CSV = "csv"


class JobError(ValueError):
    """The request is malformed; maps to exit status 2."""


@dataclass(frozen=True)
class JobSpec:
    command: Command
    dist: str
    measure: str | None = None
    t: float | None = None
    start: float | None = None
    end: float | None = None
    steps: int | None = None
    kind: str | None = None
    affine: tuple[float, float] | None = None
    output: OutputFormat = OutputFormat.JSON

    def __post_init__(self):
        grid = (self.start, self.end, self.steps)
        if any(v is not None for v in grid):
            if any(v is None for v in grid):
                raise JobError("--start, --end and --steps go together")
            if not (math.isfinite(self.start) and math.isfinite(self.end)):
                raise JobError("grid ends must be finite")
            if self.steps < 2:
                raise JobError(f"--steps must be at least 2, got {self.steps}")
            if not self.start < self.end:
                raise JobError(f"--start must be below --end, got {self.start} and {self.end}")
        if self.t is not None and grid[0] is not None:
            raise JobError("give either --t or a grid, not both")

    @property
    def has_grid(self) -> bool:
        return self.steps is not None

    def grid(self) -> np.ndarray | None:
        return np.linspace(self.start, self.end, self.steps) if self.has_grid else None

    def times(self, d, default_points: int) -> np.ndarray:
        """Explicit ``--t``, explicit grid, or the interior of a default grid."""
        if self.t is not None:
            return np.array([self.t])
        if self.has_grid:
            return self.grid()
        return default_grid(d, default_points + 2)[1:-1]


# -- payload builders: each returns (json_obj, csv_text) ----------------------------

def _entropy(job, d):
    kind = _measure(job.measure or "weighted")
    if kind.dynamic and job.t is None:
        raise JobError(f"measure {kind.value} needs --t")
    if not kind.dynamic and job.t is not None:
        raise JobError(f"measure {kind.value} does not take --t")
    value = evaluate(d, kind, job.t)
    if not math.isfinite(value):
        raise ArithmeticError(f"{kind.value} of {d.spec} is not finite")
    t = "" if job.t is None else job.t
    return value, csv_rows(("t", "value", "converged"), [(t, value, True)])


def _curve(job, d):
    kind = _measure(job.measure or "weighted-residual")
    if not kind.dynamic:
        raise JobError(f"measure {kind.value} is static; use the entropy command")
    curve = entropy_curve(d, kind, job.grid())
    return curve.to_dict(), curve.to_csv()


def _classify(job, d):
    if job.kind not in ("wurl", "wupl"):
        raise JobError("classify needs --kind wurl or --kind wupl")
    rep = classify(d, job.kind)
    rows = [(t, g) for t, g in rep.derivative_samples]
    return rep.to_dict(), csv_rows(("t", "derivative"), rows)


def _bounds(job, d):
    ts = job.times(d, 8)
    reports = [bound_global(d), bound_residual_lower(d, ts), *bound_past_upper(d, ts)]
    rows = []
    for r in reports:
        for i in range(len(r.lhs)):
            t = r.t_grid[i] if r.t_grid else ""
            rows.append((r.bound_id.value, t, r.lhs[i], r.rhs[i], r.slack[i], r.verdict.value))
        if not r.lhs:
            rows.append((r.bound_id.value, "", "", "", "", r.verdict.value))
    return ([r.to_dict() for r in reports],
            csv_rows(("bound_id", "t", "lhs", "rhs", "slack", "verdict"), rows))


def _audit(job, d):
    ts = job.times(d, 5)
    reports = [check_decomposition(d, ts),
               *audit_paper_derivative_identities(d, ts),
               *check_corrected_derivatives(d, ts),
               *audit_limit_claims(d)]
    rows = [(r.identity_id.value, t, lhs, rhs, r.verdict.value)
            for r in reports for t, lhs, rhs in zip(r.t_grid, r.lhs, r.rhs)]
    return ([r.to_dict() for r in reports],
            csv_rows(("identity_id", "t", "lhs", "rhs", "verdict"), rows))


def _transform(job, d):
    if job.affine is None:
        raise JobError("transform needs --affine a,b")
    a, b = job.affine
    kind = _measure(job.measure or "weighted-residual")
    if kind is MeasureKind.WEIGHTED_RESIDUAL_ENTROPY:
        paths = (transformed_weighted_residual, affine_residual, direct_weighted_residual)
    elif kind is MeasureKind.WEIGHTED_PAST_ENTROPY:
        paths = (transformed_weighted_past, affine_past, direct_weighted_past)
    else:
        raise JobError("transform supports weighted-residual and weighted-past")
    if job.t is None and not job.has_grid:
        raise JobError("transform needs --t or a grid")
    phi = MonotoneTransform.affine(a, b)
    cov, comp, direct = paths
    rows = []
    for t in job.times(d, 0):
        t = float(t)
        rows.append((t, cov(d, phi, t), comp(d, a, b, t), direct(d, phi, t)))
    obj = {"dist": d.spec, "transform": phi.name, "measure": kind.value,
           "grid": [{"t": t, "change_of_variables": x, "affine": y, "direct": z}
                    for t, x, y, z in rows]}
    return obj, csv_rows(("t", "change_of_variables", "affine", "direct"), rows)


def _reconstruct(job, d):
    if not job.has_grid:
        raise JobError("reconstruct needs --start, --end and --steps")
    rec = reconstruct_survival_curve(d, job.grid())
    rows = [(p.t, p.lambda_hat, p.flag, p.survival_hat, p.survival_true) for p in rec.grid_points]
    return rec.to_dict(), csv_rows(("t", "lambda_hat", "flag", "survival_hat", "survival_true"), rows)


_HANDLERS = {
    Command.ENTROPY: _entropy,
    Command.CURVE: _curve,
    Command.CLASSIFY: _classify,
    Command.BOUNDS: _bounds,
    Command.AUDIT: _audit,
    Command.TRANSFORM: _transform,
    Command.RECONSTRUCT: _reconstruct,
}


def _measure(text):
    try:
        return MeasureKind(text)
    except ValueError:
        names = ", ".join(k.value for k in MeasureKind)
        raise JobError(f"unknown measure {text!r}; choose from {names}") from None


def _error(out, err, job_format, kind):
    print(f"error: {err}", file=sys.stderr)
    if job_format is OutputFormat.JSON:
        out.write(dumps({"error": {"kind": kind, "type": type(err).__name__,
                                   "message": str(err)}}) + "\n")


def run(job: JobSpec, out: TextIO) -> int:
    """Execute one job, writing its payload to ``out``; returns the exit status."""
    try:
        d = parse_dist(job.dist)
        obj, csv_text = _HANDLERS[job.command](job, d)
    except (JobError, DistSpecError) as err:
        _error(out, err, job.output, "usage")
        return EXIT_USAGE
    except _NUMERIC_ERRORS as err:
        _error(out, err, job.output, "numerical")
        return EXIT_NUMERIC
    except ValueError as err:
        # remaining value errors come from argument checks in the library
        _error(out, err, job.output, "usage")
        return EXIT_USAGE
    if job.output is OutputFormat.CSV:
        out.write(csv_text)
    elif isinstance(obj, float):
        out.write(format_number(obj) + "\n")
    else:
        out.write(dumps(obj) + "\n")
    return EXIT_OK


def _pair(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected a,b; got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two numbers; got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wentropy",
        description="Weighted (shift-dependent) entropies of lifetime distributions.",
        epilog="Distributions are written family:key=value,..., for example "
               "exponential:lambda=1, uniform:a=0,b=2, gamma:alpha=2,beta=1, "
               "beta:alpha=2,beta=3, triangular-up, pwc:c=0.2|0.5|0.3.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--dist", required=True, help="distribution spec")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        return p

    def grid_flags(p):
        p.add_argument("--start", type=float)
        p.add_argument("--end", type=float)
        p.add_argument("--steps", type=int)

    kinds = ", ".join(k.value for k in MeasureKind)
    p = add("entropy", "one value of a measure")
    p.add_argument("--measure", default="weighted", help=kinds)
    p.add_argument("--t", type=float, help="time point for dynamic measures")

    p = add("curve", "a dynamic measure on a grid")
    p.add_argument("--measure", default="weighted-residual", help=kinds)
    grid_flags(p)

    p = add("classify", "DWURL/IWURL or DWUPL/IWUPL class")
    p.add_argument("--kind", choices=("wurl", "wupl"), required=True)

    p = add("bounds", "global, residual and past bounds")
    p.add_argument("--t", type=float)
    grid_flags(p)

    p = add("audit", "identity checks, including the documented failures")
    p.add_argument("--t", type=float)
    grid_flags(p)

    p = add("transform", "weighted entropies of aX+b by three routes")
    p.add_argument("--affine", type=_pair, required=True, metavar="a,b")
    p.add_argument("--measure", default="weighted-residual",
                   help="weighted-residual or weighted-past")
    p.add_argument("--t", type=float)
    grid_flags(p)

    p = add("reconstruct", "hazard and survival recovered from Hw and delta")
    grid_flags(p)
    return parser


def job_from_args(ns: argparse.Namespace) -> JobSpec:
    return JobSpec(
        command=Command(ns.command),
        dist=ns.dist,
        measure=getattr(ns, "measure", None),
        t=getattr(ns, "t", None),
        start=getattr(ns, "start", None),
        end=getattr(ns, "end", None),
        steps=getattr(ns, "steps", None),
        kind=getattr(ns, "kind", None),
        affine=getattr(ns, "affine", None),
        output=OutputFormat(ns.format),
    )


def main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    ns = build_parser().parse_args(argv)
    try:
        job = job_from_args(ns)
    except JobError as err:
        _error(out, err, OutputFormat(ns.format), "usage")
        return EXIT_USAGE
    return run(job, out)


if __name__ == "__main__":
    sys.exit(main())
