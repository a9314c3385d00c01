"""Recovering the hazard, and from it the survival function, out of H^w(t) and delta(t).

The weighted residual entropy satisfies ``Hw'(t) = lambda(t) [t log lambda(t) + Hw(t) - delta(t)]``.
Read pointwise, this is an equation ``h(x) = Hw'(t)`` in the unknown hazard ``x``
with ``h(x) = x (t log x + c)``, ``c = Hw(t) - delta(t)``. For ``t > 0`` the
map ``h`` falls from 0 to its minimum ``-t x0`` at ``x0 = exp(-(t + c)/t)`` and
then increases without bound, so a positive target has exactly one solution
and a negative one has two (or none). At ``t = 0`` the equation is linear.

Reconstruction runs in two phases: an independent per-point solve that
returns every candidate, followed by one sequential continuity sweep that
picks among candidates.

The printed form of the equation, :func:`g_paper`, is kept for auditing; it
does not vanish at the true hazard.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .distributions import Distribution, Exponential
from .entropies import (
    MEASURE_CONFIG,
    _survival_at,
    integrate_over,
    mean_residual_value,
    residual_entropy,
    weighted_residual_entropy,
)
from .numerics import QuadratureConfig, differentiate, find_root
from .serialize import dumps

__all__ = [
    "ReconstructionInput",
    "ReconstructionError",
    "RootFlag",
    "HazardSolution",
    "ReconstructionPoint",
    "SurvivalReconstruction",
    "g_paper",
    "g_paper_stationary_point",
    "audit_g_paper",
    "reconstruct_hazard",
    "reconstruct_survival_curve",
]

CONSISTENCY_TOL = 1e-9
MAX_EXPANSIONS = 40
LEAD_IN_POINTS = 16
MAX_UNRESOLVED_FRACTION = 0.10
# the derivative of the curves is taken by differencing, so they need more digits
_CURVE_CONFIG = QuadratureConfig(abs_tol=1e-15, rel_tol=1e-12)
_Y_MAX = 700.0  # log of the largest hazard ever tried


class ReconstructionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class ReconstructionInput:
    """Measured quantities at one ``t`` that feed the hazard equation."""

    t: float
    Hw_value: float
    Hw_derivative: float
    delta_value: float
    tail_integral: float
    H_derivative: float = 0.0

    def __post_init__(self):
        vals = (self.t, self.Hw_value, self.Hw_derivative, self.delta_value,
                self.tail_integral, self.H_derivative)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError(f"non-finite reconstruction input {vals!r}")
        if self.t < 0:
            raise ValueError(f"t must be non-negative, got {self.t!r}")
        scale = max(1.0, abs(self.delta_value))
        if self.delta_value < self.t - CONSISTENCY_TOL * scale:
            raise ValueError(f"delta(t)={self.delta_value!r} is below t={self.t!r}")
        if abs(self.tail_integral - (self.delta_value - self.t)) > CONSISTENCY_TOL * scale:
            raise ValueError(
                f"tail integral {self.tail_integral!r} disagrees with delta - t = "
                f"{self.delta_value - self.t!r}")

    @classmethod
    def exponential(cls, rate: float, t: float) -> "ReconstructionInput":
        """Exact inputs for an exponential law, no quadrature involved."""
        rate, t = float(rate), float(t)
        lr = math.log(rate)
        return cls(t=t,
                   Hw_value=t + 2.0 / rate - (t + 1.0 / rate) * lr,
                   Hw_derivative=1.0 - lr,
                   delta_value=t + 1.0 / rate,
                   tail_integral=1.0 / rate,
                   H_derivative=0.0)

    @classmethod
    def from_distribution(cls, d: Distribution, t: float,
                          cfg: QuadratureConfig = _CURVE_CONFIG) -> "ReconstructionInput":
        """Inputs measured on ``d`` by quadrature, derivatives by central differences."""
        t = float(t)
        dom = (d.lower, d.upper)
        sf = _survival_at(d, t)
        tail = integrate_over(d, d.survival, max(t, d.lower), d.upper, cfg) / sf
        if d.lower > t:
            tail += d.lower - t
        return cls(
            t=t,
            Hw_value=weighted_residual_entropy(d, t, cfg=cfg),
            Hw_derivative=differentiate(lambda s: weighted_residual_entropy(d, s, cfg=cfg), t, dom),
            delta_value=mean_residual_value(d, t, cfg=cfg),
            tail_integral=tail,
            H_derivative=differentiate(lambda s: residual_entropy(d, s, cfg), t, dom),
        )

    def to_dict(self):
        return {"t": self.t, "Hw_value": self.Hw_value, "Hw_derivative": self.Hw_derivative,
                "delta_value": self.delta_value, "tail_integral": self.tail_integral,
                "H_derivative": self.H_derivative}


# -- printed form, audit only ------------------------------------------------------

def g_paper(x: float, inp: ReconstructionInput) -> float:
    """``x [t (1 - log x) - Hw + tail] + t H'`` exactly as printed."""
    if not x > 0:
        raise ValueError(f"x must be positive, got {x!r}")
    t = inp.t
    return x * (t * (1.0 - math.log(x)) - inp.Hw_value + inp.tail_integral) + t * inp.H_derivative


def g_paper_stationary_point(inp: ReconstructionInput) -> float:
    """Where the printed g has zero slope: ``exp(-(Hw - tail)/t)``."""
    if inp.t <= 0:
        raise ValueError("the printed g has no stationary point at t = 0")
    return math.exp(-(inp.Hw_value - inp.tail_integral) / inp.t)


def audit_g_paper(d: Distribution, t: float, inp: ReconstructionInput | None = None) -> dict:
    """Residual of the printed g at the true hazard (zero if the printed claim held)."""
    if inp is None:
        inp = (ReconstructionInput.exponential(d.rate, t) if isinstance(d, Exponential)
               else ReconstructionInput.from_distribution(d, t))
    lam = d.hazard(inp.t)
    return {"dist": d.spec, "t": inp.t, "lambda_true": lam,
            "g_paper_at_lambda": g_paper(lam, inp), "inputs": inp.to_dict()}


# -- corrected equation --------------------------------------------------------------

class RootFlag(enum.Enum):
    UNIQUE = "unique"
    MULTIPLE = "multiple"
    DOUBLE = "double"


@dataclass(frozen=True)
class HazardSolution:
    """All positive solutions of ``x (t log x + Hw - delta) = Hw'`` at one ``t``."""

    t: float
    roots: tuple
    flag: RootFlag
    minimizer: float | None
    minimum: float | None

    @property
    def value(self) -> float:
        """The hazard when it is determined without outside information."""
        if self.flag is RootFlag.MULTIPLE:
            raise ReconstructionError(
                f"two candidate hazards {self.roots!r} at t={self.t!r}; pass a seed")
        return self.roots[0]

    def select(self, seed: float | None) -> float:
        """Candidate closest to ``seed``; the determined value when there is no seed."""
        if seed is None or len(self.roots) == 1:
            return self.value
        return min(self.roots, key=lambda r: abs(r - seed))


def _solve_y(g, lo, hi, grow_lo, grow_hi, min_value):
    """Root of ``g`` in log-hazard space, widening the bracket as needed."""
    glo, ghi = g(lo), g(hi)
    width = hi - lo
    for _ in range(MAX_EXPANSIONS):
        if glo * ghi <= 0:
            break
        width *= 2.0
        if grow_lo:
            lo = hi - width
            glo = g(lo)
        if grow_hi:
            hi = min(lo + width, _Y_MAX)
            ghi = g(hi)
    else:
        raise ReconstructionError(
            f"no sign change in expanded bracket [{math.exp(lo)!r}, {math.exp(hi)!r}]; "
            f"minimum of the hazard equation is {min_value!r}")
    if glo == 0:
        return math.exp(lo)
    if ghi == 0:
        return math.exp(hi)
    return math.exp(find_root(g, lo, hi, rtol=1e-15))


def reconstruct_hazard(inp: ReconstructionInput) -> HazardSolution:
    """Solve the corrected hazard equation at ``inp.t``.

    A positive target gives the unique root above ``x0``; a negative target
    gives both roots, flagged ``multiple``, and choosing between them is left
    to the caller. A target below the minimum ``-t x0`` raises
    :class:`ReconstructionError` carrying that minimum.
    """
    t, c, target = inp.t, inp.Hw_value - inp.delta_value, inp.Hw_derivative
    if t == 0.0:
        if c == 0.0:
            raise ReconstructionError("at t = 0 the equation degenerates (Hw(0) = E X)")
        x = target / c
        if x < 0:
            # allow differencing noise around a vanishing hazard
            if x > -1e-8:
                x = 0.0
            else:
                raise ReconstructionError(f"linear solution {x!r} at t = 0 is negative")
        return HazardSolution(t, (x,), RootFlag.UNIQUE, None, None)

    y0 = -(t + c) / t
    x0 = math.exp(min(y0, _Y_MAX))
    h_min = -t * x0
    step = math.log(8.0)

    def g(y):
        return math.exp(y) * (t * y + c) - target

    if target >= 0:
        y_zero = -c / t
        if target == 0:
            return HazardSolution(t, (math.exp(y_zero),), RootFlag.UNIQUE, x0, h_min)
        root = _solve_y(g, max(y0, y_zero), max(y0, y_zero) + step, False, True, h_min)
        return HazardSolution(t, (root,), RootFlag.UNIQUE, x0, h_min)

    if target < h_min:
        if target >= h_min - 1e-12 * max(1.0, abs(h_min)):
            return HazardSolution(t, (x0,), RootFlag.DOUBLE, x0, h_min)
        raise ReconstructionError(
            f"target Hw'={target!r} at t={t!r} is below the minimum {h_min!r} of the hazard "
            f"equation (attained at x0={x0!r}); no hazard satisfies it")
    if target == h_min:
        return HazardSolution(t, (x0,), RootFlag.DOUBLE, x0, h_min)
    low = _solve_y(g, y0 - step, y0, True, False, h_min)
    high = _solve_y(g, y0, y0 + step, False, True, h_min)
    return HazardSolution(t, (low, high), RootFlag.MULTIPLE, x0, h_min)


# -- survival curve ------------------------------------------------------------------

@dataclass(frozen=True)
class ReconstructionPoint:
    t: float
    lambda_hat: float
    candidates: tuple
    flag: str
    survival_hat: float
    survival_true: float
    in_grid: bool

    def to_dict(self):
        return {"t": self.t, "lambda_hat": self.lambda_hat, "candidates": list(self.candidates),
                "flag": self.flag, "survival_hat": self.survival_hat,
                "survival_true": self.survival_true}


@dataclass(frozen=True)
class SurvivalReconstruction:
    dist: str
    points: tuple

    @property
    def grid_points(self):
        return tuple(p for p in self.points if p.in_grid)

    @property
    def max_survival_error(self) -> float:
        return max(abs(p.survival_hat - p.survival_true) for p in self.grid_points)

    def to_dict(self):
        return {"dist": self.dist, "max_survival_error": self.max_survival_error,
                "points": [p.to_dict() for p in self.grid_points]}

    def to_json(self) -> str:
        return dumps(self.to_dict())


def _lead_in(d, t_first):
    if t_first <= d.lower:
        return []
    return [float(s) for s in np.linspace(d.lower, t_first, LEAD_IN_POINTS + 1)[:-1]]


def reconstruct_survival_curve(d: Distribution, t_grid, seed: float | None = None
                               ) -> SurvivalReconstruction:
    """Rebuild ``S(t) = exp(-int lambda)`` from the curves ``Hw`` and ``delta`` of ``d``.

    ``d`` is used only to measure the input curves and the true survival for
    the error report. Phase one solves each point on its own. Phase two sweeps
    once, starting at the first point whose root is unique (or at the first
    point using ``seed``), and at every other point keeps the candidate
    nearest the previous choice. A short lead-in grid from the lower support
    end is prepended so that the hazard integral starts where ``S = 1``.
    """
    ts = [float(t) for t in np.atleast_1d(np.asarray(t_grid, dtype=float))]
    if len(ts) < 2 or any(b <= a for a, b in zip(ts, ts[1:])):
        raise ValueError("t_grid must hold at least two strictly increasing points")
    lead = _lead_in(d, ts[0])
    all_t = lead + ts

    solutions: list[HazardSolution | None] = []
    for t in all_t:
        try:
            solutions.append(reconstruct_hazard(ReconstructionInput.from_distribution(d, t)))
        except (ArithmeticError, ValueError):
            solutions.append(None)

    unresolved = sum(s is None for s in solutions)
    if unresolved > MAX_UNRESOLVED_FRACTION * len(all_t):
        raise ReconstructionError(f"{unresolved} of {len(all_t)} points have no hazard solution")

    n = len(all_t)
    chosen: list[float | None] = [None] * n
    start = None
    if seed is not None:
        start = next(i for i, s in enumerate(solutions) if s is not None)
        chosen[start] = solutions[start].select(seed)
    else:
        for i, s in enumerate(solutions):
            if s is not None and s.flag is not RootFlag.MULTIPLE:
                start, chosen[i] = i, s.value
                break
    if start is None:
        raise ReconstructionError("no point has a uniquely determined hazard; pass a seed")

    for order in (range(start + 1, n), range(start - 1, -1, -1)):
        prev = chosen[start]
        for i in order:
            if solutions[i] is not None:
                chosen[i] = solutions[i].select(prev)
                prev = chosen[i]

    # fill unresolved points by linear interpolation in t
    known = [i for i in range(n) if chosen[i] is not None]
    lam = np.interp(all_t, [all_t[i] for i in known], [chosen[i] for i in known])

    cum = np.concatenate(([0.0], np.cumsum(0.5 * np.diff(all_t) * (lam[1:] + lam[:-1]))))
    # the lead-in (or the grid itself) starts at the lower end, where S = 1
    offset = 0.0 if lead or ts[0] <= d.lower else math.nan
    surv_hat = np.exp(-(cum + offset))

    points = []
    for i, t in enumerate(all_t):
        s = solutions[i]
        points.append(ReconstructionPoint(
            t=t,
            lambda_hat=float(lam[i]),
            candidates=s.roots if s is not None else (),
            flag=s.flag.value if s is not None else "unresolved",
            survival_hat=float(surv_hat[i]),
            survival_true=float(d.survival(t)),
            in_grid=i >= len(lead),
        ))
    return SurvivalReconstruction(d.spec, tuple(points))
