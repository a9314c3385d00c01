"""Inequalities for the weighted measures and the DWURL/IWURL/DWUPL/IWUPL classes."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .distributions import Distribution
from .entropies import (
    MEASURE_CONFIG,
    default_grid,
    integrate_over,
    mean_past_lifetime,
    mean_residual_value,
    weighted_entropy,
    weighted_past_entropy,
    weighted_residual_entropy,
)
from .numerics import QuadratureConfig, differentiate
from .serialize import dumps

__all__ = [
    "BoundId",
    "BoundVerdict",
    "BoundReport",
    "ClassKind",
    "ClassVerdict",
    "ClassificationReport",
    "ClassificationError",
    "envelope",
    "envelope_maximum",
    "is_decreasing_on_grid",
    "bound_global",
    "bound_residual_lower",
    "bound_past_upper",
    "classify",
]

SLACK_TOL = 1e-7
_MONOTONE_POINTS = 64
_MONOTONE_RTOL = 1e-9
_CLASSIFY_POINTS = 128
_MIN_VALID = 16
# curves that get differenced; 1e-12 sits safely above the roundoff floor of the rule
_CURVE_CONFIG = QuadratureConfig(abs_tol=1e-15, rel_tol=1e-12)


class BoundId(enum.Enum):
    EQ24_GLOBAL = "Eq24_global"
    EQ14_RESIDUAL_LOWER = "Eq14_residual_lower"
    EQ25_PAST_UPPER = "Eq25_past_upper"
    EQ17_PAST_UPPER = "Eq17_past_upper"


class BoundVerdict(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    NOT_APPLICABLE = "not applicable"


@dataclass(frozen=True)
class BoundReport:
    """Bound evaluated on a grid; ``slack`` is positive when the bound is respected."""

    bound_id: BoundId
    dist: str
    precondition_met: bool
    t_grid: tuple
    lhs: tuple
    rhs: tuple
    upper: bool
    extras: dict = field(default_factory=dict)
    slack: tuple = field(init=False)
    verdict: BoundVerdict = field(init=False)

    def __post_init__(self):
        lhs = np.asarray(self.lhs, dtype=float)
        rhs = np.asarray(self.rhs, dtype=float)
        slack = rhs - lhs if self.upper else lhs - rhs
        object.__setattr__(self, "slack", tuple(float(s) for s in slack))
        if not self.precondition_met:
            verdict = BoundVerdict.NOT_APPLICABLE
        elif slack.size and np.all(np.isfinite(slack)) and slack.min() >= -SLACK_TOL:
            verdict = BoundVerdict.HOLDS
        else:
            verdict = BoundVerdict.FAILS
        object.__setattr__(self, "verdict", verdict)

    @property
    def min_slack(self) -> float:
        return min(self.slack) if self.slack else math.nan

    def to_dict(self):
        return {
            "bound_id": self.bound_id.value,
            "dist": self.dist,
            "precondition_met": self.precondition_met,
            "t_grid": list(self.t_grid),
            "lhs": list(self.lhs),
            "rhs": list(self.rhs),
            "slack": list(self.slack),
            "verdict": self.verdict.value,
            **self.extras,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def envelope(mu: float, nu: float) -> float:
    """``b(mu) = mu log(nu^2 / (2 mu))``."""
    return mu * math.log(nu * nu / (2.0 * mu))


def envelope_maximum(nu: float) -> tuple[float, float]:
    """Maximizer ``mu_M`` of the envelope over ``(0, nu]`` and ``b(mu_M)``."""
    if nu < 2.0 * math.e:
        mu = nu * nu / (2.0 * math.e)
        return mu, mu
    return nu, nu * math.log(nu / 2.0)


def bound_global(d: Distribution, cfg: QuadratureConfig = MEASURE_CONFIG) -> BoundReport:
    """``Hw <= mu log(nu^2 / (2 mu))`` for a finite support ``[0, nu]``."""
    nu = d.upper
    if not math.isfinite(nu):
        return BoundReport(BoundId.EQ24_GLOBAL, d.spec, False, (), (), (), True,
                           {"reason": "support end is infinite"})
    mu = d.mean
    mu_m, b_m = envelope_maximum(nu)
    return BoundReport(BoundId.EQ24_GLOBAL, d.spec, True, (), (weighted_entropy(d, cfg),),
                       (envelope(mu, nu),), True, {"mu": mu, "mu_M": mu_m, "b_mu_M": b_m})


def _monotone_grid(d):
    m = d.moments
    hi = min(m.q_high, d.upper)
    lo = m.q_low if m.q_low > 0 else hi * 1e-3
    return np.geomspace(lo, hi, _MONOTONE_POINTS)


def is_decreasing_on_grid(fn, ts) -> bool:
    """Non-strict decrease of ``fn`` on consecutive grid pairs, 1e-9 relative slack."""
    vals = [fn(float(t)) for t in ts]
    return all(b <= a + _MONOTONE_RTOL * max(abs(a), abs(b), 1e-300)
               for a, b in zip(vals, vals[1:]))


def _grid_or_default(d, t_grid, n=10):
    if t_grid is not None:
        return tuple(float(t) for t in np.atleast_1d(t_grid))
    return tuple(float(t) for t in default_grid(d, n))


def bound_residual_lower(d: Distribution, t_grid=None,
                         cfg: QuadratureConfig = MEASURE_CONFIG) -> BoundReport:
    """``Hw(t) >= -delta(t) log lambda(t)`` under a decreasing hazard."""
    ts = _grid_or_default(d, t_grid)
    ok = is_decreasing_on_grid(d.hazard, _monotone_grid(d))
    if not ok:
        return BoundReport(BoundId.EQ14_RESIDUAL_LOWER, d.spec, False, ts, (), (), False,
                           {"reason": "hazard is not decreasing"})
    lhs = [weighted_residual_entropy(d, t, cfg=cfg) for t in ts]
    rhs = [-mean_residual_value(d, t, cfg=cfg) * math.log(d.hazard(t)) for t in ts]
    return BoundReport(BoundId.EQ14_RESIDUAL_LOWER, d.spec, True, ts, tuple(lhs), tuple(rhs), False)


def bound_past_upper(d: Distribution, t_grid=None,
                     cfg: QuadratureConfig = MEASURE_CONFIG) -> tuple[BoundReport, BoundReport]:
    """Two upper bounds for the weighted past entropy.

    ``Hw_past(t) <= mu(t) log(t^2 / (2 mu(t)))`` always, and
    ``Hw_past(t) <= int_0^t x tau(x) dx - mu(t) [1 + log tau(t)]`` under a
    decreasing reversed hazard.
    """
    ts = _grid_or_default(d, t_grid)
    lhs = [weighted_past_entropy(d, t, cfg=cfg) for t in ts]
    mus = [mean_past_lifetime(d, t, cfg=cfg) for t in ts]
    rhs25 = [mu * math.log(t * t / (2.0 * mu)) for t, mu in zip(ts, mus)]
    eq25 = BoundReport(BoundId.EQ25_PAST_UPPER, d.spec, True, ts, tuple(lhs), tuple(rhs25), True)

    ok = is_decreasing_on_grid(d.reversed_hazard, _monotone_grid(d))
    if not ok:
        eq17 = BoundReport(BoundId.EQ17_PAST_UPPER, d.spec, False, ts, (), (), True,
                           {"reason": "reversed hazard is not decreasing"})
        return eq25, eq17

    def x_tau(x):
        F = np.asarray(d.cdf(x))
        f = np.asarray(d.density(x))
        return np.where(F > 1e-300, x * f / np.where(F > 1e-300, F, 1.0), 0.0)

    rhs17 = [integrate_over(d, x_tau, d.lower, t, cfg) - mu * (1.0 + math.log(d.reversed_hazard(t)))
             for t, mu in zip(ts, mus)]
    eq17 = BoundReport(BoundId.EQ17_PAST_UPPER, d.spec, True, ts, tuple(lhs), tuple(rhs17), True)
    return eq25, eq17


# -- classification --------------------------------------------------------------

class ClassKind(enum.Enum):
    WURL = "wurl"
    WUPL = "wupl"


class ClassVerdict(enum.Enum):
    DECREASING = "Decreasing"
    INCREASING = "Increasing"
    NEITHER = "Neither"


class ClassificationError(RuntimeError):
    pass


@dataclass(frozen=True)
class ClassificationReport:
    class_kind: ClassKind
    dist: str
    verdict: ClassVerdict
    decreasing: bool
    increasing: bool
    derivative_samples: tuple
    zero_tolerance: float

    @property
    def label(self) -> str:
        """``DWURL``, ``IWUPL``... or ``Neither``."""
        if self.verdict is ClassVerdict.NEITHER:
            return "Neither"
        return self.verdict.value[0] + "W" + self.class_kind.value[1:].upper()

    def to_dict(self):
        return {
            "verdict": self.verdict.value,
            "class_kind": self.class_kind.value.upper(),
            "dist": self.dist,
            "label": self.label,
            "decreasing": self.decreasing,
            "increasing": self.increasing,
            "zero_tolerance": self.zero_tolerance,
            "derivative_samples": [{"t": t, "derivative": g} for t, g in self.derivative_samples],
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def _classification_grid(d):
    grid = default_grid(d, 2)
    lo, hi = float(grid[0]), float(grid[-1])
    margin = 0.01 * (hi - lo)
    return np.linspace(lo + margin, hi - margin, _CLASSIFY_POINTS)


def classify(d: Distribution, kind: ClassKind | str,
             cfg: QuadratureConfig = _CURVE_CONFIG) -> ClassificationReport:
    """Monotonicity class of the weighted residual (``wurl``) or past (``wupl``) curve.

    Signs of central differences on 128 interior points decide; derivatives
    within ``1e-7 (1 + max|curve|)`` of zero count for both directions, and a
    curve compatible with both is labelled decreasing.
    """
    kind = ClassKind(kind)
    if kind is ClassKind.WURL:
        curve = lambda s: weighted_residual_entropy(d, s, cfg=cfg)
    else:
        curve = lambda s: weighted_past_entropy(d, s, cfg=cfg)

    samples = []
    biggest = 0.0
    for t in _classification_grid(d):
        t = float(t)
        try:
            g = differentiate(curve, t, domain=(d.lower, d.upper))
            v = curve(t)
        except (ArithmeticError, ValueError):
            continue
        if not (math.isfinite(g) and math.isfinite(v)):
            continue
        samples.append((t, g))
        biggest = max(biggest, abs(v))
    if len(samples) < _MIN_VALID:
        raise ClassificationError(
            f"only {len(samples)} valid derivative samples for {d.spec}; need {_MIN_VALID}")
    tol = 1e-7 * (1.0 + biggest)
    derivs = np.array([g for _, g in samples])
    decreasing = bool(np.all(derivs <= tol))
    increasing = bool(np.all(derivs >= -tol))
    if decreasing:
        verdict = ClassVerdict.DECREASING
    elif increasing:
        verdict = ClassVerdict.INCREASING
    else:
        verdict = ClassVerdict.NEITHER
    return ClassificationReport(kind, d.spec, verdict, decreasing, increasing,
                                tuple(samples), tol)
