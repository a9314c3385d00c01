"""Static and dynamic (residual/past) information measures.

Natural logarithms throughout. Conditional normalizers ``F(t)`` and
``1 - F(t)`` always come from the distribution's own cdf/survival rather than
from re-integrating the density.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .distributions import (
    BetaDist,
    DegenerateTailError,
    Distribution,
    Exponential,
    GammaDist,
    PiecewiseConstant,
    TriangularDown,
    TriangularUp,
    Uniform,
)
from .numerics import QuadratureConfig, QuadratureError, integrate, xlogx
from .serialize import csv_rows, dumps
from .special import digamma, log_beta, log_gamma

__all__ = [
    "MEASURE_CONFIG",
    "QuadratureWarning",
    "MeasureKind",
    "CurvePoint",
    "EntropyCurve",
    "integrate_over",
    "differential_entropy",
    "weighted_entropy",
    "closed_form_weighted_entropy",
    "closed_form_weighted_residual",
    "closed_form_weighted_past",
    "residual_entropy",
    "past_entropy",
    "weighted_residual_entropy",
    "weighted_past_entropy",
    "mean_residual_value",
    "mean_past_lifetime",
    "length_biased_cdf",
    "length_biased_survival",
    "joint_weighted_entropy_independent",
    "joint_weighted_entropy_quadrature",
    "evaluate",
    "default_grid",
    "entropy_curve",
]

MEASURE_CONFIG = QuadratureConfig(abs_tol=1e-12, rel_tol=1e-11)
_TINY = 1e-300
# survival level at which a non-converging semi-infinite integral is cut off
_TAIL_CUT = 1e-14


class QuadratureWarning(RuntimeWarning):
    """A quadrature did not reach its tolerance; the value is a best estimate."""


def integrate_over(d: Distribution, g, a: float, b: float,
                   cfg: QuadratureConfig = MEASURE_CONFIG) -> float:
    """Integrate ``g`` over ``(a, b)``, splitting at the density's kinks.

    A semi-infinite piece that fails to converge is retried on ``(a, x_cut)``
    where the survival function drops below 1e-14. Remaining
    non-convergence is signalled with :class:`QuadratureWarning`.
    """
    cuts = [a] + [p for p in d.breakpoints if a < p < b] + [b]
    total = 0.0
    ok = True
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        res = integrate(g, lo, hi, cfg)
        if not res.converged and math.isinf(hi):
            x_cut = d.quantile(1.0 - _TAIL_CUT)
            if x_cut > lo:
                res = integrate(g, lo, x_cut, cfg)
        total += res.value
        ok &= res.converged
    if not ok:
        warnings.warn(f"quadrature over ({a!r}, {b!r}) for {d.spec} did not converge",
                      QuadratureWarning, stacklevel=2)
    return total


def _survival_at(d: Distribution, t: float) -> float:
    t = float(t)
    if t < 0 or t >= d.upper:
        raise ValueError(f"t={t!r} outside the support of {d.spec}")
    sf = d.survival(t)
    if sf <= _TINY:
        raise DegenerateTailError(f"{d.spec}: survival at t={t!r} underflows")
    return sf


def _cdf_at(d: Distribution, t: float) -> float:
    t = float(t)
    if t <= 0 or t > d.upper:
        raise ValueError(f"t={t!r} outside the support of {d.spec}")
    cdf = d.cdf(t)
    if cdf <= _TINY:
        raise DegenerateTailError(f"{d.spec}: cdf at t={t!r} underflows")
    return cdf


def _log_density(f):
    return np.log(np.where(f > _TINY, f, 1.0))


# -- static measures ----------------------------------------------------------

def differential_entropy(d: Distribution, cfg: QuadratureConfig = MEASURE_CONFIG) -> float:
    """``-int f log f`` over the support."""
    return -integrate_over(d, lambda x: xlogx(d.density(x)), d.lower, d.upper, cfg)


def weighted_entropy(d: Distribution, cfg: QuadratureConfig = MEASURE_CONFIG) -> float:
    """``-int x f(x) log f(x) dx`` over the support."""
    return -integrate_over(d, lambda x: x * xlogx(d.density(x)), d.lower, d.upper, cfg)


def closed_form_weighted_entropy(d: Distribution) -> float | None:
    """Weighted entropy in closed form, or ``None`` when no formula is registered."""
    if isinstance(d, Exponential):
        lam = d.rate
        return (2.0 - math.log(lam)) / lam
    if isinstance(d, Uniform):
        return 0.5 * (d.a + d.b) * math.log(d.b - d.a)
    if isinstance(d, GammaDist):
        a, b = d.alpha, d.beta
        return (a * b * (a * math.log(b) + log_gamma(a))
                - a * (a - 1.0) * b * (math.log(b) + digamma(a + 1.0))
                + a * (a + 1.0) * b)
    if isinstance(d, TriangularUp):
        return _beta_closed_form(2.0, 1.0)
    if isinstance(d, TriangularDown):
        return _beta_closed_form(1.0, 2.0)
    if isinstance(d, BetaDist):
        return _beta_closed_form(d.alpha, d.beta)
    if isinstance(d, PiecewiseConstant):
        c = d.weights
        h = -math.fsum(xlogx(ck) for ck in c)
        return -math.fsum(k * xlogx(ck) for k, ck in enumerate(c, 1)) - 0.5 * h
    return None


def _beta_closed_form(a: float, b: float) -> float:
    log_b = log_beta(a, b)
    # Gamma(a+1) Gamma(b) / (Gamma(a+b+1) B(a, b)), i.e. E(X)
    ratio = math.exp(log_gamma(a + 1.0) + log_gamma(b) - log_gamma(a + b + 1.0) - log_b)
    # a Gamma(a) / Gamma(a+1), identically one
    unit = math.exp(math.log(a) + log_gamma(a) - log_gamma(a + 1.0))
    return (log_b * ratio
            - (a - 1.0) * ratio * (digamma(a + 1.0) - digamma(a + b + 1.0))
            - (b - 1.0) * ratio * (digamma(b) - unit * digamma(a + b + 1.0)))


def closed_form_weighted_residual(d: Distribution, t: float) -> float | None:
    """Exponential and ``Uniform(0, nu)`` weighted residual entropy in closed form."""
    if isinstance(d, Exponential):
        lam = d.rate
        return t + 2.0 / lam - (t + 1.0 / lam) * math.log(lam)
    if isinstance(d, Uniform) and d.a == 0.0:
        return 0.5 * (t + d.b) * math.log(d.b - t)
    return None


def closed_form_weighted_past(d: Distribution, t: float) -> float | None:
    """Exponential and ``Uniform(0, nu)`` weighted past entropy in closed form."""
    if isinstance(d, Exponential):
        lam = d.rate
        e = math.exp(-lam * t)
        f = -math.expm1(-lam * t)
        bracket = (2.0 / lam - 2.0 / lam * e - 2.0 * t * e - lam * t * t * e
                   + (1.0 / lam - e / lam - t * e) * math.log(f / lam))
        return bracket / f
    if isinstance(d, Uniform) and d.a == 0.0:
        return 0.5 * t * math.log(t)
    return None


# -- dynamic measures -----------------------------------------------------------

def residual_entropy(d: Distribution, t: float, cfg: QuadratureConfig = MEASURE_CONFIG) -> float:
    """Entropy of ``[X | X > t]`` as ``log S(t) - (1/S(t)) int_t f log f``."""
    sf = _survival_at(d, t)
    a = max(float(t), d.lower)

    def g(x):
        f = d.density(x)
        return f / sf * _log_density(f)

    return math.log(sf) - integrate_over(d, g, a, d.upper, cfg)


def past_entropy(d: Distribution, t: float, cfg: QuadratureConfig = MEASURE_CONFIG) -> float:
    """Entropy of ``[X | X <= t]`` as ``log F(t) - (1/F(t)) int_0^t f log f``."""
    cdf = _cdf_at(d, t)
    b = min(float(t), d.upper)

    def g(x):
        f = d.density(x)
        return f / cdf * _log_density(f)

    return math.log(cdf) - integrate_over(d, g, d.lower, b, cfg)


def weighted_residual_entropy(d: Distribution, t: float, form: str = "definition",
                              cfg: QuadratureConfig = MEASURE_CONFIG) -> float:
    """Weighted entropy of the residual lifetime ``[X | X > t]``.

    ``form="definition"`` integrates ``-x g log g`` with ``g = f / S(t)``;
    ``form="rewritten"`` splits off ``log S(t)`` times the tail mean, the
    latter obtained from ``t S(t) + int_t S``.
    """
    sf = _survival_at(d, t)
    t = float(t)
    a = max(t, d.lower)
    if form == "definition":
        return -integrate_over(d, lambda x: x * xlogx(d.density(x) / sf), a, d.upper, cfg)
    if form == "rewritten":
        def g(x):
            f = d.density(x)
            return x * f / sf * _log_density(f)

        head = -integrate_over(d, g, a, d.upper, cfg)
        tail_mean = t + integrate_over(d, lambda y: d.survival(y) / sf, a, d.upper, cfg)
        if t < d.lower:
            # survival is flat at one on (t, lower)
            tail_mean = d.lower + integrate_over(d, lambda y: d.survival(y) / sf,
                                                 d.lower, d.upper, cfg)
        return head + math.log(sf) * tail_mean
    raise ValueError(f"unknown form {form!r}")


def weighted_past_entropy(d: Distribution, t: float, form: str = "definition",
                          cfg: QuadratureConfig = MEASURE_CONFIG) -> float:
    """Weighted entropy of the past lifetime ``[X | X <= t]``.

    ``form="rewritten"`` uses ``int_0^t x f = t F(t) - int_0^t F``.
    """
    cdf = _cdf_at(d, t)
    t = float(t)
    b = min(t, d.upper)
    if form == "definition":
        return -integrate_over(d, lambda x: x * xlogx(d.density(x) / cdf), d.lower, b, cfg)
    if form == "rewritten":
        def g(x):
            f = d.density(x)
            return x * f / cdf * _log_density(f)

        head = -integrate_over(d, g, d.lower, b, cfg)
        head_mean = t - integrate_over(d, lambda y: d.cdf(y) / cdf, d.lower, t, cfg)
        return head + math.log(cdf) * head_mean
    raise ValueError(f"unknown form {form!r}")


def mean_residual_value(d: Distribution, t: float, form: str = "direct",
                        cfg: QuadratureConfig = MEASURE_CONFIG) -> float:
    """``E(X | X > t)``; ``form`` is ``"direct"`` or ``"survival"``."""
    sf = _survival_at(d, t)
    t = float(t)
    a = max(t, d.lower)
    if form == "direct":
        return integrate_over(d, lambda x: x * d.density(x) / sf, a, d.upper, cfg)
    if form == "survival":
        if t < d.lower:
            return d.lower + integrate_over(d, lambda y: d.survival(y) / sf, d.lower, d.upper, cfg)
        return t + integrate_over(d, lambda y: d.survival(y) / sf, a, d.upper, cfg)
    raise ValueError(f"unknown form {form!r}")


def mean_past_lifetime(d: Distribution, t: float, form: str = "direct",
                       cfg: QuadratureConfig = MEASURE_CONFIG) -> float:
    """``E(X | X <= t)``; ``form`` is ``"direct"`` or ``"cdf"``."""
    cdf = _cdf_at(d, t)
    t = float(t)
    b = min(t, d.upper)
    if math.isinf(t):
        return d.mean
    if form == "direct":
        return integrate_over(d, lambda x: x * d.density(x) / cdf, d.lower, b, cfg)
    if form == "cdf":
        return t - integrate_over(d, lambda y: d.cdf(y) / cdf, d.lower, t, cfg)
    raise ValueError(f"unknown form {form!r}")


def length_biased_cdf(d: Distribution, t: float, cfg: QuadratureConfig = MEASURE_CONFIG) -> float:
    """``(1/E X) int_0^t x f(x) dx``."""
    t = float(t)
    if t <= d.lower:
        return 0.0
    if t >= d.upper:
        return 1.0
    return integrate_over(d, lambda x: x * d.density(x), d.lower, t, cfg) / d.mean


def length_biased_survival(d: Distribution, t: float,
                           cfg: QuadratureConfig = MEASURE_CONFIG) -> float:
    """``(1/E X) int_t^nu x f(x) dx``."""
    t = float(t)
    if t <= d.lower:
        return 1.0
    if t >= d.upper:
        return 0.0
    return integrate_over(d, lambda x: x * d.density(x), t, d.upper, cfg) / d.mean


def joint_weighted_entropy_independent(dx: Distribution, dy: Distribution,
                                       cfg: QuadratureConfig = MEASURE_CONFIG) -> float:
    """Weighted entropy of an independent pair: ``E(Y) Hw_X + E(X) Hw_Y``."""
    return dy.mean * weighted_entropy(dx, cfg) + dx.mean * weighted_entropy(dy, cfg)


def joint_weighted_entropy_quadrature(dx: Distribution, dy: Distribution,
                                      cfg: QuadratureConfig = MEASURE_CONFIG) -> float:
    """``-int int x y p log p`` with ``p = f_X(x) f_Y(y)`` by iterated quadrature."""

    def inner(x):
        fx = dx.density(x)
        if fx <= 0.0:
            return 0.0
        return x * integrate_over(dy, lambda y: y * xlogx(fx * dy.density(y)),
                                  dy.lower, dy.upper, cfg)

    def outer(xs):
        return np.array([inner(float(x)) for x in np.atleast_1d(xs)])

    return -integrate_over(dx, outer, dx.lower, dx.upper, cfg)


# -- measure dispatch and curves -----------------------------------------------

class MeasureKind(enum.Enum):
    DIFFERENTIAL_ENTROPY = "differential"
    WEIGHTED_ENTROPY = "weighted"
    RESIDUAL_ENTROPY = "residual"
    PAST_ENTROPY = "past"
    WEIGHTED_RESIDUAL_ENTROPY = "weighted-residual"
    WEIGHTED_PAST_ENTROPY = "weighted-past"
    MEAN_RESIDUAL_VALUE = "mean-residual"
    MEAN_PAST_LIFETIME = "mean-past"
    LENGTH_BIASED_CDF = "length-biased-cdf"
    LENGTH_BIASED_SURVIVAL = "length-biased-survival"

    @property
    def dynamic(self) -> bool:
        return self not in (MeasureKind.DIFFERENTIAL_ENTROPY, MeasureKind.WEIGHTED_ENTROPY)


_DYNAMIC = {
    MeasureKind.RESIDUAL_ENTROPY: residual_entropy,
    MeasureKind.PAST_ENTROPY: past_entropy,
    MeasureKind.WEIGHTED_RESIDUAL_ENTROPY: weighted_residual_entropy,
    MeasureKind.WEIGHTED_PAST_ENTROPY: weighted_past_entropy,
    MeasureKind.MEAN_RESIDUAL_VALUE: mean_residual_value,
    MeasureKind.MEAN_PAST_LIFETIME: mean_past_lifetime,
    MeasureKind.LENGTH_BIASED_CDF: length_biased_cdf,
    MeasureKind.LENGTH_BIASED_SURVIVAL: length_biased_survival,
}


def evaluate(d: Distribution, kind: MeasureKind | str, t: float | None = None,
             cfg: QuadratureConfig = MEASURE_CONFIG) -> float:
    kind = MeasureKind(kind)
    if kind is MeasureKind.DIFFERENTIAL_ENTROPY:
        return differential_entropy(d, cfg)
    if kind is MeasureKind.WEIGHTED_ENTROPY:
        return weighted_entropy(d, cfg)
    if t is None:
        raise ValueError(f"{kind.value} needs a time argument t")
    return _DYNAMIC[kind](d, t, cfg=cfg)


def default_grid(d: Distribution, n: int = 512) -> np.ndarray:
    """``n`` points from the 0.1% to the 99.9% quantile, capped at the support end."""
    m = d.moments
    hi = min(m.q_high, d.upper)
    return np.linspace(m.q_low, hi, n)


@dataclass(frozen=True)
class CurvePoint:
    t: float
    value: float
    converged: bool


@dataclass(frozen=True)
class EntropyCurve:
    kind: MeasureKind
    dist: str
    grid: tuple[CurvePoint, ...] = field(default_factory=tuple)

    def __post_init__(self):
        ts = [p.t for p in self.grid]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("curve abscissae must be strictly increasing")

    @property
    def t(self) -> np.ndarray:
        return np.array([p.t for p in self.grid])

    @property
    def values(self) -> np.ndarray:
        return np.array([p.value for p in self.grid])

    def to_dict(self):
        return {
            "kind": self.kind.value,
            "dist": self.dist,
            "grid": [{"t": p.t, "value": p.value, "converged": p.converged} for p in self.grid],
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def to_csv(self) -> str:
        return csv_rows(("t", "value", "converged"),
                        ((p.t, p.value, p.converged) for p in self.grid))

    @classmethod
    def from_dict(cls, obj) -> "EntropyCurve":
        pts = tuple(
            CurvePoint(float(p["t"]), math.nan if p["value"] is None else float(p["value"]),
                       bool(p["converged"]))
            for p in obj["grid"])
        return cls(MeasureKind(obj["kind"]), obj["dist"], pts)


def entropy_curve(d: Distribution, kind: MeasureKind | str, t_grid=None,
                  cfg: QuadratureConfig = MEASURE_CONFIG) -> EntropyCurve:
    """Evaluate a dynamic measure on a grid; per-point failures become ``nan``."""
    kind = MeasureKind(kind)
    if not kind.dynamic:
        raise ValueError(f"{kind.value} is not a dynamic measure")
    ts = default_grid(d) if t_grid is None else np.asarray(t_grid, dtype=float)
    points = []
    for t in ts:
        t = float(t)
        if t < 0 or t > d.upper:
            raise ValueError(f"grid point t={t!r} outside the support of {d.spec}")
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", QuadratureWarning)
            try:
                value = evaluate(d, kind, t, cfg)
                ok = math.isfinite(value)
            except (ArithmeticError, ValueError, QuadratureError):
                value, ok = math.nan, False
        if any(issubclass(w.category, QuadratureWarning) for w in caught):
            ok = False
        points.append(CurvePoint(t, float(value), ok))
    return EntropyCurve(kind, d.spec, tuple(points))
