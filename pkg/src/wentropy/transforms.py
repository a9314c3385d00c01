"""Weighted residual/past entropies of ``Y = phi(X)`` for strictly monotone ``phi``.

Three routes are provided and are expected to agree:

* the change-of-variables formulas built on the ``phi``-weighted entropies
  (:func:`transformed_weighted_residual`, :func:`transformed_weighted_past`);
* scale/shift composition for affine maps (:func:`affine_residual`,
  :func:`affine_past`);
* direct quadrature on the law of ``Y`` (:class:`TransformedDistribution`).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .distributions import Distribution, format_number
from .entropies import (
    MEASURE_CONFIG,
    _cdf_at,
    _survival_at,
    integrate_over,
    mean_past_lifetime,
    mean_residual_value,
    past_entropy,
    residual_entropy,
    weighted_past_entropy,
    weighted_residual_entropy,
)
from .numerics import QuadratureConfig, xlogx

__all__ = [
    "Direction",
    "PhiKind",
    "MonotoneTransform",
    "TransformedDistribution",
    "NotMonotoneError",
    "phi_entropy",
    "transformed_weighted_residual",
    "transformed_weighted_past",
    "direct_weighted_residual",
    "direct_weighted_past",
    "affine_residual",
    "affine_past",
]

_SCREEN_POINTS = 257


class NotMonotoneError(ValueError):
    pass


class Direction(enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"


class PhiKind(enum.Enum):
    RESIDUAL = "residual"
    PAST = "past"


@dataclass(frozen=True)
class MonotoneTransform:
    """A strictly monotone differentiable map with its derivative and inverse."""

    forward: Callable
    derivative: Callable
    inverse: Callable
    direction: Direction
    name: str = "phi"

    @classmethod
    def identity(cls) -> "MonotoneTransform":
        return cls(lambda x: x, lambda x: np.ones_like(np.asarray(x, dtype=float)),
                   lambda y: y, Direction.INCREASING, "identity")

    @classmethod
    def affine(cls, a: float, b: float = 0.0) -> "MonotoneTransform":
        """``x -> a x + b``; ``a`` may be negative for a decreasing map."""
        a, b = float(a), float(b)
        if a == 0.0:
            raise NotMonotoneError("affine slope must be non-zero")
        return cls(lambda x: a * np.asarray(x, dtype=float) + b,
                   lambda x: np.full_like(np.asarray(x, dtype=float), a),
                   lambda y: (np.asarray(y, dtype=float) - b) / a,
                   Direction.INCREASING if a > 0 else Direction.DECREASING,
                   f"{format_number(a)}*x+{format_number(b)}")

    @property
    def increasing(self) -> bool:
        return self.direction is Direction.INCREASING

    def check(self, d: Distribution) -> None:
        """Screen the derivative sign on 257 support points; raise on mismatch."""
        lo = d.lower
        hi = d.upper if math.isfinite(d.upper) else d.quantile(1.0 - 1e-9)
        xs = np.linspace(lo, hi, _SCREEN_POINTS + 2)[1:-1]
        dphi = np.asarray(self.derivative(xs), dtype=float)
        sign = 1.0 if self.increasing else -1.0
        if not np.all(sign * dphi > 0):
            bad = xs[np.argmax(~(sign * dphi > 0))]
            raise NotMonotoneError(
                f"{self.name}: derivative sign disagrees with {self.direction.value} at x={bad!r}")
        probe = xs[:: max(1, len(xs) // 16)]
        back = np.asarray(self.inverse(self.forward(probe)), dtype=float)
        if not np.allclose(back, probe, rtol=1e-9, atol=1e-9):
            raise NotMonotoneError(f"{self.name}: inverse does not undo forward")


class TransformedDistribution(Distribution):
    """Law of ``Y = phi(X)``: density ``f_X(phi^-1(y)) |d phi^-1 / dy|``."""

    family = "transformed"

    def __init__(self, base: Distribution, phi: MonotoneTransform):
        phi.check(base)
        self.base = base
        self.phi = phi
        ends = sorted(float(phi.forward(np.float64(v))) for v in (base.lower, base.upper))
        self._lower, self._upper = ends

    @property
    def lower(self):
        return self._lower

    @property
    def upper(self):
        return self._upper

    @property
    def breakpoints(self):
        return tuple(sorted(float(self.phi.forward(np.float64(p))) for p in self.base.breakpoints))

    def _pdf(self, y):
        x = np.asarray(self.phi.inverse(y), dtype=float)
        return self.base.density(x) / np.abs(self.phi.derivative(x))

    def _cdf(self, y):
        x = np.asarray(self.phi.inverse(y), dtype=float)
        return self.base.cdf(x) if self.phi.increasing else self.base.survival(x)

    def _sf(self, y):
        x = np.asarray(self.phi.inverse(y), dtype=float)
        return self.base.survival(x) if self.phi.increasing else self.base.cdf(x)

    @property
    def mean(self):
        return integrate_over(self.base, lambda x: self.phi.forward(x) * self.base.density(x),
                              self.base.lower, self.base.upper)

    def quantile(self, p):
        q = self.base.quantile(p if self.phi.increasing else 1.0 - p)
        return float(self.phi.forward(np.float64(q)))

    @property
    def spec(self):
        return f"{self.phi.name}({self.base.spec})"

    def __hash__(self):
        return id(self)


def phi_entropy(d: Distribution, phi: MonotoneTransform, kind: PhiKind | str, t: float,
                cfg: QuadratureConfig = MEASURE_CONFIG) -> float:
    """``phi``-weighted residual or past entropy of ``X`` at ``t``.

    Residual: ``-(1/S(t)) int_t^nu phi(x) f log(f / S(t)) dx``.
    Past: ``-(1/F(t)) int_0^t phi(x) f log(f / F(t)) dx``.
    """
    kind = PhiKind(kind)
    t = float(t)
    if kind is PhiKind.RESIDUAL:
        norm = _survival_at(d, t)
        lo, hi = max(t, d.lower), d.upper
    else:
        norm = _cdf_at(d, t)
        lo, hi = d.lower, min(t, d.upper)
    return -integrate_over(d, lambda x: phi.forward(x) * xlogx(d.density(x) / norm), lo, hi, cfg)


def _log_jacobian_mean(d, phi, kind, s, cfg):
    # E{phi(X) log|phi'(X)| | X > s} (residual) or | X <= s (past)
    if kind is PhiKind.RESIDUAL:
        norm = _survival_at(d, s)
        lo, hi = max(s, d.lower), d.upper
    else:
        norm = _cdf_at(d, s)
        lo, hi = d.lower, min(s, d.upper)

    def g(x):
        return phi.forward(x) * d.density(x) / norm * np.log(np.abs(phi.derivative(x)))

    return integrate_over(d, g, lo, hi, cfg)


def _inverse_at(phi, d, t):
    s = float(phi.inverse(np.float64(t)))
    # clamp rounding spill past the support ends
    if d.upper < s <= d.upper * (1 + 1e-14) + 1e-300:
        s = d.upper
    if d.lower * (1 - 1e-14) - 1e-300 <= s < d.lower:
        s = d.lower
    return s


def transformed_weighted_residual(d: Distribution, phi: MonotoneTransform, t: float,
                                  cfg: QuadratureConfig = MEASURE_CONFIG) -> float:
    """Weighted residual entropy of ``phi(X)`` at ``t`` via the change of variables."""
    phi.check(d)
    s = _inverse_at(phi, d, t)
    kind = PhiKind.RESIDUAL if phi.increasing else PhiKind.PAST
    return phi_entropy(d, phi, kind, s, cfg) + _log_jacobian_mean(d, phi, kind, s, cfg)


def transformed_weighted_past(d: Distribution, phi: MonotoneTransform, t: float,
                              cfg: QuadratureConfig = MEASURE_CONFIG) -> float:
    """Weighted past entropy of ``phi(X)`` at ``t`` via the change of variables."""
    phi.check(d)
    s = _inverse_at(phi, d, t)
    kind = PhiKind.PAST if phi.increasing else PhiKind.RESIDUAL
    return phi_entropy(d, phi, kind, s, cfg) + _log_jacobian_mean(d, phi, kind, s, cfg)


def direct_weighted_residual(d: Distribution, phi: MonotoneTransform, t: float,
                             cfg: QuadratureConfig = MEASURE_CONFIG) -> float:
    """Same quantity by quadrature on the density of ``phi(X)``."""
    return weighted_residual_entropy(TransformedDistribution(d, phi), t, cfg=cfg)


def direct_weighted_past(d: Distribution, phi: MonotoneTransform, t: float,
                         cfg: QuadratureConfig = MEASURE_CONFIG) -> float:
    return weighted_past_entropy(TransformedDistribution(d, phi), t, cfg=cfg)


def _affine_args(d, a, b, t):
    a, b, t = float(a), float(b), float(t)
    if not a > 0:
        raise ValueError(f"scale a must be positive, got {a!r}")
    if b < 0:
        raise ValueError(f"shift b must be non-negative, got {b!r}")
    s = (t - b) / a
    if not d.lower <= s <= d.upper:
        raise ValueError(f"t={t!r} maps to {s!r}, outside the support of {d.spec}")
    return a, b, s


def affine_residual(d: Distribution, a: float, b: float, t: float,
                    cfg: QuadratureConfig = MEASURE_CONFIG) -> float:
    """Weighted residual entropy of ``aX + b`` at ``t`` by scaling then shifting.

    ``H^w_{aX}(u) = a H^w(u/a) + a log(a) delta(u/a)`` and
    ``H^w_{Z+b}(t) = H^w_Z(t-b) + b H_Z(t-b)`` with ``H_{aX}(u) = H(u/a) + log a``.
    """
    a, b, s = _affine_args(d, a, b, t)
    la = math.log(a)
    value = a * weighted_residual_entropy(d, s, cfg=cfg)
    if la != 0.0:
        value += a * la * mean_residual_value(d, s, cfg=cfg)
    if b != 0.0:
        value += b * (residual_entropy(d, s, cfg) + la)
    return value


def affine_past(d: Distribution, a: float, b: float, t: float,
                cfg: QuadratureConfig = MEASURE_CONFIG) -> float:
    """Weighted past entropy of ``aX + b`` at ``t``; ``mu`` replaces ``delta``."""
    a, b, s = _affine_args(d, a, b, t)
    la = math.log(a)
    value = a * weighted_past_entropy(d, s, cfg=cfg)
    if la != 0.0:
        value += a * la * mean_past_lifetime(d, s, cfg=cfg)
    if b != 0.0:
        value += b * (past_entropy(d, s, cfg) + la)
    return value
