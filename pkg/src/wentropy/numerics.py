"""Quadrature, finite differences and bracketed root finding.

Everything here is a pure function of its inputs. Integrands are called with
a 1-d ``numpy`` array of abscissae; plain scalar callables (``math.log`` and
friends) are detected and evaluated point by point.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "QuadratureConfig",
    "QuadratureResult",
    "QuadratureError",
    "DifferentiationError",
    "RootError",
    "integrate",
    "differentiate",
    "find_root",
    "xlogx",
]

# Gauss-Kronrod 7/15 pair on [-1, 1]. No node sits on an endpoint.
_XK = np.array([
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144845693013,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144845693013,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
])
_WG = np.zeros(15)
_WG[1::2] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
]

_EPS = np.finfo(float).eps
_TINY = 1e-300


class QuadratureError(ArithmeticError):
    """The integrand produced a non-finite value."""


class DifferentiationError(ValueError):
    pass


class RootError(ValueError):
    """No sign change inside the supplied bracket."""


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_depth: int = 60
    max_intervals: int = 4000

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if self.max_intervals < 1:
            raise ValueError("max_intervals must be >= 1")


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    converged: bool
    evaluations: int

    def __float__(self):
        return self.value


def xlogx(p):
    """``p * log(p)`` extended continuously by 0 for ``p < 1e-300``."""
    p = np.asarray(p, dtype=float)
    safe = np.where(p > _TINY, p, 1.0)
    out = np.where(p > _TINY, p * np.log(safe), 0.0)
    return out if out.ndim else float(out)


def _vectorize(f):
    """Return a callable mapping an abscissa array to a value array."""

    def call(x):
        try:
            y = np.asarray(f(x), dtype=float)
        except (TypeError, ValueError):
            y = None
        if y is None or y.shape != x.shape:
            y = np.array([float(f(float(xi))) for xi in x])
        return y

    return call


def _check_finite(y, x):
    bad = ~np.isfinite(y)
    if bad.any():
        i = int(np.argmax(bad))
        raise QuadratureError(f"integrand returned {y[i]!r} at x={x[i]!r}")


def integrate(f: Callable, a: float, b: float,
              cfg: QuadratureConfig = DEFAULT_CONFIG) -> QuadratureResult:
    """Globally adaptive Gauss-Kronrod (7, 15) integration of ``f`` over ``(a, b)``.

    ``b`` may be ``+inf``; the tail is mapped to ``u in [0, 1)`` through
    ``x = a + u / (1 - u)``. Integrable endpoint singularities are resolved by
    subdivision alone since the rule never evaluates an endpoint.

    Returns a :class:`QuadratureResult`; when the tolerance cannot be met
    within ``cfg.max_depth`` levels (or ``cfg.max_intervals`` pieces) the best
    estimate is returned with ``converged=False``.
    """
    a = float(a)
    b = float(b)
    if math.isnan(a) or math.isnan(b) or not a < b:
        raise ValueError(f"need a < b, got a={a!r}, b={b!r}")
    if math.isinf(a):
        raise ValueError("lower limit must be finite")
    fv = _vectorize(f)

    if math.isinf(b):
        def g(u):
            s = 1.0 - u
            out = np.zeros_like(u)
            # nodes that round onto u == 1 sit at x = inf and contribute nothing
            live = s > 0
            x = a + u[live] / s[live]
            y = fv(x)
            _check_finite(y, x)
            out[live] = y / (s[live] * s[live])
            return out
        lo, hi = 0.0, 1.0
    else:
        def g(x):
            y = fv(x)
            _check_finite(y, x)
            return y
        lo, hi = a, b

    def rule(l, r):
        c = 0.5 * (l + r)
        h = 0.5 * (r - l)
        y = g(c + h * _XK)
        k = h * np.dot(_WK, y)
        gs = h * np.dot(_WG, y)
        # roundoff floor so flat pieces can be accepted
        err = max(abs(k - gs), 50.0 * _EPS * h * np.dot(_WK, np.abs(y)))
        return k, err

    evaluations = 15
    v, e = rule(lo, hi)
    # heap of (-error, left, right, value, depth)
    heap = [(-e, lo, hi, v, 0)]
    total, total_err = v, e
    frozen_value = 0.0
    frozen_err = 0.0
    n_pieces = 1

    while True:
        tol = max(cfg.abs_tol, cfg.rel_tol * abs(total))
        if total_err <= tol:
            total = frozen_value + math.fsum(item[3] for item in heap)
            total_err = frozen_err + math.fsum(-item[0] for item in heap)
            if total_err <= tol:
                break
        if not heap:
            break
        if n_pieces >= cfg.max_intervals:
            break
        neg_e, l, r, v, depth = heapq.heappop(heap)
        m = 0.5 * (l + r)
        if depth >= cfg.max_depth or not (l < m < r):
            frozen_value += v
            frozen_err += -neg_e
            continue
        v1, e1 = rule(l, m)
        v2, e2 = rule(m, r)
        evaluations += 30
        n_pieces += 1
        heapq.heappush(heap, (-e1, l, m, v1, depth + 1))
        heapq.heappush(heap, (-e2, m, r, v2, depth + 1))
        total += v1 + v2 - v
        total_err += e1 + e2 + neg_e
        if n_pieces % 64 == 0:
            # periodic resummation keeps cancellation from drifting
            total = frozen_value + math.fsum(item[3] for item in heap)
            total_err = frozen_err + math.fsum(-item[0] for item in heap)

    tol = max(cfg.abs_tol, cfg.rel_tol * abs(total))
    return QuadratureResult(float(total), float(total_err),
                            bool(total_err <= tol), evaluations)


def differentiate(f: Callable[[float], float], t: float,
                  domain: tuple[float, float] | None = None) -> float:
    """First derivative of ``f`` at ``t`` by finite differences.

    Central differences with ``h = cbrt(eps) * max(1, |t|)``. If the stencil
    would leave the open ``domain``, a second-order one-sided stencil is used
    on the side with room, shrinking ``h`` when neither side has enough.
    """
    t = float(t)
    h = _EPS ** (1.0 / 3.0) * max(1.0, abs(t))
    lo, hi = (-math.inf, math.inf) if domain is None else domain
    if not lo <= t <= hi:
        raise DifferentiationError(f"t={t!r} outside domain {domain!r}")
    room_left = t - lo
    room_right = hi - t
    # stay strictly inside an open domain
    guard = 1.0 - 1e-9

    if room_left > h and room_right > h:
        return (f(t + h) - f(t - h)) / (2.0 * h)

    # a central stencil shrunk by up to 8x still beats a one-sided one
    step = guard * min(room_left, room_right)
    if step >= h / 8.0:
        return (f(t + step) - f(t - step)) / (2.0 * step)

    min_step = 64.0 * _EPS * max(1.0, abs(t))
    if room_right >= room_left:
        step = min(h, guard * room_right / 2.0)
        if step < min_step:
            raise DifferentiationError(f"domain too narrow around t={t!r}")
        return (-3.0 * f(t) + 4.0 * f(t + step) - f(t + 2.0 * step)) / (2.0 * step)
    step = min(h, guard * room_left / 2.0)
    if step < min_step:
        raise DifferentiationError(f"domain too narrow around t={t!r}")
    return (3.0 * f(t) - 4.0 * f(t - step) + f(t - 2.0 * step)) / (2.0 * step)


def find_root(g: Callable[[float], float], lo: float, hi: float,
              rtol: float = 1e-12, maxiter: int = 400) -> float:
    """Zero of ``g`` in ``[lo, hi]`` by bisection safeguarded secant steps.

    Stops once the bracket is narrower than ``rtol * max(1, |x|)`` or an
    exact zero is hit; returns the bracket end with the smaller ``|g|``.
    """
    a, b = float(lo), float(hi)
    if a > b:
        a, b = b, a
    fa, fb = float(g(a)), float(g(b))
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if math.isnan(fa) or math.isnan(fb) or fa * fb > 0:
        raise RootError(
            f"no sign change on [{a!r}, {b!r}]: g={fa!r}, {fb!r}; widen the bracket")

    width = b - a
    for _ in range(maxiter):
        if b - a <= rtol * max(1.0, abs(a), abs(b)):
            break
        # secant (false-position) proposal, accepted only well inside the bracket
        x = b - fb * (b - a) / (fb - fa)
        margin = 0.05 * (b - a)
        if not (a + margin < x < b - margin) or (b - a) > 0.5 * width:
            x = 0.5 * (a + b)
        width = b - a
        fx = float(g(x))
        if fx == 0.0:
            return x
        if math.isnan(fx):
            raise RootError(f"g returned nan at x={x!r}")
        if (fx < 0) == (fa < 0):
            a, fa = x, fx
        else:
            b, fb = x, fx
    return a if abs(fa) <= abs(fb) else b
