"""Lifetime distributions on a support ``(lower, upper)`` with ``0 <= lower``.

Each family is an immutable dataclass exposing density ``f``, cdf ``F``,
survival ``1 - F``, hazard ``f / (1 - F)``, reversed hazard ``f / F``,
mean and quantile. All point functions accept scalars or numpy arrays.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from typing import ClassVar

import numpy as np

from .numerics import find_root
from .special import (
    log_beta,
    log_gamma,
    reg_inc_beta,
    reg_inc_beta_upper,
    reg_inc_gamma,
    reg_inc_gamma_upper,
)

__all__ = [
    "Distribution",
    "Exponential",
    "Uniform",
    "GammaDist",
    "BetaDist",
    "TriangularUp",
    "TriangularDown",
    "PiecewiseConstant",
    "MomentCache",
    "DegenerateTailError",
    "DistSpecError",
    "parse_dist",
    "format_number",
]

_TINY = 1e-300


class DegenerateTailError(ValueError):
    """A conditional normalizer (survival or cdf) underflowed."""


class DistSpecError(ValueError):
    pass


def format_number(x: float) -> str:
    """17 significant digits, always recognizable as a float."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    s = f"{x:.17g}"
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def _short(x: float) -> str:
    # shortest round-trip text; used for parameters in spec strings
    return repr(float(x))


def _scalar_or_array(x, out):
    return float(out) if np.ndim(x) == 0 else out


@dataclass(frozen=True)
class MomentCache:
    mean: float
    q_low: float
    q_high: float


class Distribution(ABC):
    """Absolutely continuous law of a non-negative lifetime."""

    family: ClassVar[str] = ""

    # -- support ---------------------------------------------------------
    @property
    def lower(self) -> float:
        return 0.0

    @property
    @abstractmethod
    def upper(self) -> float:
        """Right end of the support, ``nu``; may be ``inf``."""

    @property
    def support_end(self) -> float:
        return self.upper

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Interior points where the density is not smooth."""
        return ()

    # -- point functions ----------------------------------------------------
    @abstractmethod
    def _pdf(self, x: np.ndarray) -> np.ndarray:
        """Density for x inside the support."""

    @abstractmethod
    def _cdf(self, x: np.ndarray) -> np.ndarray:
        """CDF for x inside the support."""

    def _sf(self, x: np.ndarray) -> np.ndarray:
        return 1.0 - self._cdf(x)

    def _inside(self, x):
        return (x >= self.lower) & (x < self.upper)

    def density(self, x):
        x = np.asarray(x, dtype=float)
        inside = self._inside(x)
        out = np.zeros_like(x)
        if inside.any():
            out[inside] = self._pdf(x[inside])
        return _scalar_or_array(x, out)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        inside = self._inside(x)
        out = np.where(x >= self.upper, 1.0, 0.0)
        if inside.any():
            out[inside] = self._cdf(x[inside])
        return _scalar_or_array(x, out)

    def survival(self, x):
        x = np.asarray(x, dtype=float)
        inside = self._inside(x)
        out = np.where(x < self.lower, 1.0, 0.0)
        if inside.any():
            out[inside] = self._sf(x[inside])
        return _scalar_or_array(x, out)

    def hazard(self, x):
        sf = np.asarray(self.survival(x))
        if np.any(sf <= _TINY):
            raise DegenerateTailError(
                f"{self.spec}: survival underflows in the right tail at x={x!r}")
        return _scalar_or_array(x, np.asarray(self.density(x)) / sf)

    def reversed_hazard(self, x):
        cdf = np.asarray(self.cdf(x))
        if np.any(cdf <= _TINY):
            raise DegenerateTailError(
                f"{self.spec}: cdf underflows in the left tail at x={x!r}")
        return _scalar_or_array(x, np.asarray(self.density(x)) / cdf)

    # -- summaries ----------------------------------------------------------
    @property
    @abstractmethod
    def mean(self) -> float:
        ...

    def quantile(self, p: float) -> float:
        """Generic inverse cdf by bracketed root finding."""
        p = float(p)
        if not 0.0 < p < 1.0:
            raise ValueError(f"quantile needs 0 < p < 1, got {p!r}")
        lo = self.lower
        hi = self.upper
        if math.isinf(hi):
            hi = max(1.0, 2.0 * lo)
            while self.cdf(hi) < p:
                hi *= 2.0
        return find_root(lambda x: self.cdf(x) - p, lo, hi)

    @cached_property
    def moments(self) -> MomentCache:
        return MomentCache(self.mean, self.quantile(1e-3), self.quantile(1.0 - 1e-3))

    @property
    @abstractmethod
    def spec(self) -> str:
        """Canonical ``family:key=value`` text."""

    def __str__(self):
        return self.spec


def _positive(name, value):
    value = float(value)
    if not value > 0 or math.isinf(value):
        raise ValueError(f"{name} must be positive and finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Exponential(Distribution):
    rate: float
    family: ClassVar[str] = "exponential"

    def __post_init__(self):
        object.__setattr__(self, "rate", _positive("rate", self.rate))

    @property
    def upper(self):
        return math.inf

    def _pdf(self, x):
        return self.rate * np.exp(-self.rate * x)

    def _cdf(self, x):
        return -np.expm1(-self.rate * x)

    def _sf(self, x):
        return np.exp(-self.rate * x)

    @property
    def mean(self):
        return 1.0 / self.rate

    def quantile(self, p):
        if not 0.0 < p < 1.0:
            raise ValueError(f"quantile needs 0 < p < 1, got {p!r}")
        return -math.log1p(-p) / self.rate

    @property
    def spec(self):
        return f"exponential:lambda={_short(self.rate)}"


@dataclass(frozen=True)
class Uniform(Distribution):
    a: float
    b: float
    family: ClassVar[str] = "uniform"

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (0.0 <= a < b) or math.isinf(b):
            raise ValueError(f"uniform needs 0 <= a < b < inf, got a={a!r}, b={b!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def lower(self):
        return self.a

    @property
    def upper(self):
        return self.b

    def _pdf(self, x):
        return np.full_like(x, 1.0 / (self.b - self.a))

    def _cdf(self, x):
        return (x - self.a) / (self.b - self.a)

    def _sf(self, x):
        return (self.b - x) / (self.b - self.a)

    @property
    def mean(self):
        return 0.5 * (self.a + self.b)

    def quantile(self, p):
        if not 0.0 < p < 1.0:
            raise ValueError(f"quantile needs 0 < p < 1, got {p!r}")
        return self.a + p * (self.b - self.a)

    @property
    def spec(self):
        return f"uniform:a={_short(self.a)},b={_short(self.b)}"


@dataclass(frozen=True)
class GammaDist(Distribution):
    """Gamma law with shape ``alpha`` and scale ``beta``."""

    alpha: float
    beta: float
    family: ClassVar[str] = "gamma"

    def __post_init__(self):
        object.__setattr__(self, "alpha", _positive("alpha", self.alpha))
        object.__setattr__(self, "beta", _positive("beta", self.beta))

    @property
    def upper(self):
        return math.inf

    @cached_property
    def _log_norm(self):
        return self.alpha * math.log(self.beta) + log_gamma(self.alpha)

    def _pdf(self, x):
        with np.errstate(divide="ignore"):
            logx = np.log(x)
        logf = (self.alpha - 1.0) * logx - x / self.beta - self._log_norm
        if self.alpha == 1.0:
            logf = -x / self.beta - self._log_norm
        return np.exp(logf)

    def _cdf(self, x):
        return np.array([reg_inc_gamma(self.alpha, xi / self.beta) for xi in x])

    def _sf(self, x):
        return np.array([reg_inc_gamma_upper(self.alpha, xi / self.beta) for xi in x])

    @property
    def mean(self):
        return self.alpha * self.beta

    @property
    def spec(self):
        return f"gamma:alpha={_short(self.alpha)},beta={_short(self.beta)}"


@dataclass(frozen=True)
class BetaDist(Distribution):
    alpha: float
    beta: float
    family: ClassVar[str] = "beta"

    def __post_init__(self):
        object.__setattr__(self, "alpha", _positive("alpha", self.alpha))
        object.__setattr__(self, "beta", _positive("beta", self.beta))

    @property
    def upper(self):
        return 1.0

    @cached_property
    def _log_b(self):
        return log_beta(self.alpha, self.beta)

    def _pdf(self, x):
        with np.errstate(divide="ignore", invalid="ignore"):
            logf = ((self.alpha - 1.0) * np.log(x) if self.alpha != 1.0 else 0.0) + (
                (self.beta - 1.0) * np.log1p(-x) if self.beta != 1.0 else 0.0
            ) - self._log_b
        return np.exp(logf) * np.ones_like(x)

    def _cdf(self, x):
        return np.array([reg_inc_beta(self.alpha, self.beta, xi) for xi in x])

    def _sf(self, x):
        return np.array([reg_inc_beta_upper(self.alpha, self.beta, xi) for xi in x])

    @property
    def mean(self):
        return self.alpha / (self.alpha + self.beta)

    @property
    def spec(self):
        return f"beta:alpha={_short(self.alpha)},beta={_short(self.beta)}"


@dataclass(frozen=True)
class TriangularUp(Distribution):
    """Density ``2t`` on ``(0, 1)``."""

    family: ClassVar[str] = "triangular-up"

    @property
    def upper(self):
        return 1.0

    def _pdf(self, x):
        return 2.0 * x

    def _cdf(self, x):
        return x * x

    def _sf(self, x):
        return (1.0 - x) * (1.0 + x)

    @property
    def mean(self):
        return 2.0 / 3.0

    def quantile(self, p):
        if not 0.0 < p < 1.0:
            raise ValueError(f"quantile needs 0 < p < 1, got {p!r}")
        return math.sqrt(p)

    @property
    def spec(self):
        return "triangular-up"


@dataclass(frozen=True)
class TriangularDown(Distribution):
    """Density ``2(1 - t)`` on ``(0, 1)``."""

    family: ClassVar[str] = "triangular-down"

    @property
    def upper(self):
        return 1.0

    def _pdf(self, x):
        return 2.0 * (1.0 - x)

    def _cdf(self, x):
        return x * (2.0 - x)

    def _sf(self, x):
        return (1.0 - x) ** 2

    @property
    def mean(self):
        return 1.0 / 3.0

    def quantile(self, p):
        if not 0.0 < p < 1.0:
            raise ValueError(f"quantile needs 0 < p < 1, got {p!r}")
        return 1.0 - math.sqrt(1.0 - p)

    @property
    def spec(self):
        return "triangular-down"


@dataclass(frozen=True)
class PiecewiseConstant(Distribution):
    """Density ``c_k`` on the unit bin ``[k - 1, k)``, ``k = 1..n``."""

    weights: tuple[float, ...]
    family: ClassVar[str] = "pwc"

    def __post_init__(self):
        w = tuple(float(c) for c in self.weights)
        if not w or any(c < 0 or not math.isfinite(c) for c in w):
            raise ValueError("pwc weights must be finite and non-negative")
        if abs(math.fsum(w) - 1.0) > 1e-12:
            raise ValueError(f"pwc weights must sum to 1, got {math.fsum(w)!r}")
        object.__setattr__(self, "weights", w)

    @property
    def upper(self):
        return float(len(self.weights))

    @property
    def breakpoints(self):
        return tuple(float(k) for k in range(1, len(self.weights)))

    @cached_property
    def _edges(self):
        return np.concatenate([[0.0], np.cumsum(self.weights)])

    def _bin(self, x):
        return np.clip(np.floor(x).astype(int), 0, len(self.weights) - 1)

    def _pdf(self, x):
        return np.asarray(self.weights)[self._bin(x)]

    def _cdf(self, x):
        k = self._bin(x)
        return self._edges[k] + np.asarray(self.weights)[k] * (x - k)

    def _sf(self, x):
        k = self._bin(x)
        tail = self._edges[-1] - self._edges[k + 1]
        return tail + np.asarray(self.weights)[k] * (k + 1 - x)

    @property
    def mean(self):
        return math.fsum(c * (2 * k - 1) / 2.0 for k, c in enumerate(self.weights, 1))

    def quantile(self, p):
        if not 0.0 < p < 1.0:
            raise ValueError(f"quantile needs 0 < p < 1, got {p!r}")
        edges = self._edges
        for k, c in enumerate(self.weights):
            if c > 0 and p <= edges[k + 1]:
                return float(k + (p - edges[k]) / c)
        return self.upper

    @property
    def spec(self):
        return "pwc:c=" + "|".join(_short(c) for c in self.weights)


# -- text specs ---------------------------------------------------------------

_FAMILIES = {
    "exponential": (Exponential, ("lambda",)),
    "uniform": (Uniform, ("a", "b")),
    "gamma": (GammaDist, ("alpha", "beta")),
    "beta": (BetaDist, ("alpha", "beta")),
    "triangular-up": (TriangularUp, ()),
    "triangular-down": (TriangularDown, ()),
    "pwc": (PiecewiseConstant, ("c",)),
}


def _number(key, text):
    try:
        value = float(text)
    except ValueError:
        raise DistSpecError(f"{key}: not a number: {text!r}") from None
    if not math.isfinite(value):
        raise DistSpecError(f"{key}: must be finite, got {text!r}")
    return value


def parse_dist(text: str) -> Distribution:
    """Parse ``family:key=value,key=value``, e.g. ``uniform:a=0,b=2``.

    Every key of the family must be given exactly once; unknown keys are
    rejected. ``pwc`` takes ``c=c1|c2|...``.
    """
    family, _, params = text.strip().partition(":")
    family = family.strip().lower()
    if family not in _FAMILIES:
        raise DistSpecError(f"unknown family {family!r}; expected one of {sorted(_FAMILIES)}")
    cls, keys = _FAMILIES[family]
    values = {}
    for item in filter(None, (p.strip() for p in params.split(","))):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep:
            raise DistSpecError(f"expected key=value, got {item!r}")
        if key not in keys:
            raise DistSpecError(f"{family}: unknown key {key!r}; expected {list(keys)}")
        if key in values:
            raise DistSpecError(f"{family}: duplicate key {key!r}")
        values[key] = value.strip()
    missing = [k for k in keys if k not in values]
    if missing:
        raise DistSpecError(f"{family}: missing {missing}")
    try:
        if family == "exponential":
            return Exponential(_number("lambda", values["lambda"]))
        if family == "uniform":
            return Uniform(_number("a", values["a"]), _number("b", values["b"]))
        if family == "gamma":
            return GammaDist(_number("alpha", values["alpha"]), _number("beta", values["beta"]))
        if family == "beta":
            return BetaDist(_number("alpha", values["alpha"]), _number("beta", values["beta"]))
        if family == "pwc":
            return PiecewiseConstant(tuple(_number("c", c) for c in values["c"].split("|")))
        return cls()
    except DistSpecError:
        raise
    except ValueError as exc:
        raise DistSpecError(str(exc)) from None
