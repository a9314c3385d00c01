"""Numerical checks of the integral and derivative identities among the measures.

Two groups live here:

* identities that hold and are asserted by their reports' verdicts
  (decomposition, tail/head mean identities, affine and product laws, and the
  derivative identities obtained by differentiating the rewritten forms);
* identities as originally printed that do *not* hold on simple families.
  :func:`audit_paper_derivative_identities` evaluates them as printed and only
  reports residuals; nothing in the library depends on them.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .distributions import Distribution, Uniform
from .entropies import (
    MEASURE_CONFIG,
    differential_entropy,
    integrate_over,
    joint_weighted_entropy_independent,
    joint_weighted_entropy_quadrature,
    length_biased_cdf,
    length_biased_survival,
    mean_past_lifetime,
    mean_residual_value,
    past_entropy,
    residual_entropy,
    weighted_entropy,
    weighted_past_entropy,
    weighted_residual_entropy,
)
from .numerics import QuadratureConfig, differentiate
from .serialize import dumps
from .transforms import MonotoneTransform, TransformedDistribution

__all__ = [
    "IdentityId",
    "Verdict",
    "IdentityReport",
    "DERIVATIVE_CONFIG",
    "check_decomposition",
    "check_tail_mean_identity",
    "check_head_mean_identity",
    "audit_paper_derivative_identities",
    "check_corrected_derivatives",
    "check_affine_and_product",
    "audit_limit_claims",
    "audit_uniform_comparison",
    "monotonicity_pairs",
]

# Curves that get differenced need more digits than the default measures.
DERIVATIVE_CONFIG = QuadratureConfig(abs_tol=1e-14, rel_tol=1e-13)

TOL_INTEGRAL = 1e-7
TOL_MEAN = 1e-8
TOL_DECOMPOSITION = 1e-6
TOL_DERIVATIVE = 1e-5
TOL_JOINT = 1e-6
TOL_PRODUCT = 1e-10
TOL_CLAIM = 1e-6


class IdentityId(enum.Enum):
    EQ9 = "Eq9"
    EQ10_CLAIMED = "Eq10_claimed"
    EQ11_CLAIMED = "Eq11_claimed"
    EQ13 = "Eq13"
    EQ16_CLAIMED = "Eq16_claimed"
    THM32_DECOMPOSITION = "Thm32_decomposition"
    PROP21I = "Prop21i"
    PROP21II = "Prop21ii"
    EQ29 = "Eq29"
    CORRECTED_RESIDUAL_DERIVATIVE = "CorrectedResidualDerivative"
    CORRECTED_PAST_DERIVATIVE = "CorrectedPastDerivative"
    CORRECTED_EQ10 = "CorrectedEq10"
    LIMIT_CLAIM_PRINTED = "LimitClaim_printed"
    LIMIT_CLAIM_TRANSPOSED = "LimitClaim_transposed"


class Verdict(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    DIVERGES = "diverges"


@dataclass(frozen=True)
class IdentityReport:
    identity_id: IdentityId
    dist: str
    t_grid: tuple
    lhs: tuple
    rhs: tuple
    tolerance: float
    note: str = ""
    max_abs_residual: float = field(init=False)
    verdict: Verdict = field(init=False)

    def __post_init__(self):
        lhs = np.asarray(self.lhs, dtype=float)
        rhs = np.asarray(self.rhs, dtype=float)
        finite = bool(np.all(np.isfinite(lhs)) and np.all(np.isfinite(rhs)))
        if finite:
            worst = float(np.max(np.abs(lhs - rhs))) if lhs.size else 0.0
            verdict = Verdict.HOLDS if worst <= self.tolerance else Verdict.FAILS
        else:
            worst = math.inf
            verdict = Verdict.DIVERGES
        object.__setattr__(self, "max_abs_residual", worst)
        object.__setattr__(self, "verdict", verdict)

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    def to_dict(self):
        return {
            "identity_id": self.identity_id.value,
            "dist": self.dist,
            "residuals": [{"t": t, "lhs": l, "rhs": r}
                          for t, l, r in zip(self.t_grid, self.lhs, self.rhs)],
            "max_abs_residual": self.max_abs_residual,
            "verdict": self.verdict.value,
            "tolerance": self.tolerance,
            "note": self.note,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def _grid(t):
    return tuple(float(x) for x in np.atleast_1d(np.asarray(t, dtype=float)))


def _report(identity, d, ts, lhs, rhs, tol, note=""):
    spec = d if isinstance(d, str) else d.spec
    return IdentityReport(identity, spec, tuple(ts), tuple(map(float, lhs)),
                          tuple(map(float, rhs)), tol, note)


# -- identities that hold -------------------------------------------------------

def check_decomposition(d: Distribution, t, cfg: QuadratureConfig = MEASURE_CONFIG) -> IdentityReport:
    """Split the weighted entropy at ``t`` into past, residual and mixing terms."""
    ts = _grid(t)
    hw = weighted_entropy(d, cfg)
    ex = d.mean
    lhs, rhs = [], []
    for s in ts:
        F, S = d.cdf(s), d.survival(s)
        value = (ex * (-length_biased_cdf(d, s, cfg) * math.log(F)
                       - length_biased_survival(d, s, cfg) * math.log(S))
                 + F * weighted_past_entropy(d, s, cfg=cfg)
                 + S * weighted_residual_entropy(d, s, cfg=cfg))
        lhs.append(hw)
        rhs.append(value)
    return _report(IdentityId.THM32_DECOMPOSITION, d, ts, lhs, rhs, TOL_DECOMPOSITION)


def check_tail_mean_identity(d: Distribution, t, cfg: QuadratureConfig = MEASURE_CONFIG) -> IdentityReport:
    """``int_t^nu x f = t S(t) + int_t^nu S``."""
    ts = _grid(t)
    lhs = [integrate_over(d, lambda x: x * d.density(x), max(s, d.lower), d.upper, cfg) for s in ts]
    rhs = [s * d.survival(s) + integrate_over(d, d.survival, s, d.upper, cfg) for s in ts]
    return _report(IdentityId.EQ9, d, ts, lhs, rhs, TOL_MEAN)


def check_head_mean_identity(d: Distribution, t, cfg: QuadratureConfig = MEASURE_CONFIG) -> IdentityReport:
    """``int_0^t x f = t F(t) - int_0^t F``."""
    ts = _grid(t)
    lhs = [integrate_over(d, lambda x: x * d.density(x), d.lower, min(s, d.upper), cfg) for s in ts]
    rhs = [s * d.cdf(s) - integrate_over(d, d.cdf, 0.0, s, cfg) for s in ts]
    return _report(IdentityId.EQ13, d, ts, lhs, rhs, TOL_MEAN)


def _deriv(fn, t, d):
    return differentiate(fn, t, domain=(d.lower, d.upper))


def _residual_tail_term(d, t, cfg):
    # int_t^nu (S(y)/S(t)) [H(y) - log(S(y)/S(t))] dy
    st = d.survival(t)

    def g(ys):
        out = np.zeros(len(ys))
        for i, y in enumerate(ys):
            sy = d.survival(float(y))
            if sy <= 1e-280:
                continue
            r = sy / st
            out[i] = r * (residual_entropy(d, float(y), cfg) - math.log(r))
        return out

    return integrate_over(d, g, t, d.upper, cfg)


def check_corrected_derivatives(d: Distribution, t_grid,
                                cfg: QuadratureConfig = DERIVATIVE_CONFIG) -> list[IdentityReport]:
    """Derivative identities obtained by differentiating the rewritten forms.

    * residual: ``dHw(t)/dt = lambda(t) [t log lambda(t) + Hw(t) - delta(t)]``
    * past: ``dHw_past(t)/dt = tau(t) [mu(t) - Hw_past(t) - t log tau(t)]``
    * integral form: ``Hw(t) = t H(t) + int_t^nu (S(y)/S(t)) [H(y) - log(S(y)/S(t))] dy``

    Left sides come from central differences of quadrature curves.
    """
    ts = _grid(t_grid)
    hw = lambda s: weighted_residual_entropy(d, s, cfg=cfg)
    hwp = lambda s: weighted_past_entropy(d, s, cfg=cfg)

    r_lhs, r_rhs, p_lhs, p_rhs, c_lhs, c_rhs = [], [], [], [], [], []
    for t in ts:
        lam = d.hazard(t)
        r_lhs.append(_deriv(hw, t, d))
        r_rhs.append(lam * (t * math.log(lam) + hw(t) - mean_residual_value(d, t, cfg=cfg)))

        tau = d.reversed_hazard(t)
        p_lhs.append(_deriv(hwp, t, d))
        p_rhs.append(tau * (mean_past_lifetime(d, t, cfg=cfg) - hwp(t) - t * math.log(tau)))

        c_lhs.append(hw(t))
        c_rhs.append(t * residual_entropy(d, t, cfg) + _residual_tail_term(d, t, MEASURE_CONFIG))
    return [
        _report(IdentityId.CORRECTED_RESIDUAL_DERIVATIVE, d, ts, r_lhs, r_rhs, TOL_DERIVATIVE),
        _report(IdentityId.CORRECTED_PAST_DERIVATIVE, d, ts, p_lhs, p_rhs, TOL_DERIVATIVE),
        _report(IdentityId.CORRECTED_EQ10, d, ts, c_lhs, c_rhs, TOL_DERIVATIVE),
    ]


def check_affine_and_product(dx: Distribution, dy: Distribution, a: float, b: float,
                             cfg: QuadratureConfig = MEASURE_CONFIG) -> list[IdentityReport]:
    """Affine law for ``aX + b``, independent-pair law, and ``Hw = E(X) H`` for uniforms."""
    a, b = float(a), float(b)
    if not a > 0 or b < 0:
        raise ValueError(f"need a > 0 and b >= 0, got a={a!r}, b={b!r}")
    hw_x = weighted_entropy(dx, cfg)
    h_x = differential_entropy(dx, cfg)
    la = math.log(a)
    y = TransformedDistribution(dx, MonotoneTransform.affine(a, b))
    reports = [_report(IdentityId.PROP21I, dx, (), [weighted_entropy(y, cfg)],
                       [a * (hw_x + dx.mean * la) + b * (h_x + la)], TOL_INTEGRAL,
                       note=f"a={a!r}, b={b!r}; lhs by quadrature on the law of aX+b")]
    reports.append(_report(IdentityId.PROP21II, f"{dx.spec} x {dy.spec}", (),
                           [joint_weighted_entropy_quadrature(dx, dy, cfg)],
                           [joint_weighted_entropy_independent(dx, dy, cfg)], TOL_JOINT,
                           note="lhs by iterated 2-D quadrature"))
    for d in (dx, dy):
        if isinstance(d, Uniform):
            reports.append(_report(IdentityId.EQ29, d, (), [weighted_entropy(d, cfg)],
                                   [d.mean * differential_entropy(d, cfg)], TOL_PRODUCT))
    return reports


# -- claims as printed --------------------------------------------------------------

_EQ10_NOTE = ("printed claim Hw(t) = t H(t) + int_t^nu H(y) dy; the inner integrand drops "
              "the S(y)/S(t) weight and the log(S(y)/S(t)) term (see CorrectedEq10)")
_EQ11_NOTE = ("printed claim dHw/dt = t dH/dt; the correct derivative is "
              "lambda(t) [t log lambda(t) + Hw(t) - delta(t)] (see CorrectedResidualDerivative)")
_EQ16_NOTE = ("printed claim Hw_past(t) = t H_past(t) - int_0^t H_past(y) dy; "
              "reported, not asserted")


def _tail_integral_or_divergence(fn, d, t, cfg):
    """``int_t^nu fn(y) dy``; ``+-inf`` when partial integrals keep growing."""

    def g(ys):
        return np.array([fn(float(y)) for y in ys])

    if math.isfinite(d.upper):
        return integrate_over(d, g, t, d.upper, cfg)
    partial = []
    lo = t
    total = 0.0
    for level in (1e-4, 1e-8, 1e-12):
        hi = max(d.quantile(1.0 - level), lo)
        if hi > lo:
            total += integrate_over(d, g, lo, hi, cfg)
        partial.append(total)
        lo = hi
    step2 = partial[1] - partial[0]
    step3 = partial[2] - partial[1]
    # a convergent tail integral has shrinking increments over these cutoffs
    if abs(step3) > 1e-8 and abs(step3) > 0.5 * abs(step2):
        return math.copysign(math.inf, step3)
    return partial[-1]


def audit_paper_derivative_identities(d: Distribution, t_grid,
                                      cfg: QuadratureConfig = DERIVATIVE_CONFIG) -> list[IdentityReport]:
    """Evaluate the printed residual/past identities as stated. Never raises on failure."""
    ts = _grid(t_grid)
    hw = lambda s: weighted_residual_entropy(d, s, cfg=cfg)
    h = lambda s: residual_entropy(d, s, cfg)
    hbar = lambda s: past_entropy(d, s, cfg)

    e10_l, e10_r, e11_l, e11_r, e16_l, e16_r = [], [], [], [], [], []
    for t in ts:
        e10_l.append(hw(t))
        e10_r.append(t * h(t) + _tail_integral_or_divergence(h, d, t, MEASURE_CONFIG))
        e11_l.append(_deriv(hw, t, d))
        e11_r.append(t * _deriv(h, t, d))
        e16_l.append(weighted_past_entropy(d, t, cfg=cfg))

        def g(ys):
            return np.array([hbar(float(y)) for y in ys])

        e16_r.append(t * hbar(t) - integrate_over(d, g, d.lower, t, MEASURE_CONFIG))
    return [
        _report(IdentityId.EQ10_CLAIMED, d, ts, e10_l, e10_r, TOL_CLAIM, _EQ10_NOTE),
        _report(IdentityId.EQ11_CLAIMED, d, ts, e11_l, e11_r, TOL_CLAIM, _EQ11_NOTE),
        _report(IdentityId.EQ16_CLAIMED, d, ts, e16_l, e16_r, TOL_CLAIM, _EQ16_NOTE),
    ]


def audit_limit_claims(d: Distribution, cfg: QuadratureConfig = MEASURE_CONFIG) -> list[IdentityReport]:
    """Compare the residual/past curves at the support extremes with the static value.

    The printed pairing (residual at the right end, past at the left end) is
    reported next to the transposed pairing (residual at the left end, past at
    the right end); only the latter conditions on a vacuous event.
    """
    hw = weighted_entropy(d, cfg)
    t_lo = d.lower if d.lower > 0 else d.quantile(1e-9)
    t_hi = d.upper if math.isfinite(d.upper) else d.quantile(1.0 - 1e-9)
    t_res_hi = d.quantile(1.0 - 1e-9)
    printed = _report(
        IdentityId.LIMIT_CLAIM_PRINTED, d, (t_res_hi, t_lo),
        [weighted_residual_entropy(d, t_res_hi, cfg=cfg), weighted_past_entropy(d, t_lo, cfg=cfg)],
        [hw, hw], 1e-4, note="residual at the right end, past at the left end")
    transposed = _report(
        IdentityId.LIMIT_CLAIM_TRANSPOSED, d, (d.lower, t_hi),
        [weighted_residual_entropy(d, d.lower, cfg=cfg), weighted_past_entropy(d, t_hi, cfg=cfg)],
        [hw, hw], 1e-4, note="residual at the left end, past at the right end")
    return [printed, transposed]


def audit_uniform_comparison(a: float, b: float) -> dict:
    """Record whether ``Hw >= H`` follows ``E(X) >= 1`` for ``Uniform(a, b)``.

    With ``Hw = E(X) H`` the comparison flips whenever ``H = log(b - a) < 0``.
    """
    d = Uniform(a, b)
    h = differential_entropy(d)
    hw = weighted_entropy(d)
    claimed = "Hw >= H" if d.mean >= 1 else "Hw <= H"
    observed = hw >= h if d.mean >= 1 else hw <= h
    return {"dist": d.spec, "mean": d.mean, "H": h, "Hw": hw,
            "claim": claimed, "claim_holds": bool(observed)}


def monotonicity_pairs(d: Distribution, t_grid, cfg: QuadratureConfig = DERIVATIVE_CONFIG) -> list[dict]:
    """Observed signs of ``dH/dt`` and ``dHw/dt``; reported, nothing asserted."""
    out = []
    for t in _grid(t_grid):
        dh = _deriv(lambda s: residual_entropy(d, s, cfg), t, d)
        dhw = _deriv(lambda s: weighted_residual_entropy(d, s, cfg=cfg), t, d)
        out.append({"t": t, "dH": dh, "dHw": dhw,
                    "same_sign": bool(np.sign(dh) == np.sign(dhw))})
    return out
