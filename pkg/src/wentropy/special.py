"""Log-gamma, digamma and the regularized incomplete gamma/beta functions.

Scalar implementations: argument shifting plus Stirling-type asymptotic series
for ``lgamma``/``psi``; power series and modified-Lentz continued fractions for
the incomplete integrals.
"""

import math

__all__ = [
    "log_gamma",
    "digamma",
    "log_beta",
    "reg_inc_gamma",
    "reg_inc_gamma_upper",
    "reg_inc_beta",
]

# B_2k / (2k (2k - 1)) for the Stirling series of log Gamma
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
# B_2k / (2k) for the asymptotic series of psi
_PSI = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
)
_SHIFT = 15.0
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_FPMIN = 1e-300
_EPS = 2.220446049250313e-16
_MAXITER = 10000


class DomainError(ValueError):
    pass


def _positive(name, x):
    x = float(x)
    if not x > 0 or math.isinf(x):
        raise DomainError(f"{name} requires a finite positive argument, got {x!r}")
    return x


def log_gamma(x):
    """log Gamma(x) for x > 0."""
    x = _positive("log_gamma", x)
    shift = 0.0
    while x < _SHIFT:
        shift += math.log(x)
        x += 1.0
    z = 1.0 / (x * x)
    series = 0.0
    for c in reversed(_STIRLING):
        series = series * z + c
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_2PI + series / x - shift


def digamma(x):
    """psi(x) = d/dx log Gamma(x) for x > 0."""
    x = _positive("digamma", x)
    shift = 0.0
    while x < _SHIFT:
        shift += 1.0 / x
        x += 1.0
    z = 1.0 / (x * x)
    series = 0.0
    for c in reversed(_PSI):
        series = series * z + c
    return math.log(x) - 0.5 / x - series * z - shift


def log_beta(a, b):
    a = _positive("log_beta", a)
    b = _positive("log_beta", b)
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b)


def _gamma_series(a, x):
    # P(a, x) by the power series, good for x < a + 1
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_MAXITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x) - log_gamma(a))


def _gamma_cf(a, x):
    # Q(a, x) by the Legendre continued fraction, good for x >= a + 1
    b = x + 1.0 - a
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, _MAXITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return math.exp(-x + a * math.log(x) - log_gamma(a)) * h


def _inc_gamma_pair(a, x):
    a = _positive("reg_inc_gamma", a)
    x = float(x)
    if math.isnan(x) or x < 0:
        raise DomainError(f"reg_inc_gamma requires x >= 0, got {x!r}")
    if x == 0.0:
        return 0.0, 1.0
    if math.isinf(x):
        return 1.0, 0.0
    if x < a + 1.0:
        p = min(1.0, _gamma_series(a, x))
        return p, 1.0 - p
    q = min(1.0, _gamma_cf(a, x))
    return 1.0 - q, q


def reg_inc_gamma(a, x):
    """Regularized lower incomplete gamma P(a, x)."""
    return _inc_gamma_pair(a, x)[0]


def reg_inc_gamma_upper(a, x):
    """Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), accurate in the tail."""
    return _inc_gamma_pair(a, x)[1]


def _beta_cf(a, b, x):
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _MAXITER):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h


def _inc_beta_pair(a, b, x):
    a = _positive("reg_inc_beta", a)
    b = _positive("reg_inc_beta", b)
    x = float(x)
    if math.isnan(x) or not 0.0 <= x <= 1.0:
        raise DomainError(f"reg_inc_beta requires 0 <= x <= 1, got {x!r}")
    if x == 0.0:
        return 0.0, 1.0
    if x == 1.0:
        return 1.0, 0.0
    front = math.exp(a * math.log(x) + b * math.log1p(-x) - log_beta(a, b))
    if x < (a + 1.0) / (a + b + 2.0):
        p = min(1.0, front * _beta_cf(a, b, x) / a)
        return p, 1.0 - p
    q = min(1.0, front * _beta_cf(b, a, 1.0 - x) / b)
    return 1.0 - q, q


def reg_inc_beta(a, b, x):
    """Regularized incomplete beta I_x(a, b)."""
    return _inc_beta_pair(a, b, x)[0]


def reg_inc_beta_upper(a, b, x):
    """1 - I_x(a, b), computed without cancellation near x = 1."""
    return _inc_beta_pair(a, b, x)[1]
