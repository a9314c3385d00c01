"""
Weighted entropy of a few lifetime laws
=======================================

Differential entropy ignores where the mass sits on the time axis. The
weighted version multiplies the integrand by ``x``, so two laws with the same
shape but different locations stop looking alike.
"""

import math

from wentropy import distributions as wd
from wentropy.entropies import (
    closed_form_weighted_entropy,
    differential_entropy,
    weighted_entropy,
)

# Quadrature and the closed form side by side. They should agree to about
# eight digits for every family with a registered formula.
laws = [
    wd.Exponential(1.0),
    wd.Uniform(0.0, 2.0),
    wd.GammaDist(2.0, 1.0),
    wd.BetaDist(2.0, 3.0),
    wd.TriangularUp(),
    wd.TriangularDown(),
]
print(f"{'law':32s} {'H':>12s} {'Hw quad':>12s} {'Hw closed':>12s}")
for d in laws:
    print(f"{d.spec:32s} {differential_entropy(d):12.8f} "
          f"{weighted_entropy(d):12.8f} {closed_form_weighted_entropy(d):12.8f}")

# The decreasing triangle comes out at 5/18 - log(2)/3, a little under 0.047.
print("\n5/18 - log(2)/3 =", 5 / 18 - math.log(2) / 3)

# Different laws can share a weighted entropy. Uniform(0, 1) and an exponential
# with rate e^2 both land on zero.
print("\nUniform(0,1):", weighted_entropy(wd.Uniform(0, 1)))
print("Exp(e^2):    ", weighted_entropy(wd.Exponential(math.e ** 2)))

# Moving the mass of a step density around keeps H but changes Hw.
a = wd.PiecewiseConstant((0.7, 0.3))
b = wd.PiecewiseConstant((0.3, 0.7))
print("\nH  :", differential_entropy(a), differential_entropy(b))
print("Hw :", weighted_entropy(a), weighted_entropy(b))
