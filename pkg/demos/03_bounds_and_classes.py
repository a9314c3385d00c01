"""
Bounds and monotone classes
===========================

A finite support caps the weighted entropy. Hazard monotonicity gives
pointwise bounds on the residual and past curves. The sign of the curve's
derivative sorts laws into decreasing and increasing classes.
"""

import numpy as np

from wentropy.bounds import bound_global, bound_past_upper, bound_residual_lower, classify
from wentropy.distributions import BetaDist, Exponential, GammaDist, TriangularUp, Uniform

# The global cap is met with equality by the uniform law.
for d in (Uniform(0, 3), BetaDist(2, 3), TriangularUp()):
    rep = bound_global(d)
    print(f"{d.spec:28s} Hw={rep.lhs[0]:.6f}  cap={rep.rhs[0]:.6f}  {rep.verdict.value}")

# A decreasing hazard is required for the residual lower bound. Gamma with
# shape above one has an increasing hazard, so the check says so and stops.
for d in (GammaDist(0.5, 1), GammaDist(2, 1)):
    rep = bound_residual_lower(d, [0.5, 1.0, 2.0])
    print(f"{d.spec:28s} {rep.verdict.value}  min slack={rep.min_slack}")

eq25, eq17 = bound_past_upper(Uniform(0, 1), np.linspace(0.1, 0.9, 5))
print("past bounds on Uniform(0,1):", eq25.verdict.value, eq17.verdict.value)

# Uniform(0, nu) is decreasing in the residual sense exactly when nu <= e.
for nu in (2.5, 2.7, 2.75, 3.0):
    print(f"Uniform(0,{nu}):", classify(Uniform(0, nu), "wurl").label)

# For exponentials the derivative is the constant 1 - log(rate).
for rate in (2.0, 3.0):
    print(f"Exp({rate}):", classify(Exponential(rate), "wurl").label)
