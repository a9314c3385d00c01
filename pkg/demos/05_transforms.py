"""
Monotone transformations
========================

The weighted residual entropy of ``phi(X)`` can be computed three ways. The
change-of-variables formula works for any strictly monotone map. Affine maps
also have a scale-then-shift rule. Direct quadrature on the law of ``phi(X)``
serves as the referee.
"""

import numpy as np

from wentropy.distributions import Exponential, Uniform
from wentropy.transforms import (
    Direction,
    MonotoneTransform,
    affine_residual,
    direct_weighted_residual,
    transformed_weighted_residual,
)

d, phi = Exponential(1.0), MonotoneTransform.affine(2.0, 1.0)
print("Y = 2X + 1, X ~ Exp(1)")
for t in (1.5, 2.0, 3.0, 6.0):
    print(f"t={t:4.1f}  cov={transformed_weighted_residual(d, phi, t):.10f}  "
          f"affine={affine_residual(d, 2.0, 1.0, t):.10f}  "
          f"direct={direct_weighted_residual(d, phi, t):.10f}")

# A decreasing map swaps residual and past on the X side.
recip = MonotoneTransform(lambda x: 1 / (np.asarray(x) + 1),
                          lambda x: -1 / (np.asarray(x) + 1) ** 2,
                          lambda y: 1 / np.asarray(y) - 1,
                          Direction.DECREASING, "1/(x+1)")
u = Uniform(0.0, 1.0)
print("\n1/(X+1), X ~ U(0,1), t=0.75:",
      transformed_weighted_residual(u, recip, 0.75), direct_weighted_residual(u, recip, 0.75))
