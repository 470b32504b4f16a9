"""
Jumps at dyadic points
======================

Right and left limits of the cascade iterates on the grid n 2^-N, tracked
without growing the grid.
"""

import math

import numpy as np

from cascadelab import filters, jumps

###############################################################################
# Start from the box: jumps of size 1 at x = 0 and x = 1.
tr = jumps.trace_init(3)
print(tr.psi_plus)
print(tr.psi_minus)

###############################################################################
# At theta = 9pi/20 the jumps die out slowly; the rate is tied to the second
# eigenvalue -sin(theta) of the local 2x2 matrix.
f = filters.theta_family(9 * math.pi / 20)
print("second eigenvalue:", jumps.second_eigenvalue(f))
tr = jumps.trace_init(10)
for stage in range(1, 1001):
    tr = jumps.trace_step(f, tr)
    if stage in (10, 100, 500, 1000):
        k = int(np.argmax(np.abs(tr.jump)))
        print(f"stage {stage:4d}: max jump {tr.max_jump():.3e} at x = {tr.x[k]:.4f}")
