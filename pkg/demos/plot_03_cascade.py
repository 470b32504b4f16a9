"""
The cascade algorithm
=====================

Iterating M psi(x) = sqrt(2) sum a_k psi(2x - k) from the box function.
Step functions stay exact: every stage halves the step width.
"""

import math

from cascadelab import cascade, filters

###############################################################################
# Norms are conserved for any QMF filter, converging or not.
f = filters.theta_family(math.pi / 4)
stages = cascade.cascade_from_haar(f, 12)
print([round(v, 12) for v in cascade.norms(stages)])

###############################################################################
# Successive distances shrink when Condition E holds.
for n, d in enumerate(cascade.successive_distances(stages), start=1):
    print(f"|psi{n} - psi{n - 1}| = {d:.4f}")

###############################################################################
# At theta = pi/2 the iterates spread out over [0, 3] with their norm fixed at 1,
# so they cannot approach the limit 1/3 on [0, 3] in L^2.
edge = cascade.cascade_from_haar(filters.theta_family(math.pi / 2), 8)
limit = cascade.DyadicStepFunction([1 / 3] * 3, 0, 0, 3)
print([round(cascade.l2_distance(s, limit), 6) for s in edge])

###############################################################################
# The relative polynomial of an orthonormal start stays 1 along the cascade.
print(cascade.relative_polynomial(stages[-1], stages[-1]).trim(1e-12).to_dict())
