"""
Filters and the QMF conditions
==============================

The four-tap family and a few ways of checking that a filter is a
low-pass quadrature mirror filter.
"""

import math

import numpy as np

from cascadelab import filters

###############################################################################
# One angle gives one filter. At theta = -pi/6 we get the 4-tap
# Daubechies filter, at pi/2 a stretched Haar filter.
for theta in (-math.pi / 6, 0.0, math.pi / 4, math.pi / 2):
    f = filters.theta_family(theta)
    print(f"theta = {theta:+.4f}  taps = {np.round(f.coefficients.real, 6)}")

###############################################################################
# validate_qmf reports one residual per orthogonality relation plus the
# low-pass condition m0(1) = sqrt(2).
report = filters.validate_qmf(filters.theta_family(0.3))
print(report.orthogonality, report.lowpass, report.ok)

bad = filters.WaveletFilter([1.0, 1.0], name="not normalized")
print(bad.name, filters.validate_qmf(bad).violations)

###############################################################################
# The frequency-side statement of the same thing: |m0(t)|^2 + |m0(t+pi)|^2 = 2.
t = np.linspace(0, 2 * np.pi, 9)
print(filters.qmf_identity_residual(filters.theta_family(1.1), t).max())

###############################################################################
# Filters round-trip through JSON.
text = filters.theta_family(0.25).to_json()
print(text)
print(filters.WaveletFilter.from_json(text))
