#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Concentric circles of radius e^t. Accepted with Lambda = 0.
u(t) = t under the gauge u(0) = 0, u'(0) = 1, so U(2, 0) = log 2 = 0.6931.
"""
import math

from hlspy.checker import check_family, check_atlas
from hlspy.reconstruct import (reconstruct_u, evaluate_harmonic,
    u_via_line_integral, verify_gradient_law)
from hlspy.utils.examples import construct, construct_concentric_circles_atlas

circles = construct('concentric_circles').family
report = check_family(circles, logToConsole=1)
recon = reconstruct_u(circles, report)
print(evaluate_harmonic(circles, recon, [2, 0]), math.log(2))
print(u_via_line_integral(circles, math.log(2)))
law = verify_gradient_law(circles, recon, s_max=1.0, flow_step=1e-3)
print(law.max_error)

atlas = check_atlas([entry.family for entry in
    construct_concentric_circles_atlas()], grid=[21, 11])
print(atlas.verdict)
