#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Concentric spheres of radius e^t in a stereographic chart. Accepted with
Lambda = -1, u(t) = 1 - e^-t, so U = 1 - 1/r.
"""
import math

from hlspy.checker import check_family
from hlspy.reconstruct import (reconstruct_u, u_via_line_integral,
    harmonicity_check)
from hlspy.utils.examples import construct

spheres = construct('spheres_chart').family
report = check_family(spheres, n_processes=2, logToConsole=1)
recon = reconstruct_u(spheres, report, logToConsole=1)
print(recon.u(0.5), 1 - math.exp(-0.5))
print(u_via_line_integral(spheres, 0.5))
print(harmonicity_check(spheres, recon, random_state=0))
