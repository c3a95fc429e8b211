#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Translated parabolas y2 = y1^2 + t. Lambda = 2/(1 + 4 s1^2) varies along
every leaf, so no harmonic function has these level sets.
"""
from hlspy.checker import check_family
from hlspy.utils.examples import construct

parabolas = construct('parabolas_counterexample').family
report = check_family(parabolas, logToConsole=1)
print(report.verdict, report.residual)
print(report.witness)
print(report.to_frame().describe())
