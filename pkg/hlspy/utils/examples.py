#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Bundled families. Each construct_<name>() returns a ReferenceEntry whose
reference function (when present) is harmonic with the family's leaves as
level sets.
"""
import copy

# Horizontal lines y2 = t; U = y2
PARALLEL_LINES = {
    'name': 'parallel_lines',
    'ambient_dim': 2,
    'components': ["s1", "t"],
    'sigma_box': [[-1, 1]],
    't_interval': [-1, 1],
    'derivative_mode': 'symbolic',
}

# Circles of radius e^t, traversed clockwise so that N points outwards;
# U = log r
CONCENTRIC_CIRCLES = {
    'name': 'concentric_circles',
    'ambient_dim': 2,
    'components': ["exp(t)*cos(s1)", "-exp(t)*sin(s1)"],
    'sigma_box': [[-3, 3]],
    't_interval': [-0.5, 1.0],
    'derivative_mode': 'symbolic',
}

# The same circles seen from the opposite side, so that the two charts
# cover every leaf
CONCENTRIC_CIRCLES_OPPOSITE = {
    'name': 'concentric_circles_opposite',
    'ambient_dim': 2,
    'components': ["exp(t)*cos(s1+pi)", "-exp(t)*sin(s1+pi)"],
    'sigma_box': [[-3, 3]],
    't_interval': [-0.5, 1.0],
    'derivative_mode': 'symbolic',
}

# Hyperbolas y1*y2 = t on the half-plane y1 > 0; U = y1*y2
HYPERBOLAS = {
    'name': 'hyperbolas',
    'ambient_dim': 2,
    'components': ["exp(s1)", "t*exp(-s1)"],
    'sigma_box': [[-1, 1]],
    't_interval': [-1, 1],
    'derivative_mode': 'symbolic',
}

# Spheres of radius e^t through inverse stereographic projection from the
# south pole; U = 1 - 1/r
SPHERES_CHART = {
    'name': 'spheres_chart',
    'ambient_dim': 3,
    'components': [
        "exp(t)*2*s1/(1+s1^2+s2^2)",
        "exp(t)*2*s2/(1+s1^2+s2^2)",
        "exp(t)*(1-s1^2-s2^2)/(1+s1^2+s2^2)",
    ],
    'sigma_box': [[-1, 1], [-1, 1]],
    't_interval': [-0.5, 0.75],
    'derivative_mode': 'symbolic',
}

# Parabolas y2 = y1^2 + t, not the level sets of any harmonic function
PARABOLAS_COUNTEREXAMPLE = {
    'name': 'parabolas_counterexample',
    'ambient_dim': 2,
    'components': ["s1", "t+s1^2"],
    'sigma_box': [[0, 1]],
    't_interval': [-1, 1],
    'derivative_mode': 'symbolic',
}

# Horizontal planes y3 = t; U = y3
PARALLEL_PLANES = {
    'name': 'parallel_planes',
    'ambient_dim': 3,
    'components': ["s1", "s2", "t"],
    'sigma_box': [[-1, 1], [-1, 1]],
    't_interval': [-1, 1],
    'derivative_mode': 'symbolic',
}


def _entry(document, reference, notes, **kwargs):
    from hlspy.family import load_family
    from hlspy.oracle import ReferenceEntry, reference_variables
    from hlspy.expr import parse_expression
    family = load_family(copy.deepcopy(document), **kwargs)
    if reference is not None:
        reference = parse_expression(
            reference, reference_variables(family.n))
    return ReferenceEntry(family, reference, notes)


def construct_parallel_lines(**kwargs):
    return _entry(PARALLEL_LINES, "y2", "Lambda = 0", **kwargs)


def construct_concentric_circles(**kwargs):
    return _entry(CONCENTRIC_CIRCLES, "log(sqrt(y1^2+y2^2))", "Lambda = 0",
        **kwargs)


def construct_concentric_circles_atlas(**kwargs):
    """Both charts of the circle family."""
    return [
        construct_concentric_circles(**kwargs),
        _entry(CONCENTRIC_CIRCLES_OPPOSITE, "log(sqrt(y1^2+y2^2))",
            "Lambda = 0", **kwargs),
    ]


def construct_hyperbolas(**kwargs):
    return _entry(HYPERBOLAS, "y1*y2", "Lambda = 0", **kwargs)


def construct_spheres_chart(**kwargs):
    return _entry(SPHERES_CHART, "-1/sqrt(y1^2+y2^2+y3^2)", "Lambda = -1",
        **kwargs)


def construct_parabolas_counterexample(**kwargs):
    return _entry(PARABOLAS_COUNTEREXAMPLE, None,
        "Lambda = 2/(1+4*s1^2), not constant on leaves", **kwargs)


def construct_parallel_planes(**kwargs):
    return _entry(PARALLEL_PLANES, "y3", "Lambda = 0", **kwargs)


CATALOG = {
    'parallel_lines': (PARALLEL_LINES, construct_parallel_lines),
    'concentric_circles': (CONCENTRIC_CIRCLES, construct_concentric_circles),
    'hyperbolas': (HYPERBOLAS, construct_hyperbolas),
    'spheres_chart': (SPHERES_CHART, construct_spheres_chart),
    'parabolas_counterexample': (
        PARABOLAS_COUNTEREXAMPLE, construct_parabolas_counterexample),
    'parallel_planes': (PARALLEL_PLANES, construct_parallel_planes),
}


def catalog_names():
    return sorted(CATALOG)


def catalog_document(name):
    """A fresh copy of the config document of a bundled family."""
    if name not in CATALOG:
        raise KeyError("Unknown catalog family {}!".format(name))
    return copy.deepcopy(CATALOG[name][0])


def construct(name, **kwargs):
    if name not in CATALOG:
        raise KeyError("Unknown catalog family {}!".format(name))
    return CATALOG[name][1](**kwargs)
