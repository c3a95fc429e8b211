#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Function-side geometry of level sets, independent of any parametrization.

For f with grad f(p) != 0, N = grad f/|grad f| and Q the Hessian of f at p,

    kappa(p) = -Q(T, T)/|grad f(p)|                          (n = 2)
    H(p)     = (Q(N, N) - tr Q)/((n-1) |grad f(p)|)

with T = (N2, -N1). These cross-check the family-side curvatures and give
the reference harmonic functions of the catalog.
"""
from dataclasses import dataclass
from typing import Optional

import numpy

from hlspy.expr import (Expression, parse_expression, differentiate,
    simplify, evaluate)
from hlspy.utils.exception import CriticalPointError

CRITICAL_TOL = 1e-12
FD_STEP = 1e-5
FD_LAPLACIAN_STEP = 1e-3


def reference_variables(n):
    return ["y{}".format(i + 1) for i in range(n)]


@dataclass(frozen=True, eq=False)
class ReferenceEntry:
    """A catalog family with its harmonic reference function.

    Attributes
    ----------
    family: FamilySpec

    reference_function: Expression or None
        A harmonic function of y1, ..., yn whose level sets are the leaves,
        None for families that fail the harmonic condition.

    notes: str
        The expected Lambda profile.
    """
    family: object
    reference_function: Optional[Expression]
    notes: str = ""


def _as_expression(f, n):
    if isinstance(f, Expression):
        return f
    return parse_expression(f, reference_variables(n))


def _env(p):
    return dict(zip(reference_variables(len(p)), (float(x) for x in p)))


def gradient_of_scalar(f, p):
    """Symbolic gradient of f (Expression or text in y1..yn) at p."""
    p = numpy.asarray(p, dtype=float)
    f = _as_expression(f, len(p))
    env = _env(p)
    return numpy.array([
        evaluate(simplify(differentiate(f, v)), env)
        for v in reference_variables(len(p))
    ])


def hessian_of_scalar(f, p):
    """Symbolic Hessian of f at p."""
    p = numpy.asarray(p, dtype=float)
    n = len(p)
    f = _as_expression(f, n)
    names = reference_variables(n)
    env = _env(p)
    hessian = numpy.empty((n, n))
    for i in range(n):
        first = simplify(differentiate(f, names[i]))
        for j in range(i, n):
            hessian[i, j] = hessian[j, i] = evaluate(
                simplify(differentiate(first, names[j])), env)
    return hessian


def fd_gradient(func, p, h=FD_STEP):
    """Central-difference gradient of the callable func at p."""
    p = numpy.asarray(p, dtype=float)
    gradient = numpy.empty(len(p))
    for i in range(len(p)):
        e = numpy.zeros(len(p))
        e[i] = h
        gradient[i] = (func(p + e) - func(p - e)) / (2*h)
    return gradient


def fd_laplacian(func, p, h=FD_LAPLACIAN_STEP):
    """(2n+1)-point central-difference Laplacian of func at p."""
    p = numpy.asarray(p, dtype=float)
    center = func(p)
    total = 0.0
    for i in range(len(p)):
        e = numpy.zeros(len(p))
        e[i] = h
        total += func(p + e) - 2*center + func(p - e)
    return total / h**2


def laplacian_of_scalar(f, p, mode='symbolic', h=FD_LAPLACIAN_STEP):
    """Laplacian of f at p, symbolic (trace of the Hessian) or 'fd'."""
    p = numpy.asarray(p, dtype=float)
    f = _as_expression(f, len(p))
    if mode == 'symbolic':
        return float(numpy.trace(hessian_of_scalar(f, p)))
    if mode in ['fd', 'finite-difference']:
        return fd_laplacian(lambda z: evaluate(f, _env(z)), p, h)
    raise ValueError("Unknown mode {}!".format(mode))


def _normal(f, p):
    gradient = gradient_of_scalar(f, p)
    norm = numpy.linalg.norm(gradient)
    if norm < CRITICAL_TOL:
        raise CriticalPointError(p)
    return gradient / norm, norm


def directional_derivatives(f, p, v):
    """Return (D_v f(p), D_v^2 f(p)) = (<grad f, v>, Q_p(v, v))."""
    p = numpy.asarray(p, dtype=float)
    v = numpy.asarray(v, dtype=float)
    return (float(gradient_of_scalar(f, p) @ v),
        float(v @ hessian_of_scalar(f, p) @ v))


def level_curvature_from_function(f, p):
    """Signed curvature of the level curve of f through p, oriented by
    grad f."""
    p = numpy.asarray(p, dtype=float)
    if len(p) != 2:
        raise ValueError("Level curvature needs a plane point!")
    f = _as_expression(f, 2)
    normal, norm = _normal(f, p)
    tangent = numpy.array([normal[1], -normal[0]])
    return float(-(tangent @ hessian_of_scalar(f, p) @ tangent) / norm)


def mean_curvature_from_function(f, p):
    """Mean curvature of the level hypersurface of f through p, oriented by
    grad f."""
    p = numpy.asarray(p, dtype=float)
    f = _as_expression(f, len(p))
    normal, norm = _normal(f, p)
    hessian = hessian_of_scalar(f, p)
    return float((normal @ hessian @ normal - numpy.trace(hessian))
        / ((len(p) - 1) * norm))


def harmonicity_defect(f, p):
    """(n-1)H - D_N^2 f/D_N f at p, zero iff f is harmonic at p."""
    p = numpy.asarray(p, dtype=float)
    f = _as_expression(f, len(p))
    normal, norm = _normal(f, p)
    if len(p) == 2:
        curvature = level_curvature_from_function(f, p)
    else:
        curvature = mean_curvature_from_function(f, p)
    second = normal @ hessian_of_scalar(f, p) @ normal
    return float((len(p) - 1) * curvature - second / norm)


def affine_match(samples_rec, samples_ref):
    """Least-squares fit samples_ref ~ a * samples_rec + b.

    Returns
    -------
    (a, b, max_abs_err)
    """
    rec = numpy.asarray(samples_rec, dtype=float)
    ref = numpy.asarray(samples_ref, dtype=float)
    if rec.shape != ref.shape or rec.ndim != 1:
        raise ValueError("Samples must be two vectors of equal length!")
    if len(rec) < 3:
        raise ValueError("affine_match needs at least 3 samples!")
    if numpy.ptp(rec) == 0:
        raise ValueError("Reconstructed samples are constant!")
    design = numpy.column_stack([rec, numpy.ones(len(rec))])
    (a, b), *_ = numpy.linalg.lstsq(design, ref, rcond=None)
    return float(a), float(b), float(numpy.max(numpy.abs(a*rec + b - ref)))
