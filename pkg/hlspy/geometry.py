#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Frames and curvatures of the leaves of a family.

Sign conventions: N points towards increasing t (phi = <N, dPhi/dt> > 0), and
curvatures are signed by N, so that the circle family has kappa = -1/r and an
outward-oriented sphere of radius r has H = -1/r.
"""
from dataclasses import dataclass
from typing import Optional

import numpy

from hlspy.utils.exception import (DegenerateParametrizationError,
    OrientationError, SingularFormError)

DEGENERACY_TOL = 1e-12
MAX_FORM_CONDITION = 1e12


@dataclass(frozen=True, eq=False)
class FrameData:
    """Geometric payload at one parameter point.

    Attributes
    ----------
    point: numpy.ndarray
        The parameter point (sigma..., t).

    jacobian: numpy.ndarray
        dPhi, columns dPhi/ds1, ..., dPhi/dt.

    hodge_normal: numpy.ndarray
        The normal n obtained from the cofactor expansion.

    unit_normal: numpy.ndarray
        N = n/|n|.

    density: float
        phi = det dPhi/|n|, which is 1/|grad t|.

    tangent_norm: float or None
        |gamma_t'| for plane families, None otherwise.
    """
    point: numpy.ndarray
    jacobian: numpy.ndarray
    hodge_normal: numpy.ndarray
    unit_normal: numpy.ndarray
    density: float
    tangent_norm: Optional[float] = None


def hodge_normal(jacobian):
    """Normal vector of the tangent columns of jacobian.

    The i-th entry is the cofactor of e_i in the formal determinant
    det[e | dPhi/ds1 ... dPhi/ds(n-1)], times (-1)^(n-1). For n = 2 this is
    (-dy/ds, dx/ds); for n = 3 the cross product of the two tangents.

    Parameters
    ----------
    jacobian: array-like of shape (n, n) or (n, n-1)
        Only the first n-1 columns are used.
    """
    jacobian = numpy.asarray(jacobian, dtype=float)
    n = jacobian.shape[0]
    tangents = jacobian[:, :n-1]
    normal = numpy.empty(n)
    for i in range(n):
        minor = numpy.delete(tangents, i, axis=0)
        normal[i] = (-1)**(n - 1 + i) * numpy.linalg.det(minor)
    scale = numpy.prod(numpy.linalg.norm(tangents, axis=0))
    if scale == 0 or numpy.linalg.norm(normal) <= DEGENERACY_TOL * scale:
        raise DegenerateParametrizationError()
    return normal


def frame_at(spec, q):
    """Assemble the FrameData of spec at the parameter point q."""
    q = numpy.asarray(q, dtype=float)
    jacobian = spec.phi_jacobian(q)
    det = numpy.linalg.det(jacobian)
    if not det > 0:
        raise OrientationError(q, det)
    try:
        normal = hodge_normal(jacobian)
    except DegenerateParametrizationError:
        raise DegenerateParametrizationError(q)
    length = numpy.linalg.norm(normal)
    return FrameData(
        point=q,
        jacobian=jacobian,
        hodge_normal=normal,
        unit_normal=normal / length,
        density=det / length,
        tangent_norm=length if spec.n == 2 else None,
    )


def signed_curvature_2d(spec, q):
    """Signed curvature (x'y'' - y'x'')/|gamma'|^3 of the plane leaf through
    q, primes being derivatives in sigma."""
    if spec.n != 2:
        raise ValueError("Signed curvature needs a plane family!")
    jacobian = spec.phi_jacobian(q)
    second = spec.phi_second_derivatives(q)[0, 0]
    dx, dy = jacobian[:, 0]
    ddx, ddy = second
    speed = numpy.hypot(dx, dy)
    if speed == 0:
        raise DegenerateParametrizationError(q)
    return (dx*ddy - dy*ddx) / speed**3


def mean_curvature_at(spec, q, frame=None):
    """Mean curvature trace(I^-1 II)/(n-1) of the leaf through q.

    I is the first fundamental form <dPhi/ds_i, dPhi/ds_j> and II the second
    fundamental form <d2Phi/ds_i ds_j, N>. A precomputed frame at q may be
    passed to avoid re-evaluating the Jacobian.
    """
    q = numpy.asarray(q, dtype=float)
    if frame is None:
        frame = frame_at(spec, q)
    m = spec.n - 1
    tangents = frame.jacobian[:, :m]
    first = tangents.T @ tangents
    second = spec.phi_second_derivatives(q) @ frame.unit_normal
    condition = numpy.linalg.cond(first)
    if not condition < MAX_FORM_CONDITION:
        raise SingularFormError(q, condition)
    return numpy.trace(numpy.linalg.solve(first, second)) / m


def leaf_curvature(spec, q, frame=None):
    """kappa for plane families, H otherwise."""
    if spec.n == 2:
        return signed_curvature_2d(spec, q)
    return mean_curvature_at(spec, q, frame)
