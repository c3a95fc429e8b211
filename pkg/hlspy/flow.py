#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Unit-speed integral curves of the normal field N and the arc-length
derivative of the density phi along them.
"""
import logging
import time

import numpy
import pandas

from hlspy.geometry import frame_at
from hlspy.utils.exception import OutOfDomainError
from hlspy.utils.logger import LoggerFlow

logger = logging.getLogger(__name__)

DPHI_STEP = 1e-4


class FlowTrace(object):
    """
    A sampled normal flow.

    Attributes
    ----------
    arc_length: numpy.ndarray
        Signed arc length s of each point (negative for backward flows).

    ambient: numpy.ndarray
        (m, n) array of ambient points alpha(s).

    params: numpy.ndarray
        (m, n) array of their preimages (sigma..., t).

    step_size: float
        The RK4 step actually used.

    truncated: bool
        Whether the flow stopped because t left t_interval.
    """
    def __init__(self, arc_length, ambient, params, step_size, truncated):
        self.arc_length = numpy.asarray(arc_length, dtype=float)
        self.ambient = numpy.asarray(ambient, dtype=float)
        self.params = numpy.asarray(params, dtype=float)
        self.step_size = step_size
        self.truncated = truncated

    def __repr__(self):
        return "<FlowTrace {} points, s in [{}, {}]{}>".format(
            len(self), self.arc_length[0], self.arc_length[-1],
            ", truncated" if self.truncated else "")

    def __len__(self):
        return len(self.arc_length)

    @property
    def t(self):
        return self.params[:, -1]

    def to_frame(self):
        """Return the trace as a DataFrame with columns s, y1..yn,
        sigma1..sigma(n-1), t."""
        n = self.ambient.shape[1]
        data = {'s': self.arc_length}
        for i in range(n):
            data['y{}'.format(i + 1)] = self.ambient[:, i]
        for i in range(n - 1):
            data['sigma{}'.format(i + 1)] = self.params[:, i]
        data['t'] = self.params[:, -1]
        return pandas.DataFrame(data)


def normal_at_ambient(spec, y, seed):
    """Unit normal N at the ambient point y and its preimage.

    Returns
    -------
    (numpy.ndarray, numpy.ndarray): N(y) and q = Phi^-1(y).
    """
    q = spec.phi_invert(y, seed)
    return frame_at(spec, q).unit_normal, q


def rk4_step(spec, y, q, h, direction=1.0):
    """One classical RK4 step of length h along direction*N from the ambient
    point y = Phi(q). Stage preimages seed the next stage's inversion.

    Returns
    -------
    (numpy.ndarray, numpy.ndarray): the new ambient point and its preimage.
    """
    k1 = direction * frame_at(spec, q).unit_normal
    k2, q2 = normal_at_ambient(spec, y + 0.5*h*k1, q)
    k3, q3 = normal_at_ambient(spec, y + 0.5*h*direction*k2, q2)
    k4, _ = normal_at_ambient(spec, y + h*direction*k3, q3)
    y_next = y + h/6.0 * (k1 + direction*(2*k2 + 2*k3 + k4))
    return y_next, spec.phi_invert(y_next, q3)


def default_flow_step(spec):
    """1e-2 times min(1, diameter of the sampled image of the box)."""
    points = numpy.array([spec.phi_eval(q) for q in spec.grid([3] * spec.n)])
    diameter = max(numpy.linalg.norm(a - b) for a in points for b in points)
    return 1e-2 * min(1.0, diameter)


def integrate_normal_flow(
        spec,
        start,
        s_max,
        step=None,
        logFile=0,
        logToConsole=0,
        directory=''):
    """Integrate alpha' = N(alpha) by classical RK4 in ambient space.

    Every stage point is mapped back to parameter space by Newton inversion
    seeded from the nearest known preimage; the flow stops (truncated) as
    soon as t leaves t_interval.

    Parameters
    ----------
    spec: FamilySpec

    start: array-like
        The parameter point alpha(0) is the image of.

    s_max: float
        The arc length to flow. Negative values flow along -N.

    step: float, optional
        The nominal RK4 step (default: default_flow_step(spec)). The step is
        shortened uniformly so that an integer number of steps ends at s_max.

    Returns
    -------
    FlowTrace
    """
    start = numpy.asarray(start, dtype=float)
    if step is None:
        step = default_flow_step(spec)
    if step <= 0:
        raise ValueError("Flow step must be positive!")
    direction = 1.0 if s_max >= 0 else -1.0
    n_steps = int(numpy.ceil(abs(s_max) / step - 1e-9)) if s_max != 0 else 0
    h = abs(s_max) / n_steps if n_steps else step
    t_min, t_max = spec.t_interval

    log = LoggerFlow(logFile=logFile, logToConsole=logToConsole,
        directory=directory)
    log.header(spec.name, h)
    begin = time.time()

    q = start.copy()
    y = spec.phi_eval(q)
    arc, ambient, params = [0.0], [y], [q]
    truncated = False

    for k in range(n_steps):
        try:
            y_next, q_next = rk4_step(spec, y, q, h, direction)
        except OutOfDomainError:
            truncated = True
            break
        if not t_min <= q_next[-1] <= t_max:
            truncated = True
            break
        y, q = y_next, q_next
        arc.append(direction * (k + 1) * h)
        ambient.append(y)
        params.append(q)
        if log.logger.handlers:
            log.text(k + 1, arc[-1], q[-1], frame_at(spec, q).density)
    if truncated:
        logger.debug("flow of %s truncated at s = %g", spec.name, arc[-1])
    log.footer(truncated, time.time() - begin)
    return FlowTrace(arc, ambient, params, h, truncated)


def dphi_ds(spec, q, h=DPHI_STEP):
    """Derivative of phi along the unit-speed integral curve of N through
    Phi(q), by the central difference (phi(q+) - phi(q-))/(2h) where
    q+- = Phi^-1(Phi(q) +- h N(q)).
    """
    if h <= 0:
        raise ValueError("Difference step must be positive!")
    q = numpy.asarray(q, dtype=float)
    normal = frame_at(spec, q).unit_normal
    y = spec.phi_eval(q)
    q_plus = spec.phi_invert(y + h*normal, q)
    q_minus = spec.phi_invert(y - h*normal, q)
    return (frame_at(spec, q_plus).density
        - frame_at(spec, q_minus).density) / (2*h)
