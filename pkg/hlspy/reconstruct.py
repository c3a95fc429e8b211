#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Reconstruction of the harmonic function U = u o t of an accepted family.

On an accepted family Lambda(t) = u''(t)/u'(t), hence

    u'(t) = u'(t0) exp(int_t0^t Lambda),    u(t) = u(t0) + int_t0^t u'.

The same function is reached by line integrals along the normal flow l from
Phi(0; t0):

    U(l(s)) = u(t0) + |grad U(l(0))| int_0^s exp((n-1) int_0^xi H) dxi.
"""
import logging
import time
from dataclasses import dataclass

import numpy
import pandas
from scipy import integrate, interpolate

from hlspy.flow import (integrate_normal_flow, rk4_step, default_flow_step)
from hlspy.geometry import frame_at, leaf_curvature
from hlspy.oracle import fd_laplacian
from hlspy.utils.exception import (RejectedFamilyError, QuadratureError,
    OutOfDomainError, FlowTruncatedError)
from hlspy.utils.logger import LoggerReconstruction, LoggerGradient
from hlspy.utils.statistics import check_random_state

logger = logging.getLogger(__name__)

MAX_FLOW_STEPS = 100000
MAX_REFINEMENTS = 20


@dataclass(frozen=True)
class Gauge:
    """The free affine normalization of U: u(t_anchor) = u0 and
    u'(t_anchor) = du0 > 0."""
    u0: float = 0.0
    du0: float = 1.0
    t_anchor: float = 0.0

    def __post_init__(self):
        if not self.du0 > 0:
            raise ValueError("du0 must be positive, got {}!".format(self.du0))


def _is_monotone(t, u, du):
    """Fritsch-Carlson sufficient condition for the Hermite interpolant of
    (t, u, du) to be increasing."""
    delta = numpy.diff(u) / numpy.diff(t)
    if numpy.any(delta <= 0):
        return False
    alpha, beta = du[:-1] / delta, du[1:] / delta
    return bool(numpy.all(alpha**2 + beta**2 <= 9))


class ReconstructionResult(object):
    """
    Tabulated u and u' of a reconstruction.

    Attributes
    ----------
    t_grid: numpy.ndarray
        Increasing t nodes.

    u_values, du_values: numpy.ndarray
        u and u' at the nodes.

    lambda_values: numpy.ndarray
        Lambda(t) at the nodes (interpolated slice means).

    gauge: Gauge
    """
    def __init__(self, name, t_grid, u_values, du_values, lambda_values,
            gauge):
        self.name = name
        self.t_grid = numpy.asarray(t_grid, dtype=float)
        self.u_values = numpy.asarray(u_values, dtype=float)
        self.du_values = numpy.asarray(du_values, dtype=float)
        self.lambda_values = numpy.asarray(lambda_values, dtype=float)
        self.gauge = gauge
        if _is_monotone(self.t_grid, self.u_values, self.du_values):
            self._u = interpolate.CubicHermiteSpline(
                self.t_grid, self.u_values, self.du_values)
        else:
            logger.debug("u table of %s fails the monotonicity bound, "
                "using PCHIP", name)
            self._u = interpolate.PchipInterpolator(
                self.t_grid, self.u_values)
        self._du = interpolate.CubicHermiteSpline(
            self.t_grid, self.du_values, self.lambda_values * self.du_values)

    def __repr__(self):
        return "<ReconstructionResult {} on [{}, {}]>".format(
            self.name, self.t_grid[0], self.t_grid[-1])

    def contains(self, t):
        return self.t_grid[0] <= t <= self.t_grid[-1]

    def _check(self, t):
        if not self.contains(t):
            raise ValueError("t = {} lies outside the tabulated range [{}, {}]!"
                .format(t, self.t_grid[0], self.t_grid[-1]))

    def u(self, t):
        self._check(t)
        return float(self._u(t))

    def du(self, t):
        self._check(t)
        return float(self._du(t))

    def to_frame(self):
        return pandas.DataFrame({
            't': self.t_grid, 'u': self.u_values, 'du': self.du_values})


def _panel(lo, hi, m):
    return numpy.linspace(lo, hi, m + 1)


def _split_intervals(total, left, right):
    """Even interval counts of the two panels, proportional to their
    lengths."""
    if left == 0:
        return 0, total
    if right == 0:
        return total, 0
    m_left = 2 * int(round(total / 2 * left / (left + right)))
    m_left = min(max(m_left, 2), total - 2)
    return m_left, total - m_left


def _cumulative(values, nodes):
    """int_nodes[0]^nodes[k] values for every k, by cumulative Simpson."""
    if len(nodes) < 2:
        return numpy.zeros(len(nodes))
    return integrate.cumulative_simpson(values, x=nodes, initial=0)


def _from_anchor(values, nodes, anchor_first):
    """Integrals from the anchor end of a panel to each of its nodes."""
    accumulated = _cumulative(values, nodes)
    return accumulated if anchor_first else accumulated - accumulated[-1]


def reconstruct_u(
        spec,
        report,
        t_samples=201,
        gauge=None,
        logFile=0,
        logToConsole=0,
        directory=''):
    """Tabulate u and u' from the slice means of an accepted CheckReport.

    Parameters
    ----------
    spec: FamilySpec

    report: CheckReport
        An accepted report of spec.

    t_samples: int, optional (default=201)
        Odd node count (>= 5) of the reconstruction grid, which consists of
        two uniform Simpson panels meeting at gauge.t_anchor.

    gauge: Gauge, optional (default=Gauge(0, 1, 0))

    Returns
    -------
    ReconstructionResult
    """
    gauge = gauge or Gauge()
    if not report.accepted:
        raise RejectedFamilyError(report.name, report.residual)
    if t_samples < 5 or t_samples % 2 == 0:
        raise ValueError("t_samples must be odd and >= 5, got {}!"
            .format(t_samples))
    lo, hi = report.slice_t[0], report.slice_t[-1]
    anchor = gauge.t_anchor
    if not lo <= anchor <= hi:
        raise ValueError("Anchor {} lies outside the checked range [{}, {}]!"
            .format(anchor, lo, hi))
    log = LoggerReconstruction(logFile=logFile, logToConsole=logToConsole,
        directory=directory)
    log.header(spec.name, gauge.u0, gauge.du0)
    begin = time.time()

    m_left, m_right = _split_intervals(t_samples - 1, anchor - lo, hi - anchor)
    left = _panel(lo, anchor, m_left)
    right = _panel(anchor, hi, m_right)
    lambda_of_t = interpolate.CubicSpline(report.slice_t, report.slice_mean)
    lambda_left, lambda_right = lambda_of_t(left), lambda_of_t(right)

    du_left = gauge.du0 * numpy.exp(_from_anchor(lambda_left, left, False))
    du_right = gauge.du0 * numpy.exp(_from_anchor(lambda_right, right, True))
    u_left = gauge.u0 + _from_anchor(du_left, left, False)
    u_right = gauge.u0 + _from_anchor(du_right, right, True)
    t_grid = numpy.concatenate([left[:-1], right])
    du_values = numpy.concatenate([du_left[:-1], du_right])
    u_values = numpy.concatenate([u_left[:-1], u_right])
    lambda_values = numpy.concatenate([lambda_left[:-1], lambda_right])
    if not (numpy.all(numpy.isfinite(du_values))
            and numpy.all(numpy.isfinite(u_values))):
        raise QuadratureError("non-finite values in the u table of {}"
            .format(spec.name))
    for row in zip(t_grid, lambda_values, du_values, u_values):
        log.text(*row)
    log.footer(time.time() - begin)
    return ReconstructionResult(spec.name, t_grid, u_values, du_values,
        lambda_values, gauge)


def _default_seed(spec):
    return spec.box.mean(axis=1)


def evaluate_harmonic(spec, recon, y, seed=None):
    """U(y) = u(t(y)), t(y) being the t-coordinate of Phi^-1(y)."""
    seed = _default_seed(spec) if seed is None else seed
    q = spec.phi_invert(y, seed)
    if not recon.contains(q[-1]):
        raise OutOfDomainError(y, q)
    return recon.u(q[-1])


def gradient_of_harmonic(spec, recon, y, seed=None):
    """grad U(y) = (u'(t)/phi) N."""
    seed = _default_seed(spec) if seed is None else seed
    q = spec.phi_invert(y, seed)
    if not recon.contains(q[-1]):
        raise OutOfDomainError(y, q)
    frame = frame_at(spec, q)
    return recon.du(q[-1]) / frame.density * frame.unit_normal


def base_point(spec, t_anchor=0.0):
    """The parameter point (0, ..., 0, t_anchor)."""
    q = numpy.zeros(spec.n)
    q[-1] = t_anchor
    return q


def _march_to(spec, T, start, flow_step):
    """Flow from start along +-N until t = T.

    Returns
    -------
    (numpy.ndarray, list, float): unsigned arc lengths, preimages and the
    orientation (+1 along N, -1 along -N).
    """
    direction = 1.0 if T > start[-1] else -1.0
    q = numpy.asarray(start, dtype=float)
    y = spec.phi_eval(q)
    arc, params = [0.0], [q]
    t_min, t_max = spec.t_interval
    for _ in range(MAX_FLOW_STEPS):
        try:
            y_next, q_next = rk4_step(spec, y, q, flow_step, direction)
        except OutOfDomainError:
            raise FlowTruncatedError(T, q[-1])
        if direction * (q_next[-1] - T) >= 0:
            break
        if not t_min <= q_next[-1] <= t_max:
            raise FlowTruncatedError(T, q[-1])
        y, q = y_next, q_next
        arc.append(arc[-1] + flow_step)
        params.append(q)
    else:
        raise FlowTruncatedError(T, q[-1])
    # last step: solve t(h) = T with dt/ds = 1/phi
    h = direction * (T - q[-1]) * frame_at(spec, q).density
    for _ in range(MAX_REFINEMENTS):
        y_last, q_last = rk4_step(spec, y, q, h, direction)
        miss = q_last[-1] - T
        if abs(miss) < 1e-14 * max(1.0, abs(T)):
            break
        h -= direction * miss * frame_at(spec, q_last).density
    arc.append(arc[-1] + h)
    params.append(q_last)
    return numpy.array(arc), params, direction


def _line_integrals(spec, T, gauge, flow_step):
    flow_step = flow_step or default_flow_step(spec)
    start = base_point(spec, gauge.t_anchor)
    arc, params, direction = _march_to(spec, T, start, flow_step)
    curvature = numpy.array([leaf_curvature(spec, q) for q in params])
    inner = direction * _cumulative(curvature, arc)
    return arc, params, direction, inner, frame_at(spec, start).density


def u_via_line_integral(spec, T, gauge=None, flow_step=None):
    """u(T) by the nested line integrals along the normal flow from
    Phi(0; t_anchor).

    Parameters
    ----------
    spec: FamilySpec

    T: float
        The target leaf label.

    gauge: Gauge, optional (default=Gauge(0, 1, 0))

    flow_step: float, optional
        RK4 step of the flow (default: default_flow_step(spec)).
    """
    gauge = gauge or Gauge()
    if T == gauge.t_anchor:
        return gauge.u0
    arc, _, direction, inner, phi0 = _line_integrals(spec, T, gauge,
        flow_step)
    outer = direction * integrate.simpson(
        numpy.exp((spec.n - 1) * inner), x=arc)
    if not numpy.isfinite(outer):
        raise QuadratureError("non-finite line integral towards t = {}"
            .format(T))
    return gauge.u0 + gauge.du0 / phi0 * outer


def du_along_flow(spec, T, gauge=None, flow_step=None):
    """u'(T) = (du0/phi(l(0))) phi(l(T)) exp((n-1) int H ds) along the normal
    flow l from Phi(0; t_anchor)."""
    gauge = gauge or Gauge()
    if T == gauge.t_anchor:
        return gauge.du0
    _, params, _, inner, phi0 = _line_integrals(spec, T, gauge, flow_step)
    phi_T = frame_at(spec, params[-1]).density
    return gauge.du0 / phi0 * phi_T * numpy.exp((spec.n - 1) * inner[-1])


class GradientLawReport(object):
    """
    |grad U| along a normal flow against the prediction
    |grad U(l(0))| exp((n-1) int_0^s H).
    """
    def __init__(self, name, trace, lhs, rhs):
        self.name = name
        self.trace = trace
        self.lhs = numpy.asarray(lhs)
        self.rhs = numpy.asarray(rhs)
        self.relative_error = numpy.abs(self.lhs - self.rhs) / numpy.abs(
            self.rhs)
        self.max_error = float(numpy.max(self.relative_error))

    def __repr__(self):
        return "<GradientLawReport {} max error {:.3e}>".format(
            self.name, self.max_error)

    def to_frame(self):
        return pandas.DataFrame({
            's': self.trace.arc_length,
            't': self.trace.t,
            'grad_norm': self.lhs,
            'prediction': self.rhs,
            'relative_error': self.relative_error,
        })

    def to_dict(self):
        return {
            'name': self.name,
            'points': len(self.trace),
            'length': float(self.trace.arc_length[-1]),
            'truncated': bool(self.trace.truncated),
            'max_relative_error': self.max_error,
        }


def verify_gradient_law(
        spec,
        recon,
        start=None,
        s_max=1.0,
        flow_step=None,
        logFile=0,
        logToConsole=0,
        directory=''):
    """Compare |grad U| = u'(t)/phi with the curvature prediction along the
    normal flow through start.

    Returns
    -------
    GradientLawReport
    """
    start = base_point(spec, recon.gauge.t_anchor) if start is None else start
    trace = integrate_normal_flow(spec, start, s_max, flow_step)
    log = LoggerGradient(logFile=logFile, logToConsole=logToConsole,
        directory=directory)
    log.header(spec.name)
    begin = time.time()
    lhs, curvature = [], []
    for q in trace.params:
        frame = frame_at(spec, q)
        lhs.append(recon.du(q[-1]) / frame.density)
        curvature.append(leaf_curvature(spec, q, frame))
    accumulated = integrate.cumulative_trapezoid(
        curvature, trace.arc_length, initial=0)
    rhs = lhs[0] * numpy.exp((spec.n - 1) * accumulated)
    report = GradientLawReport(spec.name, trace, lhs, rhs)
    for row in zip(trace.arc_length, report.lhs, report.rhs,
            report.relative_error):
        log.text(*row)
    log.footer(report.max_error, time.time() - begin)
    return report


def harmonicity_check(spec, recon, n_points=100, step=1e-3,
        random_state=None):
    """Max |Delta U| by central differences at random interior points.

    Points are drawn uniformly in the sigma box and in the middle 90% of the
    reconstructed t range.
    """
    random_state = check_random_state(random_state)
    lo, hi = recon.t_grid[0], recon.t_grid[-1]
    margin = 0.05 * (hi - lo)
    box = spec.box.copy()
    box[-1] = [lo + margin, hi - margin]
    worst = 0.0
    for _ in range(n_points):
        q = random_state.uniform(box[:, 0], box[:, 1])
        y = spec.phi_eval(q)
        value = fd_laplacian(
            lambda z: evaluate_harmonic(spec, recon, z, seed=q), y, step)
        worst = max(worst, abs(value))
    return worst
