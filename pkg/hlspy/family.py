#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Parametrized families Phi: R^(n-1) x J -> R^n whose leaves Gamma_t are the
hypersurfaces x -> Phi(x; t).

Parameter points are arrays (sigma_1, ..., sigma_{n-1}, t); ambient points are
arrays (y_1, ..., y_n).
"""
import itertools
import logging
import numbers
from collections import abc

import numpy

from hlspy.expr import parse_expression, differentiate, simplify, Expression
from hlspy.utils.exception import (SchemaError, OrientationError,
    InversionError, SingularJacobianError, OutOfDomainError,
    ExpressionDomainError)

logger = logging.getLogger(__name__)

DERIVATIVE_MODES = ('symbolic', 'finite-difference')
# inversion accepts preimages whose t lies this fraction of |J| outside J
T_SLACK = 0.05
MAX_HALVINGS = 20
MAX_CONDITION = 1e14


def family_variables(ambient_dim):
    """Return the variable names s1, ..., s(n-1), t of an n-dim family."""
    return ["s{}".format(i + 1) for i in range(ambient_dim - 1)] + ["t"]


class FamilySpec(object):
    """
    A one-parameter family of hypersurfaces given by n component expressions.

    Parameters
    ----------
    name: str
        The name of the family.

    components: list of str or Expression
        The n coordinate functions y_i(s1, ..., s(n-1), t).

    sigma_box: array-like of shape (n-1, 2)
        The closed intervals bounding the leaf coordinates.

    t_interval: array-like of length 2
        The closed interval [t_min, t_max] of leaf labels.

    derivative_mode: 'symbolic' or 'finite-difference', optional
        How Jacobians and second derivatives are computed.

    newton_tol: float, optional (default=1e-12)
        Ambient residual tolerance of phi_invert, relative to max(1, |y|).

    max_newton_iters: int, optional (default=50)
        The maximum number of Newton steps of phi_invert.

    fd_step: float, optional (default=1e-5)
        Central-difference step of finite-difference Jacobians.

    fd_step_second: float, optional (default=1e-4)
        Step of the nested central differences for second derivatives.

    Attributes
    ----------
    n: int
        The ambient dimension.

    variables: list of str
        The parameter variable names s1, ..., s(n-1), t.
    """
    def __init__(
            self,
            name,
            components,
            sigma_box,
            t_interval,
            derivative_mode='symbolic',
            newton_tol=1e-12,
            max_newton_iters=50,
            fd_step=1e-5,
            fd_step_second=1e-4):
        self.name = name
        self.n = len(components)
        if self.n < 2:
            raise ValueError("A family needs at least two components!")
        self.variables = family_variables(self.n)
        self.components = tuple(
            c if isinstance(c, Expression)
            else parse_expression(c, self.variables)
            for c in components
        )
        self.component_texts = tuple(str(c) if isinstance(c, Expression)
            else c for c in components)
        self.sigma_box = numpy.array(sigma_box, dtype=float).reshape(-1, 2)
        self.t_interval = numpy.array(t_interval, dtype=float).reshape(2)
        if len(self.sigma_box) != self.n - 1:
            raise ValueError("sigma_box must have {} intervals!".format(
                self.n - 1))
        if (numpy.any(self.sigma_box[:, 0] >= self.sigma_box[:, 1])
                or self.t_interval[0] >= self.t_interval[1]):
            raise ValueError("Parameter intervals must be non-empty!")
        if derivative_mode == 'fd':
            derivative_mode = 'finite-difference'
        if derivative_mode not in DERIVATIVE_MODES:
            raise ValueError("Unknown derivative mode {}!".format(
                derivative_mode))
        if newton_tol <= 0 or fd_step <= 0 or fd_step_second <= 0:
            raise ValueError("Tolerances and steps must be positive!")
        self.derivative_mode = derivative_mode
        self.newton_tol = newton_tol
        self.max_newton_iters = int(max_newton_iters)
        self.fd_step = fd_step
        self.fd_step_second = fd_step_second
        if derivative_mode == 'symbolic':
            self._set_up_derivatives()

    def __repr__(self):
        return "<FamilySpec {} in R^{}, {} derivatives>".format(
            self.name, self.n, self.derivative_mode)

    def _set_up_derivatives(self):
        self._first = [
            [simplify(differentiate(c, v)) for v in self.variables]
            for c in self.components
        ]
        m = self.n - 1
        self._second = [
            [[simplify(differentiate(self._first[k][i], self.variables[j]))
                for j in range(m)] for i in range(m)]
            for k in range(self.n)
        ]

    @property
    def box(self):
        """The (n, 2) array of all parameter intervals, t last."""
        return numpy.vstack([self.sigma_box, self.t_interval])

    def _env(self, q):
        return dict(zip(self.variables, (float(x) for x in q)))

    def _point(self, q):
        q = numpy.asarray(q, dtype=float).reshape(-1)
        if q.shape[0] != self.n:
            raise ValueError("Parameter point must have {} coordinates!"
                .format(self.n))
        return q

    def contains_t(self, t):
        """Whether t lies in t_interval widened by the inversion slack."""
        lo, hi = self.t_interval
        slack = T_SLACK * (hi - lo)
        return lo - slack <= t <= hi + slack

    def phi_eval(self, q):
        """Evaluate Phi at the parameter point q; returns an n-array."""
        env = self._env(self._point(q))
        return numpy.array([c._evaluate(env) for c in self.components])

    def phi_jacobian(self, q):
        """Return dPhi at q as an n x n matrix whose columns are
        dPhi/ds1, ..., dPhi/ds(n-1), dPhi/dt."""
        q = self._point(q)
        if self.derivative_mode == 'symbolic':
            env = self._env(q)
            return numpy.array([[d._evaluate(env) for d in row]
                for row in self._first])
        h = self.fd_step
        jacobian = numpy.empty((self.n, self.n))
        for j in range(self.n):
            e = numpy.zeros(self.n)
            e[j] = h
            jacobian[:, j] = (self.phi_eval(q + e) - self.phi_eval(q - e)) / (2*h)
        return jacobian

    def phi_second_derivatives(self, q):
        """Return the symmetric (n-1, n-1, n) array of d2Phi/ds_i ds_j."""
        q = self._point(q)
        m = self.n - 1
        result = numpy.empty((m, m, self.n))
        if self.derivative_mode == 'symbolic':
            env = self._env(q)
            for i in range(m):
                for j in range(i, m):
                    value = [self._second[k][i][j]._evaluate(env)
                        for k in range(self.n)]
                    result[i, j] = result[j, i] = value
            return result
        h = self.fd_step_second
        center = self.phi_eval(q)
        for i in range(m):
            ei = numpy.zeros(self.n)
            ei[i] = h
            result[i, i] = (self.phi_eval(q + ei) - 2*center
                + self.phi_eval(q - ei)) / h**2
            for j in range(i + 1, m):
                ej = numpy.zeros(self.n)
                ej[j] = h
                result[i, j] = result[j, i] = (
                    self.phi_eval(q + ei + ej) - self.phi_eval(q + ei - ej)
                    - self.phi_eval(q - ei + ej) + self.phi_eval(q - ei - ej)
                ) / (4*h**2)
        return result

    def phi_invert(self, y, seed, check_domain=True):
        """Solve Phi(q) = y for q by damped Newton iteration from seed.

        Parameters
        ----------
        y: array-like
            The ambient target point.

        seed: array-like
            A parameter point in the basin of the true preimage.

        check_domain: bool, optional (default=True)
            Reject preimages whose t lies outside t_interval (widened by 5%).

        Returns
        -------
        numpy.ndarray: the preimage q.
        """
        y = numpy.asarray(y, dtype=float).reshape(-1)
        q = self._point(seed).copy()
        tol = self.newton_tol * max(1.0, numpy.linalg.norm(y))
        residual = self.phi_eval(q) - y
        norm = numpy.linalg.norm(residual)
        for iteration in range(self.max_newton_iters + 1):
            if norm < tol:
                if check_domain and not self.contains_t(q[-1]):
                    raise OutOfDomainError(y, q)
                return q
            if iteration == self.max_newton_iters:
                break
            jacobian = self.phi_jacobian(q)
            if numpy.linalg.cond(jacobian) > MAX_CONDITION:
                raise SingularJacobianError(q)
            try:
                step = numpy.linalg.solve(jacobian, residual)
            except numpy.linalg.LinAlgError:
                raise SingularJacobianError(q)
            scale = 1.0
            for _ in range(MAX_HALVINGS + 1):
                candidate = q - scale * step
                try:
                    candidate_residual = self.phi_eval(candidate) - y
                    candidate_norm = numpy.linalg.norm(candidate_residual)
                except ExpressionDomainError:
                    candidate_norm = numpy.inf
                if candidate_norm < norm:
                    break
                scale *= 0.5
            else:
                raise InversionError(y, iteration, norm)
            logger.debug("newton %d: residual %g, damping %g",
                iteration, candidate_norm, scale)
            q, residual, norm = candidate, candidate_residual, candidate_norm
        raise InversionError(y, self.max_newton_iters, norm)

    def axes(self, counts, t_margin=0.0):
        """Sample nodes per parameter axis.

        Parameters
        ----------
        counts: list of int
            The number of nodes along s1, ..., s(n-1), t.

        t_margin: float, optional (default=0)
            The distance kept from both ends of t_interval.
        """
        counts = list(counts)
        if len(counts) != self.n:
            raise ValueError("Grid needs {} counts, got {}!".format(
                self.n, len(counts)))
        result = [numpy.linspace(lo, hi, int(c))
            for (lo, hi), c in zip(self.sigma_box, counts[:-1])]
        lo, hi = self.t_interval
        result.append(numpy.linspace(lo + t_margin, hi - t_margin,
            int(counts[-1])))
        return result

    def grid(self, counts, t_margin=0.0):
        """Parameter points of the tensor grid, t-major then sigma in
        lexicographic order."""
        axes = self.axes(counts, t_margin)
        return [numpy.array(sigma + (t,))
            for t in axes[-1] for sigma in itertools.product(*axes[:-1])]

    def validate_orientation(self, counts=None):
        """Raise OrientationError at the first grid point with det dPhi <= 0.
        """
        counts = counts or [5] * self.n
        for q in self.grid(counts):
            det = numpy.linalg.det(self.phi_jacobian(q))
            if not det > 0:
                raise OrientationError(q, det)


def _check_interval(value, field):
    if (not isinstance(value, abc.Sequence) or len(value) != 2
            or not all(isinstance(x, numbers.Real)
                and not isinstance(x, bool) for x in value)):
        raise SchemaError(field, "expected a pair of numbers [lo, hi]")
    if not value[0] < value[1]:
        raise SchemaError(field, "expected lo < hi, got {}".format(value))
    return [float(value[0]), float(value[1])]


def load_family(config, validation_grid=None, **kwargs):
    """Build a FamilySpec from a config document and validate it.

    Parameters
    ----------
    config: dict
        The family document {name, ambient_dim, components, sigma_box,
        t_interval, derivative_mode?, tolerances?, ...}.

    validation_grid: list of int, optional
        Per-axis counts of the orientation check (default 5 per axis).

    **kwargs:
        Overrides of FamilySpec numerical settings (newton_tol,
        max_newton_iters, fd_step, fd_step_second, derivative_mode).
    """
    if not isinstance(config, abc.Mapping):
        raise SchemaError('<document>', "expected a JSON object")
    for field in ['name', 'ambient_dim', 'components', 'sigma_box',
            't_interval']:
        if field not in config:
            raise SchemaError(field, "missing")
    name = config['name']
    if not isinstance(name, str) or not name:
        raise SchemaError('name', "expected a non-empty string")
    n = config['ambient_dim']
    if not isinstance(n, numbers.Integral) or isinstance(n, bool) or n < 2:
        raise SchemaError('ambient_dim', "expected an integer >= 2")
    components = config['components']
    if (not isinstance(components, abc.Sequence) or isinstance(components, str)
            or not all(isinstance(c, str) for c in components)):
        raise SchemaError('components', "expected a list of strings")
    if len(components) != n:
        raise SchemaError('components', "expected {} expressions, got {}"
            .format(n, len(components)))
    sigma_box = config['sigma_box']
    if not isinstance(sigma_box, abc.Sequence) or len(sigma_box) != n - 1:
        raise SchemaError('sigma_box', "expected {} intervals".format(n - 1))
    sigma_box = [_check_interval(item, 'sigma_box') for item in sigma_box]
    t_interval = _check_interval(config['t_interval'], 't_interval')
    settings = {'derivative_mode': config.get('derivative_mode', 'symbolic')}
    if settings['derivative_mode'] not in DERIVATIVE_MODES + ('fd',):
        raise SchemaError('derivative_mode', "expected one of {}".format(
            DERIVATIVE_MODES))
    tolerances = config.get('tolerances', {}) or {}
    if not isinstance(tolerances, abc.Mapping):
        raise SchemaError('tolerances', "expected an object")
    for key in ['newton_tol', 'fd_step']:
        if key in tolerances:
            settings[key] = tolerances[key]
    settings.update(kwargs)
    try:
        spec = FamilySpec(name, list(components), sigma_box, t_interval,
            **settings)
    except (ValueError, TypeError) as error:
        raise SchemaError('tolerances', str(error))
    try:
        spec.validate_orientation(validation_grid)
    except ExpressionDomainError as error:
        raise SchemaError('components', str(error))
    return spec
