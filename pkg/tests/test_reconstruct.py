#!/usr/bin/env python3
# -*- coding: utf-8 -*-
import math

import numpy
import pytest

from hlspy.checker import check_family
from hlspy.expr import evaluate
from hlspy.oracle import affine_match, reference_variables
from hlspy.reconstruct import (Gauge, reconstruct_u, evaluate_harmonic,
    gradient_of_harmonic, u_via_line_integral, du_along_flow,
    verify_gradient_law, harmonicity_check)
from hlspy.utils.examples import construct
from hlspy.utils.exception import RejectedFamilyError, FlowTruncatedError

GRIDS = {2: [11, 11], 3: [7, 7, 11]}


def reconstruction(name, gauge=None, t_samples=201):
    entry = construct(name)
    spec = entry.family
    report = check_family(spec, GRIDS[spec.n])
    return entry, reconstruct_u(spec, report, t_samples, gauge)


def random_points(spec, recon, n_points, random_state):
    box = spec.box.copy()
    lo, hi = recon.t_grid[0], recon.t_grid[-1]
    box[-1] = [lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo)]
    return [random_state.uniform(box[:, 0], box[:, 1])
        for _ in range(n_points)]


class TestReconstructU(object):

    def test_circles(self):
        _, recon = reconstruction('concentric_circles')
        assert recon.u(math.log(2)) == pytest.approx(math.log(2), abs=1e-9)
        assert len(recon.t_grid) == 201
        assert numpy.all(numpy.diff(recon.t_grid) > 0)
        assert numpy.all(recon.du_values > 0)
        assert numpy.all(numpy.diff(recon.u_values) > 0)
        frame = recon.to_frame()
        assert list(frame.columns) == ['t', 'u', 'du']

    def test_spheres(self):
        _, recon = reconstruction('spheres_chart')
        assert recon.u(0.5) == pytest.approx(1 - math.exp(-0.5), abs=1e-7)
        numpy.testing.assert_allclose(recon.du_values,
            numpy.exp(-recon.t_grid), rtol=1e-7)

    def test_anchor(self):
        _, recon = reconstruction('hyperbolas', Gauge(2.0, 3.0), 9)
        assert 0.0 in recon.t_grid
        assert recon.u(0.0) == pytest.approx(2.0, abs=1e-14)
        assert recon.du(0.0) == pytest.approx(3.0, abs=1e-14)
        assert len(recon.t_grid) == 9

    def test_errors(self):
        spec = construct('parabolas_counterexample').family
        report = check_family(spec, [5, 5], 1e-3)
        with pytest.raises(RejectedFamilyError):
            reconstruct_u(spec, report)
        spec = construct('hyperbolas').family
        report = check_family(spec, [5, 5])
        with pytest.raises(ValueError):
            reconstruct_u(spec, report, 100)
        with pytest.raises(ValueError):
            reconstruct_u(spec, report, 3)
        with pytest.raises(ValueError):
            reconstruct_u(spec, report, gauge=Gauge(t_anchor=5.0))
        with pytest.raises(ValueError):
            Gauge(0.0, 0.0)
        _, recon = reconstruction('hyperbolas')
        with pytest.raises(ValueError):
            recon.u(2.0)


class TestEvaluateHarmonic(object):

    def test_values(self):
        entry, recon = reconstruction('concentric_circles')
        assert evaluate_harmonic(entry.family, recon, [2, 0]) == pytest.approx(
            math.log(2), abs=1e-7)
        base = entry.family.phi_eval([0, 0])
        assert evaluate_harmonic(entry.family, recon, base) == pytest.approx(
            0, abs=1e-12)
        entry, recon = reconstruction('hyperbolas')
        assert evaluate_harmonic(entry.family, recon, [1, 0.5]) == (
            pytest.approx(0.5, abs=1e-7))

    def test_gauge_covariance(self):
        entry, recon = reconstruction('spheres_chart')
        _, shifted = reconstruction('spheres_chart', Gauge(3.0, 2.0))
        spec = entry.family
        for q in random_points(spec, recon, 10, numpy.random.RandomState(0)):
            y = spec.phi_eval(q)
            assert evaluate_harmonic(spec, shifted, y, q) == pytest.approx(
                3 + 2 * evaluate_harmonic(spec, recon, y, q), abs=1e-10)

    @pytest.mark.parametrize("name, a, b", [
        ('concentric_circles', 1, 0),
        ('hyperbolas', 1, 0),
        ('spheres_chart', 1, -1),
        ('parallel_lines', 1, 0),
        ('parallel_planes', 1, 0),
    ])
    def test_reference(self, name, a, b):
        entry, recon = reconstruction(name)
        spec = entry.family
        names = reference_variables(spec.n)
        rec, ref = [], []
        for q in random_points(spec, recon, 100, numpy.random.RandomState(1)):
            y = spec.phi_eval(q)
            rec.append(evaluate_harmonic(spec, recon, y, q))
            ref.append(evaluate(entry.reference_function, dict(zip(names, y))))
        slope, intercept, error = affine_match(rec, ref)
        assert slope == pytest.approx(a, abs=1e-5)
        assert intercept == pytest.approx(b, abs=1e-5)
        assert error < 1e-5

    def test_gradient(self):
        entry, recon = reconstruction('concentric_circles')
        gradient = gradient_of_harmonic(entry.family, recon, [0, -2],
            [1.5, 0.7])
        numpy.testing.assert_allclose(gradient, [0, -0.5], atol=1e-8)


class TestHarmonicity(object):

    @pytest.mark.parametrize("name", ['concentric_circles', 'hyperbolas',
        'spheres_chart'])
    def test_laplacian(self, name):
        entry, recon = reconstruction(name)
        assert harmonicity_check(entry.family, recon, 100, 1e-3,
            random_state=2) < 1e-4


class TestLineIntegral(object):

    def test_values(self):
        circles = construct('concentric_circles').family
        assert u_via_line_integral(circles, math.log(2)) == pytest.approx(
            math.log(2), abs=1e-6)
        assert u_via_line_integral(circles, -0.3) == pytest.approx(
            -0.3, abs=1e-6)
        assert u_via_line_integral(circles, 0.0, Gauge(1.5, 2.0)) == 1.5
        spheres = construct('spheres_chart').family
        assert u_via_line_integral(spheres, 0.5) == pytest.approx(
            1 - math.exp(-0.5), abs=1e-6)

    @pytest.mark.parametrize("name, lo, hi", [
        ('concentric_circles', -0.45, 0.95),
        ('hyperbolas', -0.9, 0.9),
        ('spheres_chart', -0.45, 0.7),
        ('parallel_lines', -0.9, 0.9),
    ])
    def test_path_equivalence(self, name, lo, hi):
        entry, recon = reconstruction(name)
        for T in numpy.linspace(lo, hi, 10):
            assert u_via_line_integral(entry.family, T) == pytest.approx(
                recon.u(T), abs=1e-5)

    def test_du_along_flow(self):
        entry, recon = reconstruction('spheres_chart')
        for T in [-0.3, 0.2, 0.5]:
            assert du_along_flow(entry.family, T) == pytest.approx(
                math.exp(-T), abs=1e-6)
            assert du_along_flow(entry.family, T) == pytest.approx(
                recon.du(T), abs=1e-6)
        circles = construct('concentric_circles').family
        assert du_along_flow(circles, 0.5, Gauge(0.0, 2.0)) == pytest.approx(
            2.0, abs=1e-6)

    def test_truncated(self):
        circles = construct('concentric_circles').family
        with pytest.raises(FlowTruncatedError):
            u_via_line_integral(circles, 1.5)


class TestGradientLaw(object):

    def test_circles(self):
        entry, recon = reconstruction('concentric_circles')
        report = verify_gradient_law(entry.family, recon, [0, 0], 1.0, 1e-3)
        assert report.lhs[-1] == pytest.approx(0.5, abs=1e-7)
        assert report.rhs[-1] == pytest.approx(0.5, abs=1e-6)
        assert report.max_error < 1e-5
        frame = report.to_frame()
        assert list(frame.columns) == ['s', 't', 'grad_norm', 'prediction',
            'relative_error']
        assert report.to_dict()['truncated'] is False

    def test_lines(self):
        entry, recon = reconstruction('parallel_lines', Gauge(0.0, 2.5))
        report = verify_gradient_law(entry.family, recon, [0.3, -0.5], 1.0)
        numpy.testing.assert_allclose(report.lhs, 2.5, atol=1e-12)
        assert report.max_error < 1e-12

    def test_spheres(self):
        entry, recon = reconstruction('spheres_chart')
        report = verify_gradient_law(entry.family, recon, [0, 0, 0], 0.5,
            1e-3)
        s = report.trace.arc_length
        numpy.testing.assert_allclose(report.lhs, (1 + s)**-2, rtol=1e-6)
        numpy.testing.assert_allclose(report.rhs, (1 + s)**-2, rtol=1e-6)
        assert report.max_error < 1e-5
