#!/usr/bin/env python3
# -*- coding: utf-8 -*-
import math

import numpy
import pytest

from hlspy import flow
from hlspy.flow import (normal_at_ambient, integrate_normal_flow, dphi_ds,
    default_flow_step)
from hlspy.geometry import frame_at
from hlspy.utils.examples import construct


class TestNormalAtAmbient(object):

    circles = construct('concentric_circles').family

    def test_values(self):
        normal, q = normal_at_ambient(self.circles, [1, 0], [0, 0])
        numpy.testing.assert_allclose(normal, [1, 0], atol=1e-15)
        numpy.testing.assert_allclose(q, [0, 0], atol=1e-15)
        normal, q = normal_at_ambient(self.circles, [0, -2], [1.5, 0.6])
        numpy.testing.assert_allclose(normal, [0, -1], atol=1e-12)
        numpy.testing.assert_allclose(q, [math.pi/2, math.log(2)], atol=1e-12)
        hyperbolas = construct('hyperbolas').family
        normal, _ = normal_at_ambient(hyperbolas, [1, 0.5], [0, 0])
        numpy.testing.assert_allclose(normal, [0.447214, 0.894427], atol=1e-6)


class TestIntegrateNormalFlow(object):

    circles = construct('concentric_circles').family

    def test_radial(self):
        trace = integrate_normal_flow(self.circles, [0, 0], 1.0, 0.01)
        assert not trace.truncated
        assert len(trace) == 101
        assert trace.step_size == pytest.approx(0.01)
        numpy.testing.assert_allclose(trace.ambient[-1], [2, 0], atol=1e-8)
        # exactly radial
        assert numpy.max(numpy.abs(trace.ambient[:, 1])) < 1e-8
        numpy.testing.assert_allclose(trace.ambient[:, 0],
            1 + trace.arc_length, atol=1e-8)
        for point, q in zip(trace.ambient, trace.params):
            numpy.testing.assert_allclose(self.circles.phi_eval(q), point,
                atol=1e-11)

    def test_dt_ds(self):
        # |grad t| = 1/phi along the flow
        trace = integrate_normal_flow(self.circles, [0.4, -0.2], 0.2, 1e-3)
        slope = (trace.t[2:] - trace.t[:-2]) / (
            trace.arc_length[2:] - trace.arc_length[:-2])
        density = numpy.array([frame_at(self.circles, q).density
            for q in trace.params[1:-1]])
        numpy.testing.assert_allclose(slope, 1 / density, rtol=0, atol=1e-6)

    def test_spacing(self):
        trace = integrate_normal_flow(self.circles, [1.0, 0.1], 0.5)
        gaps = numpy.linalg.norm(numpy.diff(trace.ambient, axis=0), axis=1)
        numpy.testing.assert_allclose(gaps, trace.step_size, rtol=0.1)

    def test_zero_length(self):
        trace = integrate_normal_flow(self.circles, [0, 0], 0, 0.01)
        assert len(trace) == 1
        assert trace.arc_length[0] == 0

    def test_truncated(self):
        # radius e^t cannot exceed e
        trace = integrate_normal_flow(self.circles, [0, 0], 5.0, 0.05)
        assert trace.truncated
        assert trace.t[-1] <= 1.0
        assert trace.arc_length[-1] < math.e - 1

    def test_backward(self):
        trace = integrate_normal_flow(self.circles, [0, 0], -0.3, 0.01)
        assert not trace.truncated
        assert trace.arc_length[-1] == pytest.approx(-0.3)
        numpy.testing.assert_allclose(trace.ambient[-1], [0.7, 0], atol=1e-8)

    def test_spheres(self):
        spheres = construct('spheres_chart').family
        trace = integrate_normal_flow(spheres, [0, 0, 0], 0.5, 0.01)
        numpy.testing.assert_allclose(trace.ambient[-1], [0, 0, 1.5],
            atol=1e-8)

    def test_to_frame(self):
        trace = integrate_normal_flow(self.circles, [0, 0], 0.1, 0.05)
        frame = trace.to_frame()
        assert list(frame.columns) == ['s', 'y1', 'y2', 'sigma1', 't']
        assert len(frame) == 3

    def test_bad_step(self):
        with pytest.raises(ValueError):
            integrate_normal_flow(self.circles, [0, 0], 1.0, 0)

    def test_default_step(self):
        assert default_flow_step(self.circles) == pytest.approx(0.01)

    def test_density_only_when_logging(self, monkeypatch, tmp_path):
        calls = []

        def counting_frame(spec, q):
            calls.append(1)
            return frame_at(spec, q)

        monkeypatch.setattr(flow, 'frame_at', counting_frame)
        integrate_normal_flow(self.circles, [0, 0], 0.1, 0.01)
        quiet = len(calls)
        del calls[:]
        integrate_normal_flow(self.circles, [0, 0], 0.1, 0.01, logFile=1,
            directory=str(tmp_path) + '/')
        assert len(calls) == quiet + 10
        assert "density" in (tmp_path / "Flow.log").read_text()


class TestDphiDs(object):

    def test_values(self):
        circles = construct('concentric_circles').family
        assert dphi_ds(circles, [0, 0]) == pytest.approx(1, abs=1e-7)
        hyperbolas = construct('hyperbolas').family
        assert dphi_ds(hyperbolas, [0, 0.5]) == pytest.approx(-0.64, abs=1e-6)
        lines = construct('parallel_lines').family
        assert dphi_ds(lines, [0.2, 0.3]) == pytest.approx(0, abs=1e-10)

    def test_second_order(self):
        # Richardson: halving h shrinks the error about four times
        hyperbolas = construct('hyperbolas').family
        exact = -0.64
        coarse = abs(dphi_ds(hyperbolas, [0, 0.5], 1e-2) - exact)
        fine = abs(dphi_ds(hyperbolas, [0, 0.5], 5e-3) - exact)
        assert fine < coarse / 3
