#!/usr/bin/env python3
# -*- coding: utf-8 -*-
import math

import numpy
import pytest

from hlspy.family import FamilySpec, load_family, family_variables
from hlspy.utils.examples import (catalog_document, construct,
    CONCENTRIC_CIRCLES)
from hlspy.utils.exception import (SchemaError, OrientationError,
    InversionError, OutOfDomainError, ExpressionSyntaxError, ConfigError)

CATALOG_NAMES = ['parallel_lines', 'concentric_circles', 'hyperbolas',
    'spheres_chart', 'parabolas_counterexample', 'parallel_planes']


def circles(**kwargs):
    return load_family(catalog_document('concentric_circles'), **kwargs)


class TestLoadFamily(object):

    def test_catalog(self):
        spec = circles()
        assert spec.n == 2
        assert spec.variables == ['s1', 't'] == family_variables(2)
        assert spec.component_texts == ("exp(t)*cos(s1)", "-exp(t)*sin(s1)")
        assert list(spec.component_texts) == CONCENTRIC_CIRCLES['components']
        for name in CATALOG_NAMES:
            assert construct(name).family.name == name

    def test_schema_errors(self):
        document = catalog_document('concentric_circles')
        document['components'].append("t")
        with pytest.raises(SchemaError):
            load_family(document)
        document = catalog_document('concentric_circles')
        del document['components']
        with pytest.raises(SchemaError) as error:
            load_family(document)
        assert error.value.field == 'components'
        document = catalog_document('concentric_circles')
        document['t_interval'] = [1, 0]
        with pytest.raises(SchemaError):
            load_family(document)
        document = catalog_document('concentric_circles')
        document['tolerances'] = {'newton_tol': -1}
        with pytest.raises(SchemaError):
            load_family(document)
        with pytest.raises(SchemaError):
            load_family(["not", "a", "document"])

    def test_parse_errors(self):
        document = catalog_document('concentric_circles')
        document['components'][0] = "exp(t)*cos(s1"
        with pytest.raises(ExpressionSyntaxError):
            load_family(document)
        document['components'][0] = "exp(t)*cos(s2)"
        with pytest.raises(ConfigError):
            load_family(document)

    def test_orientation(self):
        document = catalog_document('concentric_circles')
        document['components'] = ["exp(t)*cos(s1)", "exp(t)*sin(s1)"]
        with pytest.raises(OrientationError) as error:
            load_family(document)
        assert error.value.det < 0
        assert len(error.value.point) == 2


class TestEvaluation(object):

    spec = circles()
    hyperbolas = construct('hyperbolas').family
    parabolas = construct('parabolas_counterexample').family
    lines = construct('parallel_lines').family

    def test_phi_eval(self):
        numpy.testing.assert_allclose(self.spec.phi_eval([0, 0]), [1, 0])
        numpy.testing.assert_allclose(
            self.spec.phi_eval([math.pi/2, math.log(2)]), [0, -2],
            atol=1e-15)
        numpy.testing.assert_allclose(
            self.hyperbolas.phi_eval([0, 0.5]), [1, 0.5])

    def test_phi_jacobian(self):
        jacobian = self.spec.phi_jacobian([0, 0])
        numpy.testing.assert_allclose(jacobian, [[0, 1], [-1, 0]], atol=1e-15)
        assert numpy.linalg.det(jacobian) == pytest.approx(1)
        numpy.testing.assert_allclose(
            self.hyperbolas.phi_jacobian([0, 0.5]), [[1, 0], [-0.5, 1]])
        numpy.testing.assert_allclose(
            self.lines.phi_jacobian([0.3, -0.2]), numpy.eye(2))

    def test_second_derivatives(self):
        numpy.testing.assert_allclose(
            self.spec.phi_second_derivatives([0, 0])[0, 0], [-1, 0],
            atol=1e-15)
        numpy.testing.assert_allclose(
            self.parabolas.phi_second_derivatives([0.4, 0.1])[0, 0], [0, 2])
        assert not self.lines.phi_second_derivatives([0.1, 0.2]).any()
        spheres = construct('spheres_chart').family
        second = spheres.phi_second_derivatives([0.2, -0.3, 0.1])
        numpy.testing.assert_allclose(second[0, 1], second[1, 0])

    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_symbolic_against_finite_differences(self, name):
        symbolic = construct(name).family
        fd = construct(name, derivative_mode='finite-difference').family
        for q in symbolic.grid([3] * symbolic.n):
            numpy.testing.assert_allclose(
                fd.phi_jacobian(q), symbolic.phi_jacobian(q), atol=1e-6)
            numpy.testing.assert_allclose(
                fd.phi_second_derivatives(q),
                symbolic.phi_second_derivatives(q), atol=1e-4)


class TestInversion(object):

    spec = circles()

    def test_circle(self):
        q = self.spec.phi_invert([0, -2], [1.0, 0.5])
        numpy.testing.assert_allclose(q, [math.pi/2, math.log(2)], atol=1e-12)

    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_round_trip(self, name):
        spec = construct(name).family
        for q in spec.grid([3] * spec.n):
            y = spec.phi_eval(q)
            numpy.testing.assert_array_equal(spec.phi_invert(y, q), q)
            seed = q + 0.05
            back = spec.phi_invert(y, seed, check_domain=False)
            numpy.testing.assert_allclose(spec.phi_eval(back), y, atol=1e-11)

    def test_outside_image(self):
        with pytest.raises(InversionError):
            self.spec.phi_invert([100, 0], [0, 0])
        # t = ln 2 is inside the image but outside the interval [-0.5, 0.5]
        narrow = FamilySpec('narrow', CONCENTRIC_CIRCLES['components'],
            [[-3, 3]], [-0.5, 0.5])
        with pytest.raises(OutOfDomainError):
            narrow.phi_invert([2, 0], [0, 0])


class TestGrid(object):

    spec = construct('spheres_chart').family

    def test_order(self):
        points = self.spec.grid([3, 3, 2])
        assert len(points) == 18
        numpy.testing.assert_allclose(points[0], [-1, -1, -0.5])
        numpy.testing.assert_allclose(points[1], [-1, 0, -0.5])
        numpy.testing.assert_allclose(points[3], [0, -1, -0.5])
        numpy.testing.assert_allclose(points[9], [-1, -1, 0.75])

    def test_margin(self):
        axes = self.spec.axes([3, 3, 5], t_margin=0.1)
        assert axes[-1][0] == pytest.approx(-0.4)
        assert axes[-1][-1] == pytest.approx(0.65)
        with pytest.raises(ValueError):
            self.spec.axes([3, 3])
