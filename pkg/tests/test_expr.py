#!/usr/bin/env python3
# -*- coding: utf-8 -*-
import math

import numpy
import pytest

from hlspy.expr import (parse_expression, evaluate, differentiate, simplify,
    Constant, Variable, Neg, Add, Mul, Pow, Function)
from hlspy.utils.exception import (ExpressionSyntaxError,
    UnknownIdentifierError, UnboundVariableError, ExpressionDomainError,
    ConfigError, NumericalError)

VARIABLES = ['s1', 't']


def parse(text):
    return parse_expression(text, VARIABLES)


class TestParse(object):

    def test_grammar(self):
        assert parse("exp(t)*cos(s1)") == Mul(
            Function('exp', Variable('t')), Function('cos', Variable('s1')))
        assert parse("-(s1^2 + t)") == Neg(
            Add(Pow(Variable('s1'), Constant(2)), Variable('t')))
        # ^ binds tighter than unary minus and is right-associative
        assert parse("-s1^2") == Neg(Pow(Variable('s1'), Constant(2)))
        assert parse("s1^t^2") == Pow(
            Variable('s1'), Pow(Variable('t'), Constant(2)))
        assert parse(" s1 *  t ") == parse("s1*t")

    def test_syntax_error(self):
        with pytest.raises(ExpressionSyntaxError) as error:
            parse("2*)")
        assert error.value.position == 2
        assert isinstance(error.value, ConfigError)
        with pytest.raises(ExpressionSyntaxError):
            parse("")
        with pytest.raises(ExpressionSyntaxError):
            parse("2x")
        with pytest.raises(ExpressionSyntaxError):
            parse("sin s1")

    def test_deep_nesting(self):
        text = "(" * 2000 + "t" + ")" * 2000
        with pytest.raises(ExpressionSyntaxError) as error:
            parse(text)
        assert "nested too deeply" in str(error.value)
        assert parse("(" * 20 + "t" + ")" * 20) == Variable('t')

    def test_unknown_identifier(self):
        with pytest.raises(UnknownIdentifierError):
            parse("s2 + t")
        with pytest.raises(UnknownIdentifierError):
            parse("foo(t)")

    def test_printing(self):
        for text in ["exp(t)*cos(s1)", "-(s1^2 + t)", "s1/(t - 1)",
                "2^-s1", "(s1 - t) - (s1 + t)"]:
            tree = parse(text)
            assert parse(str(tree)) == tree


class TestEvaluate(object):

    def test_values(self):
        assert evaluate(parse("s1^2 + t"), {'s1': 2, 't': 0.5}) == 4.5
        assert evaluate(parse("exp(0)"), {}) == 1.0
        assert evaluate(parse("2*pi"), {}) == 2 * math.pi
        value = evaluate(parse("exp(t)*2*s1/(1+s1^2)"), {'s1': 0.3, 't': 0.2})
        assert value == pytest.approx(
            math.exp(0.2) * 2 * 0.3 / (1 + 0.3**2), rel=1e-15)

    def test_errors(self):
        with pytest.raises(ExpressionDomainError) as error:
            evaluate(parse("log(s1)"), {'s1': -1})
        assert "log(s1)" in str(error.value)
        with pytest.raises(ExpressionDomainError):
            evaluate(parse("1/(s1 - 1)"), {'s1': 1})
        with pytest.raises(ExpressionDomainError):
            evaluate(parse("sqrt(s1)"), {'s1': -4})
        with pytest.raises(UnboundVariableError):
            evaluate(parse("s1 + t"), {'s1': 1})
        assert issubclass(ExpressionDomainError, NumericalError)


class TestDifferentiate(object):

    def test_rules(self):
        derivative = simplify(differentiate(parse("exp(t)*cos(s1)"), 's1'))
        assert derivative == Neg(Mul(Function('exp', Variable('t')),
            Function('sin', Variable('s1'))))
        assert differentiate(parse("s1"), 't') == Constant(0)
        assert evaluate(differentiate(parse("s1^2"), 's1'), {'s1': 3}) == 6.0

    @pytest.mark.parametrize("text", [
        "exp(t)*cos(s1)", "-exp(t)*sin(s1)", "t*exp(-s1)",
        "exp(t)*(1-s1^2)/(1+s1^2)", "tan(s1)*atan(t)", "sqrt(1+s1^2)^t",
        "sinh(s1)/cosh(t) + tanh(s1*t)", "log(2+s1)", "2^s1",
    ])
    def test_against_central_differences(self, text):
        tree = parse(text)
        random_state = numpy.random.RandomState(0)
        h = 1e-5
        for _ in range(5):
            env = {'s1': random_state.uniform(-0.5, 0.5),
                't': random_state.uniform(0.1, 0.9)}
            for var in VARIABLES:
                plus, minus = dict(env), dict(env)
                plus[var] += h
                minus[var] -= h
                fd = (evaluate(tree, plus) - evaluate(tree, minus)) / (2*h)
                exact = evaluate(differentiate(tree, var), env)
                assert abs(exact - fd) < 1e-6


class TestSimplify(object):

    def test_rewrites(self):
        assert simplify(parse("0*cos(s1)+t")) == Variable('t')
        assert simplify(parse("1*s1")) == Variable('s1')
        assert simplify(parse("2+3")) == Constant(5)
        assert str(simplify(parse("2+3"))) == "5"
        assert simplify(parse("s1^1 + t^0")) == Add(Variable('s1'), Constant(1))
        # folding keeps domain errors for evaluation time
        assert simplify(parse("log(0-1)")) == Function('log', Constant(-1))

    def test_value_preserving(self):
        random_state = numpy.random.RandomState(1)
        for text in ["exp(t)*cos(s1)", "t+s1^2", "-(s1^2 + t)*1 - 0",
                "(1-s1^2-t^2)/(1+s1^2+t^2)"]:
            tree = parse(text)
            for _ in range(5):
                env = {'s1': random_state.uniform(-1, 1),
                    't': random_state.uniform(-1, 1)}
                assert evaluate(simplify(tree), env) == pytest.approx(
                    evaluate(tree, env), rel=1e-15, abs=1e-300)
