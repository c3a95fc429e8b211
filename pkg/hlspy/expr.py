#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Scalar expressions used to define families and reference functions.

Grammar (whitespace-insensitive, no implicit multiplication)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := atom ('^' unary)?
    atom    := NUMBER | 'pi' | VARIABLE | FUNCTION '(' expr ')' | '(' expr ')'

so that ``^`` binds tighter than unary minus, which binds tighter than ``*``
and ``/``; ``^`` is right-associative, the other operators left-associative.
"""
import math
import re
from dataclasses import dataclass

from hlspy.utils.exception import (ExpressionSyntaxError,
    UnknownIdentifierError, UnboundVariableError, ExpressionDomainError,
    NumericalError)

PRECEDENCE_ADD = 1
PRECEDENCE_MUL = 2
PRECEDENCE_NEG = 3
PRECEDENCE_POW = 4
PRECEDENCE_ATOM = 5


def _format_number(value):
    value = float(value)
    if value.is_integer() and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


class Expression(object):
    """Immutable expression tree node.

    All subclasses are frozen dataclasses, so trees compare and hash by
    structure and can be shared freely between threads and processes.
    """
    precedence = PRECEDENCE_ATOM

    def variables(self):
        """Return the frozenset of variable names in the tree."""
        raise NotImplementedError

    def _evaluate(self, env):
        raise NotImplementedError

    def _differentiate(self, var):
        raise NotImplementedError

    def _wrap(self, child, strict=False):
        """Render child, parenthesized when it binds looser than self."""
        weaker = (child.precedence <= self.precedence if strict
            else child.precedence < self.precedence)
        return "({})".format(child) if weaker else str(child)


@dataclass(frozen=True)
class Constant(Expression):
    value: float

    @property
    def precedence(self):
        return PRECEDENCE_NEG if self.value < 0 else PRECEDENCE_ATOM

    def __str__(self):
        return _format_number(self.value)

    def variables(self):
        return frozenset()

    def _evaluate(self, env):
        return float(self.value)

    def _differentiate(self, var):
        return ZERO


@dataclass(frozen=True)
class Variable(Expression):
    name: str

    def __str__(self):
        return self.name

    def variables(self):
        return frozenset([self.name])

    def _evaluate(self, env):
        try:
            return env[self.name]
        except KeyError:
            raise UnboundVariableError(self.name)

    def _differentiate(self, var):
        return ONE if self.name == var else ZERO


ZERO = Constant(0.0)
ONE = Constant(1.0)
TWO = Constant(2.0)


@dataclass(frozen=True)
class Neg(Expression):
    operand: Expression
    precedence = PRECEDENCE_NEG

    def __str__(self):
        return "-" + self._wrap(self.operand)

    def variables(self):
        return self.operand.variables()

    def _evaluate(self, env):
        return -self.operand._evaluate(env)

    def _differentiate(self, var):
        return Neg(self.operand._differentiate(var))


def _positive(x):
    return x > 0


def _nonnegative(x):
    return x >= 0


# name: (evaluator, domain predicate or None, derivative of f at u)
FUNCTIONS = {
    'sin': (math.sin, None, lambda u: Function('cos', u)),
    'cos': (math.cos, None, lambda u: Neg(Function('sin', u))),
    'tan': (math.tan, None, lambda u: Div(ONE, Pow(Function('cos', u), TWO))),
    'exp': (math.exp, None, lambda u: Function('exp', u)),
    'log': (math.log, _positive, lambda u: Div(ONE, u)),
    'sqrt': (math.sqrt, _nonnegative,
        lambda u: Div(ONE, Mul(TWO, Function('sqrt', u)))),
    'sinh': (math.sinh, None, lambda u: Function('cosh', u)),
    'cosh': (math.cosh, None, lambda u: Function('sinh', u)),
    'tanh': (math.tanh, None,
        lambda u: Sub(ONE, Pow(Function('tanh', u), TWO))),
    'atan': (math.atan, None, lambda u: Div(ONE, Add(ONE, Pow(u, TWO)))),
}

CONSTANTS = {'pi': math.pi}


@dataclass(frozen=True)
class Function(Expression):
    name: str
    argument: Expression

    def __post_init__(self):
        if self.name not in FUNCTIONS:
            raise ValueError("Unknown function '{}'".format(self.name))

    def __str__(self):
        return "{}({})".format(self.name, self.argument)

    def variables(self):
        return self.argument.variables()

    def _evaluate(self, env):
        x = self.argument._evaluate(env)
        f, domain, _ = FUNCTIONS[self.name]
        if domain is not None and not domain(x):
            raise ExpressionDomainError(
                str(self), "argument {} outside the domain of {}".format(
                    x, self.name)
            )
        try:
            return f(x)
        except (ValueError, OverflowError) as error:
            raise ExpressionDomainError(str(self), str(error))

    def _differentiate(self, var):
        if var not in self.argument.variables():
            return ZERO
        outer = FUNCTIONS[self.name][2](self.argument)
        return Mul(outer, self.argument._differentiate(var))


@dataclass(frozen=True)
class BinaryOperator(Expression):
    left: Expression
    right: Expression
    symbol = "?"

    def __str__(self):
        return "{}{}{}".format(
            self._wrap(self.left),
            self.symbol,
            self._wrap(self.right, strict=True),
        )

    def variables(self):
        return self.left.variables() | self.right.variables()

    def _evaluate(self, env):
        a = self.left._evaluate(env)
        b = self.right._evaluate(env)
        try:
            return self._apply(a, b)
        except (ValueError, OverflowError, ZeroDivisionError) as error:
            raise ExpressionDomainError(str(self), str(error))


@dataclass(frozen=True)
class Add(BinaryOperator):
    symbol = "+"
    precedence = PRECEDENCE_ADD

    def _apply(self, a, b):
        return a + b

    def _differentiate(self, var):
        return Add(self.left._differentiate(var),
            self.right._differentiate(var))


@dataclass(frozen=True)
class Sub(BinaryOperator):
    symbol = "-"
    precedence = PRECEDENCE_ADD

    def _apply(self, a, b):
        return a - b

    def _differentiate(self, var):
        return Sub(self.left._differentiate(var),
            self.right._differentiate(var))


@dataclass(frozen=True)
class Mul(BinaryOperator):
    symbol = "*"
    precedence = PRECEDENCE_MUL

    def _apply(self, a, b):
        return a * b

    def _differentiate(self, var):
        return Add(
            Mul(self.left._differentiate(var), self.right),
            Mul(self.left, self.right._differentiate(var)),
        )


@dataclass(frozen=True)
class Div(BinaryOperator):
    symbol = "/"
    precedence = PRECEDENCE_MUL

    def _apply(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def _differentiate(self, var):
        # quotient rule
        numerator = Sub(
            Mul(self.left._differentiate(var), self.right),
            Mul(self.left, self.right._differentiate(var)),
        )
        return Div(numerator, Pow(self.right, TWO))


@dataclass(frozen=True)
class Pow(BinaryOperator):
    symbol = "^"
    precedence = PRECEDENCE_POW

    def __str__(self):
        left = ("({})".format(self.left)
            if self.left.precedence <= self.precedence else str(self.left))
        right = ("({})".format(self.right)
            if self.right.precedence < PRECEDENCE_NEG else str(self.right))
        return "{}^{}".format(left, right)

    def _apply(self, a, b):
        if a == 0 and b < 0:
            raise ZeroDivisionError("zero raised to a negative power")
        if a < 0 and not float(b).is_integer():
            raise ValueError("negative base with non-integer exponent")
        return math.pow(a, b)

    def _differentiate(self, var):
        base, exponent = self.left, self.right
        in_base = var in base.variables()
        in_exponent = var in exponent.variables()
        if not in_exponent:
            # c * x^(c-1) * x'
            if isinstance(exponent, Constant):
                lowered = Constant(exponent.value - 1.0)
            else:
                lowered = Sub(exponent, ONE)
            return Mul(Mul(exponent, Pow(base, lowered)),
                base._differentiate(var))
        if not in_base:
            # a^x = exp(x log a)
            return Mul(Mul(self, Function('log', base)),
                exponent._differentiate(var))
        return Mul(self, Add(
            Mul(exponent._differentiate(var), Function('log', base)),
            Div(Mul(exponent, base._differentiate(var)), base),
        ))


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------
_TOKEN = re.compile(r"""
    (?P<space>\s+)
  | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
""", re.VERBOSE)


def _tokenize(text):
    tokens = []
    position = 0
    while position < len(text):
        match = _TOKEN.match(text, position)
        if match is None:
            raise ExpressionSyntaxError(text, position,
                "unexpected character '{}'".format(text[position]))
        kind = match.lastgroup
        if kind != 'space':
            tokens.append((kind, match.group(), position))
        position = match.end()
    tokens.append(('end', '', len(text)))
    return tokens


class _Parser(object):
    """Recursive-descent parser over the token list of one text."""

    def __init__(self, text, variables):
        self.text = text
        self.variables = list(variables)
        self.tokens = _tokenize(text)
        self.index = 0

    @property
    def current(self):
        return self.tokens[self.index]

    def _advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _error(self, reason, token=None):
        kind, value, position = token or self.current
        if kind == 'end':
            reason = reason + " (end of input)"
        raise ExpressionSyntaxError(self.text, position, reason)

    def _expect(self, value):
        if self.current[1] != value or self.current[0] != 'op':
            self._error("expected '{}'".format(value))
        self._advance()

    def parse(self):
        if self.current[0] == 'end':
            self._error("empty expression")
        tree = self._expr()
        if self.current[0] != 'end':
            self._error("unexpected '{}'".format(self.current[1]))
        return tree

    def _expr(self):
        tree = self._term()
        while self.current[0] == 'op' and self.current[1] in "+-":
            op = self._advance()[1]
            right = self._term()
            tree = Add(tree, right) if op == "+" else Sub(tree, right)
        return tree

    def _term(self):
        tree = self._unary()
        while self.current[0] == 'op' and self.current[1] in "*/":
            op = self._advance()[1]
            right = self._unary()
            tree = Mul(tree, right) if op == "*" else Div(tree, right)
        return tree

    def _unary(self):
        if self.current[0] == 'op' and self.current[1] == "-":
            self._advance()
            return Neg(self._unary())
        if self.current[0] == 'op' and self.current[1] == "+":
            self._advance()
            return self._unary()
        return self._power()

    def _power(self):
        base = self._atom()
        if self.current[0] == 'op' and self.current[1] == "^":
            self._advance()
            return Pow(base, self._unary())
        return base

    def _atom(self):
        kind, value, position = self.current
        if kind == 'number':
            self._advance()
            return Constant(float(value))
        if kind == 'name':
            self._advance()
            is_call = self.current[0] == 'op' and self.current[1] == "("
            if is_call and value in FUNCTIONS:
                self._advance()
                argument = self._expr()
                self._expect(")")
                return Function(value, argument)
            if value in self.variables:
                return Variable(value)
            if value in CONSTANTS:
                return Constant(CONSTANTS[value])
            if value in FUNCTIONS:
                self._error("expected '(' after function '{}'".format(value))
            raise UnknownIdentifierError(value, position, self.variables)
        if kind == 'op' and value == "(":
            self._advance()
            tree = self._expr()
            self._expect(")")
            return tree
        self._error("unexpected '{}'".format(value) if value
            else "expected an operand")


def parse_expression(text, variables):
    """Parse text into an expression tree.

    Parameters
    ----------
    text: str
        The expression text, e.g. ``"exp(t)*cos(s1)"``.

    variables: list of str
        The declared variable names. Any other identifier must be a known
        function (followed by a parenthesized argument) or ``pi``.

    Returns
    -------
    Expression
    """
    parser = _Parser(text, variables)
    try:
        return parser.parse()
    except RecursionError:
        raise ExpressionSyntaxError(text, parser.current[2],
            "expression nested too deeply")


def evaluate(e, env):
    """Evaluate e with the variable values in env (a name -> real mapping).

    Raises UnboundVariableError for a missing variable and
    ExpressionDomainError, naming the offending subexpression, when an
    operation leaves its domain.
    """
    missing = e.variables() - set(env)
    if missing:
        raise UnboundVariableError(sorted(missing)[0])
    return e._evaluate({k: float(v) for k, v in env.items()})


def differentiate(e, var):
    """Exact partial derivative of e with respect to var (unsimplified)."""
    if var not in e.variables():
        return ZERO
    return e._differentiate(var)


def _is_constant(e, value):
    return isinstance(e, Constant) and e.value == value


def _fold(e):
    try:
        return Constant(e._evaluate({}))
    except NumericalError:
        return e


def simplify(e):
    """Apply value-preserving local rewrites bottom-up: multiplication by 0
    and 1, addition of 0, x^1, x^0, sign pulling and constant folding.
    Folding is skipped where the constant subexpression is a domain error."""
    if isinstance(e, (Constant, Variable)):
        return e
    if isinstance(e, Neg):
        a = simplify(e.operand)
        if isinstance(a, Constant):
            return Constant(-a.value)
        if isinstance(a, Neg):
            return a.operand
        return Neg(a)
    if isinstance(e, Function):
        node = Function(e.name, simplify(e.argument))
        return _fold(node) if isinstance(node.argument, Constant) else node
    left, right = simplify(e.left), simplify(e.right)
    node = type(e)(left, right)
    if isinstance(left, Constant) and isinstance(right, Constant):
        return _fold(node)
    if isinstance(e, Add):
        if _is_constant(left, 0):
            return right
        if _is_constant(right, 0):
            return left
        if isinstance(right, Neg):
            return Sub(left, right.operand)
    elif isinstance(e, Sub):
        if _is_constant(right, 0):
            return left
        if _is_constant(left, 0):
            return simplify(Neg(right))
        if isinstance(right, Neg):
            return Add(left, right.operand)
    elif isinstance(e, Mul):
        if _is_constant(left, 0) or _is_constant(right, 0):
            return ZERO
        if _is_constant(left, 1):
            return right
        if _is_constant(right, 1):
            return left
        if isinstance(left, Neg):
            return simplify(Neg(Mul(left.operand, right)))
        if isinstance(right, Neg):
            return simplify(Neg(Mul(left, right.operand)))
    elif isinstance(e, Div):
        if _is_constant(right, 1):
            return left
        if isinstance(left, Neg):
            return simplify(Neg(Div(left.operand, right)))
    elif isinstance(e, Pow):
        if _is_constant(right, 1):
            return left
        if _is_constant(right, 0):
            return ONE
    return node
