#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Exception classes of hlspy.

Everything under ConfigError is a problem with the user's input (exit code 2
on the command line); everything under NumericalError is a failure of a
computation on otherwise valid input (exit code 4).
"""


class HLSError(Exception):
    """Base class of all hlspy errors."""


class ConfigError(HLSError):
    """Base class of input errors."""


class NumericalError(HLSError):
    """Base class of computation errors."""


class SchemaError(ConfigError):
    """Exception class to raise if a family document violates the schema."""
    def __init__(self, field, reason):
        self.field = field
        self.reason = reason
        Exception.__init__(
            self,
            "Invalid field '{}' in family document: {}".format(field, reason),
        )


class ExpressionSyntaxError(ConfigError):
    """Exception class to raise if an expression text cannot be parsed."""
    def __init__(self, text, position, reason):
        self.text = text
        self.position = position
        self.reason = reason
        Exception.__init__(
            self,
            "Syntax error at offset {} in '{}': {}".format(
                position, text, reason
            ),
        )


class UnknownIdentifierError(ConfigError):
    """Exception class to raise if an identifier is neither a declared
    variable nor a known function."""
    def __init__(self, name, position, variables):
        self.name = name
        self.position = position
        Exception.__init__(
            self,
            "Unknown identifier '{}' at offset {}; declared variables are {}"
            .format(name, position, list(variables)),
        )


class OrientationError(ConfigError, NumericalError):
    """Exception class to raise if det dPhi <= 0 at a parameter point."""
    def __init__(self, point, det):
        self.point = tuple(float(x) for x in point)
        self.det = float(det)
        Exception.__init__(
            self,
            "Family is not orientation-preserving: det dPhi = {} at {}".format(
                self.det, self.point
            ),
        )


class UnboundVariableError(NumericalError):
    """Exception class to raise if an environment misses a variable."""
    def __init__(self, name):
        self.name = name
        Exception.__init__(self, "Variable '{}' is unbound".format(name))


class ExpressionDomainError(NumericalError):
    """Exception class to raise if a subexpression leaves the domain of its
    operation (log or sqrt of a negative number, division by zero, ...)."""
    def __init__(self, subexpression, reason):
        self.subexpression = subexpression
        self.reason = reason
        Exception.__init__(
            self,
            "Domain error in '{}': {}".format(subexpression, reason),
        )


class InversionError(NumericalError):
    """Exception class to raise if Newton's method fails to invert Phi."""
    def __init__(self, target, iterations, residual):
        self.target = tuple(float(x) for x in target)
        self.iterations = iterations
        self.residual = float(residual)
        Exception.__init__(
            self,
            "Newton inversion at {} did not converge after {} iterations "
            "(residual {})".format(self.target, iterations, self.residual),
        )


class SingularJacobianError(InversionError):
    """Exception class to raise if dPhi is singular during an inversion."""
    def __init__(self, point):
        self.point = tuple(float(x) for x in point)
        Exception.__init__(
            self, "Singular Jacobian encountered at {}".format(self.point)
        )


class OutOfDomainError(InversionError):
    """Exception class to raise if a preimage lies outside the parameter
    domain."""
    def __init__(self, target, point):
        self.target = tuple(float(x) for x in target)
        self.point = tuple(float(x) for x in point)
        Exception.__init__(
            self,
            "Preimage {} of {} lies outside the parameter domain".format(
                self.point, self.target
            ),
        )


class DegenerateParametrizationError(NumericalError):
    """Exception class to raise if the leaf tangents are linearly
    dependent."""
    def __init__(self, point=None):
        self.point = None if point is None else tuple(float(x) for x in point)
        where = "" if point is None else " at {}".format(self.point)
        Exception.__init__(
            self, "Degenerate parametrization: tangents are dependent" + where
        )


class SingularFormError(NumericalError):
    """Exception class to raise if the first fundamental form is
    ill-conditioned."""
    def __init__(self, point, condition):
        self.point = tuple(float(x) for x in point)
        self.condition = float(condition)
        Exception.__init__(
            self,
            "First fundamental form singular at {} (condition number {})"
            .format(self.point, self.condition),
        )


class CriticalPointError(NumericalError):
    """Exception class to raise if a reference function has a critical point
    where a level-set quantity is requested."""
    def __init__(self, point):
        self.point = tuple(float(x) for x in point)
        Exception.__init__(
            self, "Gradient vanishes at {}".format(self.point)
        )


class FlowTruncatedError(NumericalError):
    """Exception class to raise if a normal flow leaves the parameter domain
    before reaching its target leaf."""
    def __init__(self, target_t, reached_t):
        self.target_t = float(target_t)
        self.reached_t = float(reached_t)
        Exception.__init__(
            self,
            "Normal flow left the domain at t = {} before reaching t = {}"
            .format(self.reached_t, self.target_t),
        )


class RejectedFamilyError(NumericalError):
    """Exception class to raise if a reconstruction is requested for a
    family whose check was rejected."""
    def __init__(self, name, residual):
        self.name = name
        self.residual = float(residual)
        Exception.__init__(
            self,
            "Family {} was rejected (residual {}); no harmonic function "
            "has these level sets".format(name, self.residual),
        )


class QuadratureError(NumericalError):
    """Exception class to raise if a quadrature produces non-finite
    values."""
    def __init__(self, reason):
        Exception.__init__(self, "Quadrature failed: {}".format(reason))


class SampleError(NumericalError):
    """Exception class to raise if a grid sample fails; carries the
    parameter point and the underlying error."""
    def __init__(self, point, error):
        self.point = tuple(float(x) for x in point)
        self.error = error
        Exception.__init__(
            self, "Sample at {} failed: {}".format(self.point, error)
        )
