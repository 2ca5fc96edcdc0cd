# Copyright (c) Microsoft Corporation. All rights reserved.
# Licensed under the MIT License.
"""Exceptions raised by the groth engine."""


class GrothError(Exception):
    """Base class for invariant violations inside the engine."""


class RecursionBudgetExceeded(GrothError):
    """Straightening took more rewrite steps than the configured budget."""


class ExpansionBudgetExceeded(GrothError):
    """Kernel expansion took more steps than the configured budget."""


class TruncationRequired(ExpansionBudgetExceeded):
    """Kernel expansion hit an infinite Laurent tail and no bound was given."""


class NegativeDPower(GrothError):
    """A substitution drove a (1 - t) power below zero."""


class DimensionError(GrothError):
    """Too few variables for the requested partition."""


class ZeroPolynomial(GrothError):
    """The operation is undefined on the zero polynomial."""


class NotSymmetric(GrothError):
    """Schur elimination met a leading exponent that is not a partition."""


class NotInSpan(GrothError):
    """Polynomial is not a combination of the available g-polynomials."""


class DecompositionError(GrothError):
    """A product key does not decompose over the chosen rectangle."""


class SegmentIntegrityError(GrothError):
    """A canceling segment is missing a member or reuses a consumed one."""


class HypothesisViolation(GrothError):
    """A Schur rewrite step met d-exponents with a gap other than 0 or 1."""


class ParseError(GrothError):
    """Command-line argument could not be read as a sequence or partition."""
