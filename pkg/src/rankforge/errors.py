"""Exception hierarchy shared by every rankforge module."""

from __future__ import annotations


class RankforgeError(Exception):
    """Base class for all library errors."""


class InputError(RankforgeError, ValueError):
    """Malformed or unsupported input; the CLI maps these to exit code 2."""


# scalars
class ZeroDenominator(InputError, ZeroDivisionError):
    pass


class DivisionByZero(RankforgeError, ZeroDivisionError):
    pass


class FieldMismatch(InputError):
    pass


class CharTwoUnsupported(InputError):
    """An operation needs 1/2 but the field has characteristic 2."""


# polynomials
class PolySyntaxError(InputError, SyntaxError):
    def __init__(self, message: str, text: str = "", position: int = 0):
        if text:
            message = f"{message} at position {position}: {text!r}"
        super().__init__(message)
        self.msg = message
        self.text = text
        self.position = position
        self.offset = position + 1

    def __str__(self):
        return self.msg


class CoefficientError(InputError):
    pass


class ZeroPolynomial(InputError):
    pass


class LengthMismatch(InputError):
    pass


# lattices
class EmptyMultiset(InputError):
    pass


class NotAChain(InputError):
    pass


class NotCoprime(InputError):
    def __init__(self, i: int, j: int, gcd_text: str = ""):
        self.pair = (i, j)
        detail = f" (gcd {gcd_text})" if gcd_text else ""
        super().__init__(f"basis entries {i} and {j} are not coprime{detail}")


# matrices
class SizeMismatch(InputError):
    pass


class NotSquare(SizeMismatch):
    pass


class ShapeMismatch(SizeMismatch):
    pass


class BadDimension(InputError):
    pass


class SamplerExhausted(RankforgeError):
    pass


# free algebras
class ModeMismatch(InputError):
    pass


# block algebras
class NotAProjection(InputError):
    pass


class NotIdempotent(InputError):
    pass


class SumMismatch(InputError):
    pass
