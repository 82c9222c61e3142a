"""Exception hierarchy.

All indices carried by exceptions are 1-based, matching the user-facing
convention of the rest of the package.
"""

from __future__ import annotations


class MutinvError(Exception):
    """Base class for every error raised by this package."""


class ParseError(MutinvError):
    """Malformed matrix, sequence or permutation text."""


class ValidationError(MutinvError):
    """The input is not a skew-symmetrizable integer matrix."""


class NotSquare(ValidationError):
    def __init__(self, shape: str):
        super().__init__(f"matrix is not square: {shape}")
        self.shape = shape


class NonzeroDiagonal(ValidationError):
    def __init__(self, i: int):
        super().__init__(f"nonzero diagonal entry at ({i},{i})")
        self.i = i


class SignIncoherent(ValidationError):
    def __init__(self, i: int, j: int):
        super().__init__(
            f"entries ({i},{j}) and ({j},{i}) are not sign-coherent "
            "(need b_ij*b_ji < 0, or both zero)"
        )
        self.i = i
        self.j = j


class InconsistentRatios(ValidationError):
    def __init__(self, cycle: list[int]):
        path = " -> ".join(map(str, cycle))
        super().__init__(f"no positive skew-symmetrizer exists; inconsistent cycle {path}")
        self.cycle = cycle


class IndexOutOfRange(MutinvError, IndexError):
    def __init__(self, k: int, n: int):
        super().__init__(f"index {k} out of range 1..{n}")
        self.k = k
        self.n = n


class InvalidPermutation(MutinvError, ValueError):
    pass


class DimensionTooLarge(MutinvError):
    def __init__(self, n: int, cap: int):
        super().__init__(f"dimension {n} exceeds cap {cap}")
        self.n = n
        self.cap = cap


class NotPairwiseCoprime(MutinvError):
    def __init__(self, i: int, j: int):
        super().__init__(f"symmetrizer entries d_{i} and d_{j} are not coprime")
        self.i = i
        self.j = j


class SymmetrizerMismatch(MutinvError):
    """A supplied symmetrizer does not certify the matrix."""


class NotPerfectSquare(MutinvError):
    def __init__(self, cycle: tuple[int, ...], product: int):
        super().__init__(
            f"radicand product {product} over cycle {cycle} is not a perfect square"
        )
        self.cycle = cycle
        self.product = product


class PreconditionViolated(MutinvError):
    pass


class InternalDisagreement(MutinvError):
    """Two independent implementations disagree: a bug, never a user error."""


class InvariantViolation(MutinvError):
    def __init__(self, matrix, k: int, before, after):
        super().__init__(
            f"delta changed from {before} to {after} under mutation at {k} of {matrix!r}"
        )
        self.matrix = matrix
        self.k = k
        self.before = before
        self.after = after
