"""Exception types shared across the package."""


class HkddError(Exception):
    """Base class for all domain errors raised by this package."""


class NonSquareError(HkddError):
    """Matrix is not square."""


class NonSymmetricError(HkddError):
    """Gram matrix is not symmetric."""


class DimensionMismatchError(HkddError):
    """Vector or matrix size disagrees with the lattice rank."""


class NotIsometryError(HkddError):
    """M^T G M != G; carries one witness position."""

    def __init__(self, i: int, j: int, expected: int, got: int):
        self.i, self.j, self.expected, self.got = i, j, expected, got
        super().__init__(
            f"form not preserved at ({i}, {j}): expected {expected}, got {got}"
        )


class ZeroPolynomialError(HkddError):
    """Operation undefined for the zero polynomial."""


class NotDivisibleError(HkddError):
    """Exact polynomial division over the integers failed."""


class NotPalindromicError(HkddError):
    """Coefficient vector is not palindromic."""


class OddDegreeError(HkddError):
    """Operation requires even degree."""


class NotMonicError(HkddError):
    """Polynomial must be monic."""


class DegreeTooSmallError(HkddError):
    """Polynomial degree below the operation's minimum."""


class SpectralStructureViolatedError(HkddError):
    """Characteristic polynomial is not cyclotomic x (at most one Salem).

    Carries a floating-point spectral radius estimate for diagnostics.
    """

    def __init__(self, message: str, float_spectral_radius: float | None = None):
        self.float_spectral_radius = float_spectral_radius
        if float_spectral_radius is not None:
            message += f" (float spectral radius ~ {float_spectral_radius:.6f})"
        super().__init__(message)


class LatticeMismatchError(HkddError):
    """Operands act on different lattices."""


class BadNError(HkddError):
    """Hilbert scheme point count must be >= 2."""


class NoSolutionError(HkddError):
    """Involution constraints are unsatisfiable over the integers."""


class AmbiguousSolutionError(HkddError):
    """Several candidate involutions survive every filter."""

    def __init__(self, candidates):
        self.candidates = list(candidates)
        super().__init__(
            f"{len(self.candidates)} candidates survive all filters: "
            + ", ".join(str(c) for c in self.candidates)
        )


class NotUnimodularError(HkddError):
    """2x2 integer matrix must have determinant exactly 1."""
