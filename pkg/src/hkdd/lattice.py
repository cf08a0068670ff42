"""Integral lattices with symmetric bilinear forms and their isometries.

A lattice is a free Z-module with an integer Gram matrix; an isometry is an
integer matrix M with M^T G M = G, acting on column coordinate vectors.
Everything is exact; signatures are computed by symmetric Gaussian
elimination over the rationals, never by floating-point eigenvalues.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import (
    DimensionMismatchError,
    NonSquareError,
    NonSymmetricError,
    NotIsometryError,
)


@dataclass(frozen=True)
class GramLattice:
    """Free Z-module of finite rank with an integer symmetric bilinear form."""

    gram: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    @property
    def rank(self) -> int:
        return len(self.gram)

    def gram_rows(self) -> list[list[int]]:
        return [list(row) for row in self.gram]

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "gram": self.gram_rows()}

    def vector_str(self, v: list[int]) -> str:
        """Pretty-print an integer coordinate vector against the basis labels,
        e.g. (1, -6, 1) on <H1, e, H2> -> 'H1 - 6e + H2'."""
        parts = []
        for c, name in zip(v, self.labels):
            if c == 0:
                continue
            mag = abs(c)
            term = name if mag == 1 else f"{mag}{name}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f" + {term}" if c > 0 else f" - {term}")
        return "".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"GramLattice(rank={self.rank}, labels={list(self.labels)})"


@dataclass(frozen=True)
class LatticeIsometry:
    """Integer matrix preserving the form of its lattice (checked on build)."""

    matrix: tuple[tuple[int, ...], ...]
    lattice: GramLattice

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def rows(self) -> list[list[int]]:
        return [list(row) for row in self.matrix]

    def apply(self, v: list[int]) -> list[int]:
        return linalg.mat_vec(self.rows(), v)

    def to_json(self) -> dict:
        return {"matrix": self.rows()}

    def __repr__(self) -> str:
        return f"LatticeIsometry({self.rows()})"


@dataclass(frozen=True)
class Signature:
    positive: int
    negative: int
    zero: int

    @property
    def rank(self) -> int:
        return self.positive + self.negative + self.zero

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.positive, self.negative, self.zero)

    def __str__(self) -> str:
        return f"({self.positive}, {self.negative}, {self.zero})"


# --- three-valued result of represents() -----------------------------------


@dataclass(frozen=True)
class FoundVector:
    vector: tuple[int, ...]
    value: int


@dataclass(frozen=True)
class CertifiedNo:
    reason: str


@dataclass(frozen=True)
class NotFoundWithinBound:
    bound: int


RepresentsResult = FoundVector | CertifiedNo | NotFoundWithinBound


def make_lattice(gram: list[list[int]], labels: list[str] | None = None) -> GramLattice:
    """Validated lattice from an integer Gram matrix (must be symmetric)."""
    n = len(gram)
    if any(len(row) != n for row in gram):
        raise NonSquareError("Gram matrix must be square")
    if n < 1:
        raise NonSquareError("rank must be at least 1")
    for i in range(n):
        for j in range(i + 1, n):
            if gram[i][j] != gram[j][i]:
                raise NonSymmetricError(
                    f"gram[{i}][{j}] = {gram[i][j]} != gram[{j}][{i}] = {gram[j][i]}"
                )
    if labels is None:
        labels = [f"b{i + 1}" for i in range(n)]
    elif len(labels) != n:
        raise DimensionMismatchError(f"{len(labels)} labels for rank {n}")
    return GramLattice(
        gram=tuple(tuple(int(x) for x in row) for row in gram),
        labels=tuple(labels),
    )


def is_even(lat: GramLattice) -> bool:
    """True iff every self-intersection is even (diagonal test suffices)."""
    return all(lat.gram[i][i] % 2 == 0 for i in range(lat.rank))


def signature(lat: GramLattice) -> Signature:
    """Exact inertia by symmetric Gaussian elimination over the rationals.

    Nonzero diagonal entries are used as 1x1 pivots; when the active diagonal
    is entirely zero, an off-diagonal entry gives a hyperbolic 2x2 block
    contributing one positive and one negative direction.
    """
    n = lat.rank
    a = [[Fraction(x) for x in row] for row in lat.gram]
    active = list(range(n))
    pos = neg = zero = 0
    while active:
        pivot = next((i for i in active if a[i][i] != 0), None)
        if pivot is not None:
            d = a[pivot][pivot]
            if d > 0:
                pos += 1
            else:
                neg += 1
            rest = [i for i in active if i != pivot]
            for i in rest:
                if a[i][pivot] == 0:
                    continue
                f = a[i][pivot] / d
                for j in rest:
                    a[i][j] -= f * a[pivot][j]
            for i in rest:
                a[i][pivot] = a[pivot][i] = Fraction(0)
            active = rest
            continue
        off = next(
            (
                (i, j)
                for i in active
                for j in active
                if i < j and a[i][j] != 0
            ),
            None,
        )
        if off is None:
            zero += len(active)
            break
        i0, j0 = off
        pos += 1
        neg += 1
        d = a[i0][j0]
        rest = [i for i in active if i not in (i0, j0)]
        # Schur complement of the hyperbolic block [[0, d], [d, 0]]
        for k in rest:
            for l in rest:
                a[k][l] -= (a[k][i0] * a[j0][l] + a[k][j0] * a[i0][l]) / d
        active = rest
    return Signature(pos, neg, zero)


def verify_isometry(lat: GramLattice, matrix: list[list[int]]) -> LatticeIsometry:
    """Check M^T G M = G exactly and wrap M; raises NotIsometryError with the
    first disagreeing position as witness."""
    n = lat.rank
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise NonSquareError(f"isometry matrix must be {n}x{n}")
    g = lat.gram_rows()
    m = [list(row) for row in matrix]
    product = linalg.mat_mul(linalg.mat_mul(linalg.transpose(m), g), m)
    for i in range(n):
        for j in range(n):
            if product[i][j] != g[i][j]:
                raise NotIsometryError(i, j, g[i][j], product[i][j])
    if linalg.det_bareiss(g) != 0:
        det = linalg.det_bareiss(m)
        if det not in (1, -1):
            # cannot happen once the form is preserved on a nondegenerate
            # lattice; checked anyway rather than assumed
            raise NotIsometryError(0, 0, 1, det)
    return LatticeIsometry(
        matrix=tuple(tuple(int(x) for x in row) for row in m),
        lattice=lat,
    )


def invariant_sublattice(iso: LatticeIsometry) -> list[list[int]]:
    """Primitive basis of the fixed sublattice {v : M v = v}.

    Computed as the saturated integer kernel of (M - I) via Hermite reduction;
    the basis vectors are content-free and sign-normalized.
    """
    n = iso.rank
    m_minus_i = [
        [iso.matrix[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)
    ]
    return linalg.integer_kernel(m_minus_i)


def norm_of(lat: GramLattice, v: list[int]) -> int:
    """v^T G v."""
    if len(v) != lat.rank:
        raise DimensionMismatchError(f"vector length {len(v)} != rank {lat.rank}")
    return linalg.bilinear(lat.gram_rows(), list(v), list(v))


def _congruence_certificate(lat: GramLattice, value: int) -> str | None:
    """Search small moduli m such that value mod m is never attained by the
    form on (Z/m)^rank; sound because v^T G v mod m depends only on v mod m."""
    n = lat.rank
    g = lat.gram_rows()
    for m in (2, 3, 4, 5, 7, 8, 9, 16):
        if m**n > 70000:
            break
        residues = set()
        for v in itertools.product(range(m), repeat=n):
            residues.add(linalg.bilinear(g, list(v), list(v)) % m)
        if value % m not in residues:
            return (
                f"all form values lie in {sorted(residues)} mod {m}; "
                f"{value} = {value % m} mod {m} is excluded"
            )
    return None


def _binary_isotropy_certificate(lat: GramLattice) -> str | None:
    """For a rank-2 form A x^2 + B xy + C y^2: no nontrivial zero exists when
    the discriminant B^2 - 4AC is not a perfect square (anisotropy over Q)."""
    from .polynomial import is_perfect_square

    if lat.rank != 2:
        return None
    a = lat.gram[0][0]
    b = 2 * lat.gram[0][1]
    c = lat.gram[1][1]
    if a == 0 or c == 0:
        return None  # form is visibly isotropic; the search will find it
    disc = b * b - 4 * a * c
    if not is_perfect_square(disc):
        return (
            f"binary form discriminant {disc} is not a perfect square, "
            "so the form is anisotropic"
        )
    return None


def _normalize_sign(v: tuple[int, ...]) -> tuple[int, ...]:
    for x in v:
        if x != 0:
            return v if x > 0 else tuple(-y for y in v)
    return v


def represents(lat: GramLattice, value: int, bound: int) -> RepresentsResult:
    """Does some nonzero v with coordinates in [-bound, bound] have v^T G v = value?

    Returns FoundVector (lexicographically smallest witness, sign-normalized),
    CertifiedNo when a congruence class or the binary discriminant test rules
    the value out globally, or NotFoundWithinBound otherwise.
    """
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    reason = _congruence_certificate(lat, value)
    if reason is not None:
        return CertifiedNo(reason)
    if value == 0:
        reason = _binary_isotropy_certificate(lat)
        if reason is not None:
            return CertifiedNo(reason)
    g = lat.gram_rows()
    for v in itertools.product(range(-bound, bound + 1), repeat=lat.rank):
        if not any(v):
            continue
        if linalg.bilinear(g, list(v), list(v)) == value:
            return FoundVector(_normalize_sign(v), value)
    return NotFoundWithinBound(bound)


def permute_basis(lat: GramLattice, order: list[int]) -> GramLattice:
    """Lattice with basis reordered; order[i] is the old index of new slot i."""
    if sorted(order) != list(range(lat.rank)):
        raise DimensionMismatchError(f"not a permutation of 0..{lat.rank - 1}")
    gram = [[lat.gram[order[i]][order[j]] for j in range(lat.rank)] for i in range(lat.rank)]
    labels = [lat.labels[i] for i in order]
    return GramLattice(tuple(tuple(r) for r in gram), tuple(labels))
