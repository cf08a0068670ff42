"""Hilbert-scheme lattices, induced and Beauville involutions, Kummer degrees,
and the non-naturality certificate.

Everything works at the level of lattices with isometries: H^2 of the Hilbert
scheme of n points is modelled as base + Z*e with (e, e) = -2n+2 and e
orthogonal to the base. Composition of pullbacks follows application order,
compose(A, B).matrix = A.matrix * B.matrix; under this convention composing
the two bundled quartic involutions yields the expected positive-entropy
matrix.

Geometric hypotheses that cannot be checked on a lattice (very ample classes,
no line on the surface) are carried as assumption strings on solver results.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import (
    AmbiguousSolutionError,
    BadNError,
    DimensionMismatchError,
    LatticeMismatchError,
    NoSolutionError,
    NotUnimodularError,
)
from .lattice import (
    GramLattice,
    LatticeIsometry,
    invariant_sublattice,
    make_lattice,
    norm_of,
    verify_isometry,
)
from .polynomial import AlgebraicReal, IntPolynomial, isolate_real_roots, square_free_part
from .dynamics import DegreeSpectrum, FirstDegree, degree_spectrum


@dataclass(frozen=True)
class HilbertLattice:
    """base lattice extended by the exceptional half-class e, (e,e) = -2n+2."""

    base: GramLattice
    n: int
    extended: GramLattice
    e_index: int

    @property
    def e_norm(self) -> int:
        return -2 * self.n + 2


@dataclass(frozen=True)
class Sl2Matrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise NotUnimodularError(
                f"determinant {self.a * self.d - self.b * self.c} != 1"
            )

    @property
    def trace(self) -> int:
        return self.a + self.d

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]


@dataclass(frozen=True)
class NaturalityCertificate:
    verdict: str  # "NotNatural" | "PossiblyNatural"
    fixed_basis: tuple[tuple[int, ...], ...]
    required_norm: int
    witness: tuple[tuple[int, ...], int] | None  # (fixed generator, its norm)
    detail: str

    @property
    def is_natural_possible(self) -> bool:
        return self.verdict == "PossiblyNatural"


NOT_NATURAL = "NotNatural"
POSSIBLY_NATURAL = "PossiblyNatural"


@dataclass(frozen=True)
class CandidateRecord:
    """Solver trace for one basis vector: every integer candidate image and
    why the rejected ones fail."""

    basis_index: int
    candidates: tuple[tuple[int, ...], ...]
    chosen: tuple[int, ...]
    rejections: tuple[tuple[tuple[int, ...], str], ...]


@dataclass(frozen=True)
class BeauvilleSolution:
    isometry: LatticeIsometry
    h_index: int
    e_index: int
    records: tuple[CandidateRecord, ...]
    assumed_hypotheses: tuple[str, ...]


def hilbert_lattice(base: GramLattice, n: int, e_index: int | None = None) -> HilbertLattice:
    """Extend base by the exceptional class e with (e, e) = -2n+2, e _|_ base.

    e_index selects where e sits in the new basis (default: last), so the
    classical ordering <H1, e, H2> is available directly.
    """
    if n < 2:
        raise BadNError(f"need n >= 2 points, got {n}")
    r = base.rank
    if e_index is None:
        e_index = r
    if not 0 <= e_index <= r:
        raise DimensionMismatchError(f"e_index {e_index} out of range 0..{r}")
    e_norm = -2 * n + 2
    old_positions = list(range(r))
    order = old_positions[:e_index] + [r] + old_positions[e_index:]
    gram = [[0] * (r + 1) for _ in range(r + 1)]
    labels = []
    for i_new, i_old in enumerate(order):
        labels.append("e" if i_old == r else base.labels[i_old])
        for j_new, j_old in enumerate(order):
            if i_old == r and j_old == r:
                gram[i_new][j_new] = e_norm
            elif i_old == r or j_old == r:
                gram[i_new][j_new] = 0
            else:
                gram[i_new][j_new] = base.gram[i_old][j_old]
    extended = make_lattice(gram, labels)
    return HilbertLattice(base=base, n=n, extended=extended, e_index=e_index)


def hilbert_from_extended(
    lat: GramLattice, n: int, e_index: int | None = None
) -> HilbertLattice:
    """Recognize an already-extended lattice as base + Z*e.

    e defaults to the basis vector labelled "e". The slot must be orthogonal
    to everything else and have norm -2n+2, otherwise the lattice is not the
    n-point Hilbert-scheme model it claims to be.
    """
    if n < 2:
        raise BadNError(f"need n >= 2 points, got {n}")
    if e_index is None:
        matches = [i for i, lab in enumerate(lat.labels) if lab == "e"]
        if len(matches) != 1:
            raise DimensionMismatchError(
                'no unique basis label "e"; pass e_index explicitly'
            )
        e_index = matches[0]
    if not 0 <= e_index < lat.rank:
        raise DimensionMismatchError(f"e_index {e_index} out of range")
    expected = -2 * n + 2
    if lat.gram[e_index][e_index] != expected:
        raise DimensionMismatchError(
            f"(e, e) = {lat.gram[e_index][e_index]}, need {expected} for n = {n}"
        )
    for j in range(lat.rank):
        if j != e_index and lat.gram[e_index][j] != 0:
            raise DimensionMismatchError(
                f"e is not orthogonal to {lat.labels[j]}"
            )
    rest = [i for i in range(lat.rank) if i != e_index]
    base = make_lattice(
        [[lat.gram[i][j] for j in rest] for i in rest],
        [lat.labels[i] for i in rest],
    )
    return HilbertLattice(base=base, n=n, extended=lat, e_index=e_index)


def natural_isometry(g: LatticeIsometry, hilb: HilbertLattice) -> LatticeIsometry:
    """Block extension of a base isometry fixing e; d_1 is unchanged since the
    extra eigenvalue is 1."""
    if g.lattice.gram != hilb.base.gram:
        raise LatticeMismatchError("isometry does not act on the base lattice")
    r = hilb.base.rank
    e = hilb.e_index
    idx = [None] * (r + 1)  # new position -> base position (None at e)
    base_positions = [p for p in range(r + 1) if p != e]
    for base_i, new_i in enumerate(base_positions):
        idx[new_i] = base_i
    m = [[0] * (r + 1) for _ in range(r + 1)]
    for i in range(r + 1):
        for j in range(r + 1):
            if i == e or j == e:
                m[i][j] = 1 if i == j else 0
            else:
                m[i][j] = g.matrix[idx[i]][idx[j]]
    return verify_isometry(hilb.extended, m)


def _beauville_candidates(
    lat: GramLattice,
    h: int,
    e: int,
    x: int,
    iota_h: list[int],
    iota_e: list[int],
    coordinate_bound: int = 64,
) -> list[tuple[int, ...]]:
    """Integer candidates for the image of basis vector x under the involution.

    The two pairing constraints (image, iota_h) = (x, h) and
    (image, iota_e) = (x, e) are solved exactly; substituting the general
    integer solution into the norm constraint leaves a one-variable integer
    quadratic at rank 3 (solved exactly) or a bounded enumeration in the
    remaining free variables at higher rank.
    """
    g = lat.gram_rows()
    r = lat.rank
    ex = [1 if i == x else 0 for i in range(r)]
    rows = [
        linalg.mat_vec(g, iota_h),
        linalg.mat_vec(g, iota_e),
    ]
    rhs = [
        linalg.bilinear(g, ex, [1 if i == h else 0 for i in range(r)]),
        linalg.bilinear(g, ex, [1 if i == e else 0 for i in range(r)]),
    ]
    solution = linalg.solve_integer_system(rows, rhs)
    if solution is None:
        return []
    u0, kernel = solution
    target = g[x][x]
    candidates: list[tuple[int, ...]] = []
    if len(kernel) == 0:
        if linalg.bilinear(g, u0, u0) == target:
            candidates.append(tuple(u0))
        return candidates
    if len(kernel) == 1:
        k = kernel[0]
        a = linalg.bilinear(g, k, k)
        b = 2 * linalg.bilinear(g, u0, k)
        c = linalg.bilinear(g, u0, u0) - target
        for t in _integer_quadratic_roots(a, b, c, coordinate_bound):
            candidates.append(tuple(x0 + t * kx for x0, kx in zip(u0, k)))
        return sorted(candidates)
    for ts in itertools.product(
        range(-coordinate_bound, coordinate_bound + 1), repeat=len(kernel)
    ):
        v = list(u0)
        for t, k in zip(ts, kernel):
            for i in range(r):
                v[i] += t * k[i]
        if linalg.bilinear(g, v, v) == target:
            candidates.append(tuple(v))
    return sorted(candidates)


def _integer_quadratic_roots(a: int, b: int, c: int, bound: int) -> list[int]:
    """Integer roots of a t^2 + b t + c = 0; the degenerate all-zero equation
    falls back to the bounded range (filters upstream must disambiguate)."""
    if a == 0:
        if b == 0:
            return list(range(-bound, bound + 1)) if c == 0 else []
        return [-c // b] if c % b == 0 else []
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    from .polynomial import is_perfect_square

    if not is_perfect_square(disc):
        return []
    from math import isqrt

    s = isqrt(disc)
    roots = []
    for num in (-b + s, -b - s):
        if num % (2 * a) == 0:
            roots.append(num // (2 * a))
    return sorted(set(roots))


def solve_beauville(
    hilb: HilbertLattice,
    quartic_class_index: int,
    coordinate_bound: int = 64,
) -> BeauvilleSolution:
    """Derive the involution iota with iota(h) = 3h - 4e, iota(e) = 2h - 3e
    and the action on every remaining basis vector pinned down by: pairings
    with iota(h), iota(e); norm preservation; iota^2 = identity; and a fixed
    sublattice of rank exactly 1 (generated by h - e).

    Keeps the full candidate trace so callers can report what was rejected
    and why. Raises NoSolutionError / AmbiguousSolutionError when the filters
    leave zero or several involutions.
    """
    lat = hilb.extended
    if hilb.n != 2:
        raise BadNError(f"the quartic involution needs n = 2, got {hilb.n}")
    h = quartic_class_index
    e = hilb.e_index
    if h == e or not 0 <= h < lat.rank:
        raise DimensionMismatchError(f"bad quartic class index {h}")
    if lat.gram[h][h] != 4:
        raise DimensionMismatchError(
            f"class {lat.labels[h]} has norm {lat.gram[h][h]}, need 4"
        )
    r = lat.rank
    iota_h = [0] * r
    iota_h[h], iota_h[e] = 3, -4
    iota_e = [0] * r
    iota_e[h], iota_e[e] = 2, -3
    others = [i for i in range(r) if i not in (h, e)]
    per_vector: list[list[tuple[int, ...]]] = []
    for x in others:
        cands = _beauville_candidates(lat, h, e, x, iota_h, iota_e, coordinate_bound)
        if not cands:
            raise NoSolutionError(
                f"no integer image for basis vector {lat.labels[x]} satisfies the "
                "pairing and norm constraints"
            )
        per_vector.append(cands)

    survivors: list[tuple[dict[int, tuple[int, ...]], LatticeIsometry]] = []
    rejection_by_vector: dict[int, dict[tuple[int, ...], str]] = {x: {} for x in others}
    for combo in itertools.product(*per_vector) if others else [()]:
        m = [[0] * r for _ in range(r)]
        for i in range(r):
            m[i][h] = iota_h[i]
            m[i][e] = iota_e[i]
        for x, img in zip(others, combo):
            for i in range(r):
                m[i][x] = img[i]
        try:
            iso = verify_isometry(lat, m)
        except Exception:
            _note_rejections(rejection_by_vector, others, combo, "not an isometry")
            continue
        if linalg.mat_mul(m, m) != linalg.identity(r):
            _note_rejections(rejection_by_vector, others, combo, "square is not the identity")
            continue
        fixed = invariant_sublattice(iso)
        if len(fixed) != 1:
            _note_rejections(
                rejection_by_vector,
                others,
                combo,
                f"invariant sublattice has rank {len(fixed)}, need 1",
            )
            continue
        survivors.append(({x: img for x, img in zip(others, combo)}, iso))

    if not survivors:
        raise NoSolutionError("every candidate image fails the involution filters")
    if len(survivors) > 1:
        raise AmbiguousSolutionError([s[0] for s in survivors])
    chosen_map, iso = survivors[0]
    records = []
    for x, cands in zip(others, per_vector):
        rejects = tuple(
            (cand, rejection_by_vector[x].get(cand, "rejected in combination"))
            for cand in cands
            if cand != chosen_map[x]
        )
        records.append(
            CandidateRecord(
                basis_index=x,
                candidates=tuple(cands),
                chosen=chosen_map[x],
                rejections=rejects,
            )
        )
    return BeauvilleSolution(
        isometry=iso,
        h_index=h,
        e_index=e,
        records=tuple(records),
        assumed_hypotheses=(
            "quartic class is very ample",
            "the surface contains no line",
        ),
    )


def _note_rejections(table, others, combo, reason):
    for x, img in zip(others, combo):
        table[x].setdefault(img, reason)


def beauville_involution(
    hilb: HilbertLattice, quartic_class_index: int
) -> LatticeIsometry:
    """The unique involution selected by solve_beauville (see its docstring)."""
    return solve_beauville(hilb, quartic_class_index).isometry


def kummer_first_degree(m: Sl2Matrix) -> FirstDegree:
    """First dynamical degree of the torus automorphism induced on the Kummer
    surface: 1 for |trace| <= 2, otherwise the root > 1 of
    x^2 - (t^2 - 2) x + 1 (the square of the large eigenvalue of m)."""
    t = m.trace
    if abs(t) <= 2:
        return 1
    defining = IntPolynomial((1, -(t * t - 2), 1))
    roots = isolate_real_roots(defining)
    root = roots[-1]
    while root.lo <= 1:
        root = root.refined((root.hi - root.lo) / 2)
    return root


def kummer_spectrum(m: Sl2Matrix, n: int) -> DegreeSpectrum:
    """Degree table of the induced automorphism on the Hilbert scheme of n
    points of the Kummer surface; d_1 passes through unchanged."""
    if n < 2:
        raise BadNError(f"need n >= 2 points, got {n}")
    return degree_spectrum(n, kummer_first_degree(m))


def naturality_certificate(
    iso: LatticeIsometry, hilb: HilbertLattice
) -> NaturalityCertificate:
    """Necessary condition for being induced from a surface automorphism: the
    fixed sublattice must contain a class of norm -2n+2 (the exceptional
    half-class of the inducing surface is fixed).

    NotNatural is only returned when that is provably impossible: empty fixed
    lattice, a rank-1 fixed lattice whose generator norm times a square can
    never be -2n+2, or a certified non-representation at higher rank.
    PossiblyNatural carries no converse guarantee.
    """
    if iso.lattice.gram != hilb.extended.gram:
        raise LatticeMismatchError("isometry does not act on the extended lattice")
    from .lattice import CertifiedNo, FoundVector, represents

    required = hilb.e_norm
    fixed = invariant_sublattice(iso)
    if not fixed:
        return NaturalityCertificate(
            NOT_NATURAL,
            (),
            required,
            None,
            "fixed sublattice is trivial; no class is fixed at all",
        )
    if len(fixed) == 1:
        v = fixed[0]
        norm = norm_of(hilb.extended, v)
        if _square_times_equals(norm, required):
            return NaturalityCertificate(
                POSSIBLY_NATURAL,
                (tuple(v),),
                required,
                None,
                f"fixed generator has norm {norm}; a multiple reaches {required}",
            )
        return NaturalityCertificate(
            NOT_NATURAL,
            (tuple(v),),
            required,
            (tuple(v), norm),
            f"every fixed class is a multiple of a generator of norm {norm}; "
            f"k^2 * {norm} = {required} has no integer solution",
        )
    # fixed rank >= 2: restrict the form and ask the representation machinery
    g = hilb.extended.gram_rows()
    basis = [list(v) for v in fixed]
    restricted = [[linalg.bilinear(g, u, w) for w in basis] for u in basis]
    sub = make_lattice(restricted, [f"f{i + 1}" for i in range(len(basis))])
    result = represents(sub, required, bound=16)
    if isinstance(result, CertifiedNo):
        return NaturalityCertificate(
            NOT_NATURAL,
            tuple(tuple(v) for v in fixed),
            required,
            None,
            f"restricted fixed form cannot represent {required}: {result.reason}",
        )
    if isinstance(result, FoundVector):
        detail = f"fixed class of norm {required} exists"
    else:
        detail = (
            f"no fixed class of norm {required} found within bound "
            f"{result.bound}, and no certificate applies"
        )
    return NaturalityCertificate(
        POSSIBLY_NATURAL,
        tuple(tuple(v) for v in fixed),
        required,
        None,
        detail,
    )


def _square_times_equals(norm: int, required: int) -> bool:
    """Is k^2 * norm == required solvable with a nonzero integer k?"""
    if norm == 0:
        return required == 0
    if required % norm != 0:
        return False
    q = required // norm
    from .polynomial import is_perfect_square

    return q > 0 and is_perfect_square(q)


def compose(a: LatticeIsometry, b: LatticeIsometry) -> LatticeIsometry:
    """Pullback composition: compose(a, b).matrix = a.matrix * b.matrix."""
    if a.lattice.gram != b.lattice.gram:
        raise LatticeMismatchError("cannot compose isometries of different lattices")
    return verify_isometry(a.lattice, linalg.mat_mul(a.rows(), b.rows()))


def power(a: LatticeIsometry, exponent: int) -> LatticeIsometry:
    """Non-negative matrix power; power(a, 0) is the identity."""
    if exponent < 0:
        raise ValueError("negative powers are not supported")
    return verify_isometry(a.lattice, linalg.mat_pow(a.rows(), exponent))
