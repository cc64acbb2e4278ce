"""
Alternants Module
Symmetric group machinery and the bigraded pieces of A (alternating polynomials),
its powers A^k, and the invariant ring
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from sympy.combinatorics.named_groups import SymmetricGroup

from errors import UsageError
from exact_poly import BiDegree, Monomial, Polynomial, column_index, monomials_of_bidegree
from linalg import EXACT, Field, rank, rref, span_contains
from parallel import parallel_map

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def permutations_with_sign(n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """All (array form, sign) pairs of S_n, sorted by array form"""
    if n == 1:
        return (((0,), 1),)
    return tuple(sorted((tuple(p.array_form), p.signature()) for p in SymmetricGroup(n).generate()))


@dataclass(frozen=True)
class BiExponentSet:
    """n distinct pairs (p, q), kept sorted ascending"""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        entries = tuple(sorted((int(p), int(q)) for p, q in self.entries))
        if len(set(entries)) != len(entries):
            raise UsageError(f"biexponents must be distinct: {entries}")
        if any(p < 0 or q < 0 for p, q in entries):
            raise UsageError(f"biexponents must be nonnegative: {entries}")
        object.__setattr__(self, 'entries', entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    def bidegree(self) -> BiDegree:
        return BiDegree(sum(p for p, _ in self.entries), sum(q for _, q in self.entries))


@dataclass(frozen=True)
class GradedBasis:
    """Row-reduced basis of one bidegree piece"""

    n: int
    bidegree: BiDegree
    vectors: tuple[Polynomial, ...] = ()
    provenance: tuple[str, ...] = dataclass_field(default=())

    @property
    def dim(self) -> int:
        return len(self.vectors)


def antisymmetrize(m: Monomial) -> Polynomial:
    """Sum over sigma in S_n of sgn(sigma) * sigma(m)"""
    n = m.n
    terms: dict[Monomial, Fraction] = {}
    for perm, sign in permutations_with_sign(n):
        image = m.permuted(perm)
        terms[image] = terms.get(image, 0) + sign
    return Polynomial(terms, n)


def symmetrize(m: Monomial) -> Polynomial:
    """Orbit sum of m under the diagonal action (each distinct image once)"""
    orbit = {m.permuted(perm) for perm, _ in permutations_with_sign(m.n)}
    return Polynomial({image: 1 for image in orbit}, m.n)


def delta(D: BiExponentSet) -> Polynomial:
    """
    Generalized Vandermonde determinant det(x_i^{p_j} y_i^{q_j})

    Args:
        D (BiExponentSet): columns in the sorted order of D's entries

    Returns:
        Polynomial: alternating, nonzero
    """
    n = D.n
    ps = [p for p, _ in D.entries]
    qs = [q for _, q in D.entries]
    terms = {}
    for perm, sign in permutations_with_sign(n):
        m = Monomial(tuple(ps[perm[i]] for i in range(n)), tuple(qs[perm[i]] for i in range(n)))
        terms[m] = sign
    return Polynomial(terms, n)


def polynomial_determinant(matrix: Sequence[Sequence[Polynomial]], n: int) -> Polynomial:
    """Leibniz expansion of a square matrix of polynomials in n variable pairs"""
    size = len(matrix)
    total = Polynomial.zero(n)
    for perm, sign in permutations_with_sign(size):
        term = Polynomial.constant(sign, n)
        for i in range(size):
            term = term * matrix[i][perm[i]]
            if not term:
                break
        if term:
            total = total + term
    return total


def is_alternating(p: Polynomial, perms: Sequence[tuple[tuple[int, ...], int]] | None = None) -> bool:
    """sigma(p) == sgn(sigma) * p for every listed (sigma, sign); all of S_n by default"""
    for perm, sign in perms if perms is not None else permutations_with_sign(p.n):
        if p.act(perm) != p.scale(sign):
            return False
    return True


def elementary_symmetric_y(d: int, n: int) -> Polynomial:
    """e_d(y_1, ..., y_n)"""
    if not 1 <= d <= n:
        raise UsageError(f"elementary symmetric degree must be in 1..{n}, got {d}")
    return _elementary(d, n)


@lru_cache(maxsize=None)
def _elementary(d: int, n: int) -> Polynomial:
    terms = {}
    for subset in combinations(range(n), d):
        ys = tuple(1 if i in subset else 0 for i in range(n))
        terms[Monomial((0,) * n, ys)] = 1
    return Polynomial(terms, n)


@lru_cache(maxsize=None)
def elementary_monomial(mu: tuple[int, ...]) -> Polynomial:
    """e_1^mu[0] * ... * e_n^mu[n-1], of y-degree sum((d+1)*mu[d])"""
    n = len(mu)
    result = Polynomial.constant(1, n)
    for d, power in enumerate(mu, 1):
        if power:
            result = result * _elementary(d, n) ** power
    return result


def weighted_exponents(n: int, degree: int) -> list[tuple[int, ...]]:
    """All mu with sum(d * mu[d-1]) == degree, i.e. monomials in e_1..e_n of y-degree `degree`"""
    out = []

    def extend(d, remaining, prefix):
        if d > n:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for power in range(remaining // d + 1):
            extend(d + 1, remaining - power * d, prefix + [power])

    extend(1, degree, [])
    return sorted(out)


def _box_points(bd: BiDegree) -> list[tuple[int, int]]:
    return [(p, q) for p in range(bd.dx + 1) for q in range(bd.dy + 1)]


@lru_cache(maxsize=None)
def biexponent_sets(n: int, bd: BiDegree) -> tuple[BiExponentSet, ...]:
    """All n-sets of distinct biexponents with column sums bd"""
    found = []
    for subset in combinations(_box_points(bd), n):
        if sum(p for p, _ in subset) == bd.dx and sum(q for _, q in subset) == bd.dy:
            found.append(BiExponentSet(subset))
    return tuple(found)


def count_biexponent_sets(n: int, bd: BiDegree) -> int:
    """
    Count n-sets of distinct biexponents with column sums bd by dynamic programming.
    Independent of biexponent_sets; serves as the dimension oracle for A^1.
    """
    points = _box_points(bd)

    @lru_cache(maxsize=None)
    def count(start, remaining, dx, dy):
        if remaining == 0:
            return 1 if dx == 0 and dy == 0 else 0
        total = 0
        for idx in range(start, len(points)):
            p, q = points[idx]
            if p <= dx and q <= dy:
                total += count(idx + 1, remaining - 1, dx - p, dy - q)
        return total

    return count(0, n, bd.dx, bd.dy)


def encode(polys: Sequence[Polynomial], n: int, bd: BiDegree) -> list[dict[int, Fraction]]:
    """
    Coefficient rows of bihomogeneous polynomials

    Args:
        polys (list): polynomials of bidegree bd
        n (int): number of variable pairs
        bd (BiDegree): bidegree fixing the column basis

    Returns:
        list: one sparse row per polynomial, columns in monomials_of_bidegree order
    """
    index = column_index(n, bd)
    return [p.to_row(index) for p in polys]


def span_basis(polys: Sequence[Polynomial], n: int, bd: BiDegree, field: Field = EXACT,
               provenance: str = 'span') -> GradedBasis:
    """Row-reduce bihomogeneous polynomials of bidegree bd into a GradedBasis"""
    columns = monomials_of_bidegree(n, bd)
    reduced, _ = rref(encode(polys, n, bd), len(columns), field)
    vectors = tuple(Polynomial.from_row(row, columns, n) for row in reduced)
    return GradedBasis(n, bd, vectors, (provenance,) * len(vectors))


def span_dim(polys: Sequence[Polynomial], n: int, bd: BiDegree, field: Field = EXACT) -> int:
    """Dimension of the span of polynomials of bidegree bd"""
    return rank(encode(polys, n, bd), len(monomials_of_bidegree(n, bd)), field)


def membership(p: Polynomial, basis: GradedBasis, field: Field = EXACT) -> bool:
    """True iff p lies in the span of the basis (p must have the basis bidegree or be zero)"""
    if not p:
        return True
    vector = p.to_row(column_index(basis.n, basis.bidegree))
    return span_contains(encode(basis.vectors, basis.n, basis.bidegree), vector,
                         len(monomials_of_bidegree(basis.n, basis.bidegree)), field)


@lru_cache(maxsize=None)
def a_k_basis(k: int, bd: BiDegree, n: int, field: Field = EXACT) -> GradedBasis:
    """
    Basis of (A^k)_bd

    A^1 is spanned by the Delta-determinants of bidegree bd; A^k is spanned by the
    products of A^{k-1} and A^1 pieces whose bidegrees add up to bd.

    Args:
        k (int): power, at least 1
        bd (BiDegree): bidegree
        n (int): number of variable pairs
        field (Field): coefficient field

    Returns:
        GradedBasis: row-reduced basis (possibly empty)
    """
    if k < 1:
        raise UsageError(f"A^k needs k >= 1, got {k}")
    if k == 1:
        deltas = [delta(D) for D in biexponent_sets(n, bd)]
        return span_basis(deltas, n, bd, field, provenance='delta')
    products = []
    for split in BiDegree.window(bd):
        rest = bd.minus(split.dx, split.dy)
        left = a_k_basis(k - 1, split, n, field)
        if not left.dim:
            continue
        right = a_k_basis(1, rest, n, field)
        for u in left.vectors:
            for w in right.vectors:
                products.append(u * w)
    logger.debug("A^%d at %s: %d products", k, bd, len(products))
    return span_basis(products, n, bd, field, provenance=f'product:A^{k - 1}*A^1')


def invariant_basis(bd: BiDegree, n: int) -> GradedBasis:
    """Orbit-sum basis of (C[x,y]^{S_n})_bd"""
    seen = set()
    vectors = []
    for m in monomials_of_bidegree(n, bd):
        if m in seen:
            continue
        orbit_sum = symmetrize(m)
        seen.update(orbit_sum.terms)
        vectors.append(orbit_sum)
    return GradedBasis(n, bd, tuple(vectors), ('orbit-sum',) * len(vectors))


def _piece_dim(k: int, bd: BiDegree, n: int, field: Field) -> int:
    if k == 0:
        return invariant_basis(bd, n).dim
    return a_k_basis(k, bd, n, field).dim


def hilbert_table(k: int, n: int, cutoff: BiDegree, field: Field = EXACT, n_jobs: int = 1) -> dict[BiDegree, int]:
    """
    dim (A^k)_(a,b) for every (a, b) in the window; k = 0 tabulates the invariant ring

    Args:
        k (int): power of A (0 for C[x,y]^{S_n})
        n (int): number of variable pairs
        cutoff (BiDegree): window corner
        field (Field): coefficient field
        n_jobs (int): worker count

    Returns:
        dict: BiDegree -> dimension
    """
    window = BiDegree.window(cutoff)
    dims = parallel_map(_piece_dim, [(k, bd, n, field) for bd in window], n_jobs)
    return dict(zip(window, dims))


def invariant_hilbert_table(n: int, cutoff: BiDegree) -> dict[BiDegree, int]:
    return hilbert_table(0, n, cutoff)


def stability_under_symmetric_y(k: int, n: int, cutoff: BiDegree, field: Field = EXACT) -> bool:
    """e_d(y) * (A^k)_(a,b) lies in (A^k)_(a,b+d) for every basis vector inside the window"""
    for bd in BiDegree.window(cutoff):
        source = a_k_basis(k, bd, n, field)
        for d in range(1, n + 1):
            if bd.dy + d > cutoff.dy:
                break
            target = a_k_basis(k, BiDegree(bd.dx, bd.dy + d), n, field)
            e_d = elementary_symmetric_y(d, n)
            for v in source.vectors:
                if not membership(e_d * v, target, field):
                    logger.warning("e_%d * %s escapes A^%d", d, v, k)
                    return False
    return True
