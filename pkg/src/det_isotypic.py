"""
Determinant-Twisted Functions Module
Pullback of psi-functions along jmath, the wedge identity, and rank evidence that
restriction identifies det^k-twisted functions on M with A^k
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Sequence

import numpy as np

from acv_geometry import (NCTuple, NCWord, g_translate, jmath_point, permutation_matrix, phi_eval, psi_eval,
                          random_distinct_rationals, random_invertible, random_rational)
from alternants import (BiExponentSet, a_k_basis, biexponent_sets, encode, invariant_basis, polynomial_determinant,
                        span_dim)
from errors import UsageError
from exact_poly import BiDegree, Monomial, Polynomial, monomials_of_bidegree
from linalg import EXACT, Field, dense_rank, determinant, rank
from reports import Verdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CommTuple:
    """n commutative polynomials in one variable pair (x, y)"""

    polys: tuple[Polynomial, ...]

    def __post_init__(self):
        polys = tuple(self.polys)
        if not polys:
            raise UsageError("a CommTuple needs at least one entry")
        if any(p.n != 1 for p in polys):
            raise UsageError("CommTuple entries are polynomials in a single pair (x, y)")
        object.__setattr__(self, 'polys', polys)

    @property
    def n(self) -> int:
        return len(self.polys)

    @classmethod
    def from_biexponents(cls, D: BiExponentSet) -> CommTuple:
        return cls(tuple(Polynomial.monomial(Monomial((p,), (q,))) for p, q in D.entries))

    def to_nctuple(self) -> NCTuple:
        """Lift monomial entries x^p y^q to the words x...xy...y"""
        words = []
        for p in self.polys:
            if len(p) != 1 or next(iter(p.terms.values())) != 1:
                raise UsageError(f"only monic monomial entries lift to words, got {p}")
            m = next(iter(p.terms))
            words.append(NCWord('x' * m.xexp[0] + 'y' * m.yexp[0]))
        return NCTuple(tuple(words))


@dataclass(frozen=True)
class PsiProduct:
    """The product psi_{f^(1)} ... psi_{f^(k)}"""

    factors: tuple[CommTuple, ...]

    def __post_init__(self):
        if not self.factors:
            raise UsageError("a PsiProduct needs k >= 1 factors")

    @property
    def k(self) -> int:
        return len(self.factors)


def abelianize(w: NCWord) -> Polynomial:
    """Image of a word under C<x,y> -> C[x,y]"""
    return Polynomial.monomial(Monomial((w.letters.count('x'),), (w.letters.count('y'),)))


def abelianize_tuple(f: NCTuple) -> CommTuple:
    return CommTuple(tuple(abelianize(w) for w in f.words))


def pullback_psi(f: CommTuple) -> Polynomial:
    """jmath^* psi_f = det(f_j(x_i, y_i))"""
    n = f.n
    matrix = [[f.polys[col].embed(row, n) for col in range(n)] for row in range(n)]
    return polynomial_determinant(matrix, n)


def pullback_product(product: PsiProduct) -> Polynomial:
    """
    jmath^* of a product of psi functions

    Args:
        product (PsiProduct): k factors

    Returns:
        Polynomial: the product of the factor pullbacks, an element of A^k
    """
    result = None
    for factor in product.factors:
        image = pullback_psi(factor)
        result = image if result is None else result * image
    return result


def pullback_trace(w: NCWord, n: int) -> Polynomial:
    """jmath^* tr w(X, Y) = sum_i x_i^a y_i^b, with a, b the letter counts of w"""
    m = abelianize(w)
    return sum((m.embed(i, n) for i in range(n)), Polynomial.zero(n))


def psi_product_value(point, product: PsiProduct) -> Fraction:
    value = Fraction(1)
    for factor in product.factors:
        value *= psi_eval(point, factor.to_nctuple())
        if not value:
            break
    return value


def _bidegree_splits(bd: BiDegree, parts: int) -> list[tuple[BiDegree, ...]]:
    """Nondecreasing sequences of `parts` bidegrees summing to bd"""
    if parts == 1:
        return [(bd,)]
    out = []
    for first in BiDegree.window(bd):
        rest = bd.minus(first.dx, first.dy)
        for tail in _bidegree_splits(rest, parts - 1):
            if first <= tail[0]:
                out.append((first,) + tail)
    return out


@lru_cache(maxsize=None)
def psi_products(n: int, k: int, bd: BiDegree) -> tuple[PsiProduct, ...]:
    """
    Monomial-entry psi-products of total bidegree bd, up to reordering of factors

    Entries inside a tuple are sorted (wedge antisymmetry), so each factor is a
    BiExponentSet; factors are taken in nondecreasing canonical order.
    """
    if k < 1:
        raise UsageError(f"psi-products need k >= 1, got {k}")
    found = set()
    for split in _bidegree_splits(bd, k):
        pools = [biexponent_sets(n, piece) for piece in split]
        if any(not pool for pool in pools):
            continue
        for choice in _product_choices(pools, split):
            found.add(tuple(sorted(choice, key=lambda D: D.entries)))
    return tuple(PsiProduct(tuple(CommTuple.from_biexponents(D) for D in choice))
                 for choice in sorted(found, key=lambda c: [D.entries for D in c]))


def _product_choices(pools, split):
    if not pools:
        yield ()
        return
    # equal consecutive bidegrees draw from the same pool: take multisets
    run = 1
    while run < len(split) and split[run] == split[0]:
        run += 1
    for head in combinations_with_replacement(pools[0], run):
        for tail in _product_choices(pools[run:], split[run:]):
            yield head + tail


def wedge_identity_check(f: NCTuple, trials: int, seed: int, window: tuple[int, int] = (-9, 9),
                         max_denominator: int = 3) -> bool:
    """
    psi_f at jmath(x, y) equals the pullback determinant, and phi_f vanishes there

    Args:
        f (NCTuple): word tuple
        trials (int): number of random (x, y)
        seed (int): generator seed

    Returns:
        bool: True iff every trial agrees exactly
    """
    rng = np.random.default_rng(np.random.SeedSequence([seed, f.n]))
    image = pullback_psi(abelianize_tuple(f))
    for _ in range(trials):
        xs = [random_rational(rng, window, max_denominator) for _ in range(f.n)]
        ys = [random_rational(rng, window, max_denominator) for _ in range(f.n)]
        point = jmath_point(xs, ys)
        if psi_eval(point, f) != image.evaluate(xs, ys) or phi_eval(point, f) != 0:
            logger.warning("wedge identity fails for %s at x=%s y=%s", f.to_json(), xs, ys)
            return False
    return True


def surjectivity_check(k: int, bd: BiDegree, n: int, field: Field = EXACT) -> dict:
    """
    Compare the span of pulled-back psi-products with (A^k)_bd

    Returns:
        dict: {span_dim, target_dim, pass}
    """
    images = [pullback_product(product) for product in psi_products(n, k, bd)]
    target = a_k_basis(k, bd, n, field)
    spanned = span_dim(images, n, bd, field)
    combined = span_dim(images + list(target.vectors), n, bd, field)
    passed = spanned == target.dim == combined
    return {'n': n, 'k': k, 'bidegree': [bd.dx, bd.dy], 'span_dim': spanned, 'target_dim': target.dim,
            'pass': passed}


def injectivity_evidence(k: int, bd: BiDegree, n: int, points: int, seed: int, field: Field = EXACT,
                         translate: bool = True, window: tuple[int, int] = (-9, 9),
                         max_denominator: int = 3) -> dict:
    """
    Rank of psi-product values at points g.jmath(x, y), rescaled by det(g)^-k,
    against the rank of their pullbacks in A^k

    Args:
        k (int): twist
        bd (BiDegree): bidegree
        n (int): number of variable pairs
        points (int): number of sampled G-translates
        seed (int): generator seed
        translate (bool): False keeps g = Id at every point

    Returns:
        dict: {eval_rank, image_rank, verdict}
    """
    products = psi_products(n, k, bd)
    image_rank = pullback_rank(products, n, bd, field)
    rng = np.random.default_rng(np.random.SeedSequence([seed, n, k, bd.dx, bd.dy]))
    rows = []
    for _ in range(points if products else 0):
        xs = random_distinct_rationals(n, rng, window, max_denominator)
        ys = random_distinct_rationals(n, rng, window, max_denominator)
        base = jmath_point(xs, ys)
        if translate:
            g = random_invertible(n, rng)
            point = g_translate(base, g)
            untwist = determinant(g.tolist()) ** -k
        else:
            point, untwist = base, Fraction(1)
        rows.append([psi_product_value(point, product) * untwist for product in products])
    eval_rank = dense_rank(rows, field) if rows else 0
    if eval_rank == image_rank:
        verdict = Verdict.PASS
    elif eval_rank < image_rank:
        verdict = Verdict.INCONCLUSIVE
    else:
        verdict = Verdict.FAIL
    return {'n': n, 'k': k, 'bidegree': [bd.dx, bd.dy], 'points': points, 'eval_rank': eval_rank,
            'image_rank': image_rank, 'verdict': verdict.value}


def _power_sum_exponents(bd: BiDegree, max_word_len: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(bd.dx + 1) for b in range(bd.dy + 1) if 0 < a + b <= max_word_len]


def trace_products(bd: BiDegree, max_word_len: int) -> list[tuple[NCWord, ...]]:
    """Multisets of words x^a y^b (1 <= a + b <= max_word_len) with total letter counts bd"""
    exponents = _power_sum_exponents(bd, max_word_len)
    out = []

    def extend(start, remaining: BiDegree, chosen):
        if remaining.total == 0:
            out.append(tuple(NCWord('x' * a + 'y' * b) for a, b in chosen))
            return
        for idx in range(start, len(exponents)):
            a, b = exponents[idx]
            rest = remaining.minus(a, b)
            if rest is not None:
                extend(idx, rest, chosen + [(a, b)])

    extend(0, bd, [])
    return out


def k0_remark_check(bd: BiDegree, n: int, cutoff_word_len: int | None = None, field: Field = EXACT) -> dict:
    """
    Products of trace functions tr w(X, Y), pulled back along jmath, span the
    invariant piece (C[x,y]^{S_n})_bd

    Returns:
        dict: {span_dim, target_dim, pass}
    """
    max_len = cutoff_word_len if cutoff_word_len is not None else max(bd.total, 1)
    images = []
    for words in trace_products(bd, max_len):
        image = Polynomial.constant(1, n)
        for w in words:
            image = image * pullback_trace(w, n)
        images.append(image)
    target = invariant_basis(bd, n)
    spanned = span_dim(images, n, bd, field)
    combined = span_dim(images + list(target.vectors), n, bd, field)
    passed = spanned == target.dim == combined
    return {'n': n, 'bidegree': [bd.dx, bd.dy], 'span_dim': spanned, 'target_dim': target.dim, 'pass': passed}


def twist_check(point, tuples: Sequence[NCTuple], g: np.ndarray, phi_count: int = 0) -> bool:
    """
    A product of psi's over `tuples` (the first phi_count of them as phi's instead)
    scales by det(g)^(psi count - phi count) under g
    """
    det_g = determinant(g.tolist())
    moved = g_translate(point, g)

    def value(p):
        out = Fraction(1)
        for idx, f in enumerate(tuples):
            out *= phi_eval(p, f) if idx < phi_count else psi_eval(p, f)
        return out

    twist = len(tuples) - 2 * phi_count
    return value(moved) == det_g ** twist * value(point)


def permutation_equivariance_holds(xs: Sequence, ys: Sequence, perm: Sequence[int]) -> bool:
    """Translating jmath(x, y) by a permutation matrix gives jmath(sigma x, sigma y)"""
    n = len(xs)
    moved_x = [None] * n
    moved_y = [None] * n
    for a, image in enumerate(perm):
        moved_x[image] = xs[a]
        moved_y[image] = ys[a]
    return g_translate(jmath_point(xs, ys), permutation_matrix(perm)) == jmath_point(moved_x, moved_y)


def image_coefficients(products: Sequence[PsiProduct], n: int, bd: BiDegree) -> list[dict[int, Fraction]]:
    """Coefficient rows of the pulled-back products over the monomials of bd"""
    return encode([pullback_product(p) for p in products], n, bd)


def pullback_rank(products: Sequence[PsiProduct], n: int, bd: BiDegree, field: Field = EXACT) -> int:
    return rank(image_coefficients(products, n, bd), len(monomials_of_bidegree(n, bd)), field)
