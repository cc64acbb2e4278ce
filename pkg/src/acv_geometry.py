"""
Almost Commuting Variety Module
Exact points (X, Y, i, j) with [X,Y] + ij = 0, stratum samplers, Krylov
dimensions, Jacobian ranks and the determinant-twisted functions psi_f, phi_f
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np
from sympy import Poly, Rational, Symbol, discriminant

from errors import SamplerFailure, UsageError
from linalg import charpoly, determinant, inverse, rank, rref

logger = logging.getLogger(__name__)

LETTERS = ('x', 'y')


def _object_array(values, ndim: int) -> np.ndarray:
    arr = np.empty(np.shape(values), dtype=object)
    for idx, v in np.ndenumerate(np.asarray(values, dtype=object)):
        arr[idx] = Fraction(v)
    if arr.ndim != ndim:
        raise UsageError(f"expected a {ndim}-dimensional array, got shape {arr.shape}")
    return arr


def zeros(shape) -> np.ndarray:
    return np.full(shape, Fraction(0), dtype=object)


def identity(n: int) -> np.ndarray:
    out = zeros((n, n))
    for a in range(n):
        out[a, a] = Fraction(1)
    return out


def diagonal(values: Sequence) -> np.ndarray:
    out = zeros((len(values), len(values)))
    for a, v in enumerate(values):
        out[a, a] = Fraction(v)
    return out


@dataclass(frozen=True, eq=False)
class MPoint:
    """A point (X, Y, i, j): X, Y square, i a column vector, j a row vector"""

    X: np.ndarray
    Y: np.ndarray
    i: np.ndarray
    j: np.ndarray

    def __post_init__(self):
        for name, ndim in (('X', 2), ('Y', 2), ('i', 1), ('j', 1)):
            arr = _object_array(getattr(self, name), ndim)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        n = self.i.shape[0]
        if self.X.shape != (n, n) or self.Y.shape != (n, n) or self.j.shape != (n,):
            raise UsageError("X, Y must be n x n and i, j of length n")

    @property
    def n(self) -> int:
        return self.i.shape[0]

    @cached_property
    def is_on_variety(self) -> bool:
        return on_variety(self)

    def __eq__(self, other):
        if not isinstance(other, MPoint):
            return NotImplemented
        return all(np.array_equal(a, b) for a, b in
                   ((self.X, other.X), (self.Y, other.Y), (self.i, other.i), (self.j, other.j)))

    def to_json(self) -> dict:
        return {
            'n': self.n,
            'X': [[str(c) for c in row] for row in self.X],
            'Y': [[str(c) for c in row] for row in self.Y],
            'i': [str(c) for c in self.i],
            'j': [str(c) for c in self.j],
            'on_variety': self.is_on_variety
        }

    @classmethod
    def from_json(cls, payload: dict) -> MPoint:
        return cls(
            [[Fraction(c) for c in row] for row in payload['X']],
            [[Fraction(c) for c in row] for row in payload['Y']],
            [Fraction(c) for c in payload['i']],
            [Fraction(c) for c in payload['j']]
        )


@dataclass(frozen=True)
class NCWord:
    """A word in the noncommuting letters x and y"""

    letters: str = ''

    def __post_init__(self):
        if any(ch not in LETTERS for ch in self.letters):
            raise UsageError(f"words use only the letters x and y, got '{self.letters}'")

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return self.letters


@dataclass(frozen=True)
class NCTuple:
    """An n-tuple of words (f_1, ..., f_n)"""

    words: tuple[NCWord, ...]

    def __post_init__(self):
        words = tuple(w if isinstance(w, NCWord) else NCWord(w) for w in self.words)
        if not words:
            raise UsageError("an NCTuple needs at least one word")
        object.__setattr__(self, 'words', words)

    @property
    def n(self) -> int:
        return len(self.words)

    def total_length(self) -> int:
        return sum(len(w) for w in self.words)

    def to_json(self) -> list[str]:
        return [w.letters for w in self.words]


def commutator_residual(p: MPoint) -> np.ndarray:
    """[X, Y] + ij"""
    return p.X @ p.Y - p.Y @ p.X + np.outer(p.i, p.j)


def on_variety(p: MPoint) -> bool:
    """True iff [X,Y] + ij is exactly zero"""
    return bool((commutator_residual(p) == 0).all())


def eval_word(X: np.ndarray, Y: np.ndarray, w: NCWord) -> np.ndarray:
    """Product of X/Y factors in word order; the empty word gives the identity"""
    result = identity(X.shape[0])
    for letter in w.letters:
        result = result @ (X if letter == 'x' else Y)
    return result


def _sparse(vector) -> dict[int, Fraction]:
    return {a: Fraction(c) for a, c in enumerate(vector) if c}


def krylov_saturation(start: np.ndarray, operators: Sequence, n: int) -> tuple[int, int]:
    """
    Dimension of the smallest operator-stable subspace containing `start`

    Args:
        start (np.ndarray): seed vector
        operators (list): callables vector -> vector
        n (int): ambient dimension

    Returns:
        tuple: (dimension, rounds until the dimension stopped growing)
    """
    basis, _ = rref([_sparse(start)], n)
    rounds = 0
    while True:
        vectors = [np.array([row.get(a, Fraction(0)) for a in range(n)], dtype=object) for row in basis]
        candidates = basis + [_sparse(op(v)) for v in vectors for op in operators]
        grown, _ = rref(candidates, n)
        if len(grown) == len(basis):
            return len(basis), rounds
        rounds += 1
        basis = grown


def krylov_col_dim(p: MPoint) -> int:
    """dim C[X,Y] i"""
    dim, _ = krylov_saturation(p.i, [lambda v: p.X @ v, lambda v: p.Y @ v], p.n)
    return dim


def krylov_row_dim(p: MPoint) -> int:
    """dim j C[X,Y]"""
    dim, _ = krylov_saturation(p.j, [lambda v: v @ p.X, lambda v: v @ p.Y], p.n)
    return dim


def char_poly_coeffs(p: MPoint) -> list[Fraction]:
    """Coefficients of det(t*Id - Y) below the leading term"""
    return charpoly(p.Y.tolist())[1:]


def has_distinct_eigenvalues(p: MPoint) -> bool:
    """Y has pairwise distinct eigenvalues iff its characteristic polynomial has nonzero discriminant"""
    if p.n == 1:
        return True
    t = Symbol('t')
    coeffs = [Rational(c.numerator, c.denominator) for c in charpoly(p.Y.tolist())]
    return discriminant(Poly(coeffs, t)) != 0


def verify_stratum(p: MPoint, r: int) -> bool:
    """Membership in M'_r: on M, distinct eigenvalues of Y, Krylov dimensions (n - r, r)"""
    return (on_variety(p) and has_distinct_eigenvalues(p)
            and krylov_col_dim(p) == p.n - r and krylov_row_dim(p) == r)


def stratum_of(p: MPoint) -> int | None:
    """The r with p in M'_r, or None when p lies in no such stratum"""
    if not on_variety(p) or not has_distinct_eigenvalues(p):
        return None
    r = p.n - krylov_col_dim(p)
    return r if krylov_row_dim(p) == r else None


def _entropy(seed) -> list[int]:
    if isinstance(seed, (int, np.integer)):
        return [int(seed)]
    return [int(s) for s in seed]


def random_rational(rng: np.random.Generator, window: tuple[int, int], max_denominator: int = 1,
                    nonzero: bool = False) -> Fraction:
    """
    Random rational p/q with p in the window and 1 <= q <= max_denominator

    Args:
        rng (np.random.Generator): source of randomness
        window (tuple): inclusive numerator range
        max_denominator (int): largest denominator
        nonzero (bool): redraw until the value is nonzero

    Returns:
        Fraction: the sampled value
    """
    lo, hi = window
    while True:
        value = Fraction(int(rng.integers(lo, hi + 1)), int(rng.integers(1, max_denominator + 1)))
        if value or not nonzero:
            return value


def random_distinct_rationals(count: int, rng: np.random.Generator, window: tuple[int, int],
                              max_denominator: int = 1) -> list[Fraction]:
    """Pairwise distinct random rationals, in draw order"""
    values: list[Fraction] = []
    while len(values) < count:
        v = random_rational(rng, window, max_denominator)
        if v not in values:
            values.append(v)
    return values


def sample_stratum(n: int, r: int, seed, budget: int = 100, eigenvalue_window: tuple[int, int] = (-9, 9),
                   entry_window: tuple[int, int] = (-5, 5), max_denominator: int = 3) -> MPoint:
    """
    Sample an exact point of the stratum M'_r

    Y = diag(y) with distinct rational y; j is supported on an r-subset R and i on
    its complement, so i_a j_a = 0; X_ab = i_a j_b / (y_a - y_b) off the diagonal
    and random on it. Each candidate is verified and resampled on failure.

    Args:
        n (int): matrix size
        r (int): stratum, 0 <= r <= n
        seed (int or list): entropy for the generator
        budget (int): resampling budget

    Returns:
        MPoint: a verified point of M'_r
    """
    if not 0 <= r <= n:
        raise UsageError(f"stratum must be in 0..{n}, got {r}")
    rng = np.random.default_rng(np.random.SeedSequence(_entropy(seed) + [n, r]))
    for attempt in range(budget):
        ys = random_distinct_rationals(n, rng, eigenvalue_window, max_denominator)
        support = set(int(a) for a in rng.choice(n, size=r, replace=False))
        i = [Fraction(0) if a in support else random_rational(rng, entry_window, max_denominator, nonzero=True)
             for a in range(n)]
        j = [random_rational(rng, entry_window, max_denominator, nonzero=True) if a in support else Fraction(0)
             for a in range(n)]
        X = [[random_rational(rng, entry_window, max_denominator) if a == b else i[a] * j[b] / (ys[a] - ys[b])
              for b in range(n)] for a in range(n)]
        point = MPoint(X, diagonal(ys), i, j)
        if verify_stratum(point, r):
            return point
        logger.debug("stratum %d sample rejected on attempt %d", r, attempt + 1)
    raise SamplerFailure(f"no verified point of stratum {r} for n={n} within {budget} attempts")


def jacobian_matrix(p: MPoint) -> list[dict[int, Fraction]]:
    """
    Sparse n^2 x (2n^2 + 2n) matrix of partials of the entries of [X,Y] + ij,
    columns ordered X (row-major), Y (row-major), i, j
    """
    n = p.n
    X, Y, i, j = p.X, p.Y, p.i, p.j
    x_col = lambda a, b: a * n + b
    y_col = lambda a, b: n * n + a * n + b
    i_col = lambda a: 2 * n * n + a
    j_col = lambda b: 2 * n * n + n + b
    rows = []
    for a in range(n):
        for b in range(n):
            row: dict[int, Fraction] = {}

            def put(col, value):
                if value:
                    row[col] = row.get(col, 0) + value

            for q in range(n):
                put(x_col(a, q), Y[q, b])
                put(y_col(a, q), -X[q, b])
            for s in range(n):
                put(x_col(s, b), -Y[a, s])
                put(y_col(s, b), X[a, s])
            put(i_col(a), j[b])
            put(j_col(b), i[a])
            rows.append({c: v for c, v in row.items() if v})
    return rows


def jacobian_rank(p: MPoint) -> int:
    """Rank of the Jacobian of [X,Y] + ij at a point of M"""
    if not on_variety(p):
        raise UsageError("jacobian_rank needs a point with [X,Y] + ij = 0")
    return rank(jacobian_matrix(p), 2 * p.n * p.n + 2 * p.n)


def _check_tuple(p: MPoint, f: NCTuple):
    if f.n != p.n:
        raise UsageError(f"tuple of length {f.n} does not match n={p.n}")


def psi_eval(p: MPoint, f: NCTuple) -> Fraction:
    """det of the matrix whose column m is f_m(X,Y) i"""
    _check_tuple(p, f)
    columns = [eval_word(p.X, p.Y, w) @ p.i for w in f.words]
    return determinant([[columns[m][a] for m in range(p.n)] for a in range(p.n)])


def phi_eval(p: MPoint, f: NCTuple) -> Fraction:
    """det of the matrix whose row m is j f_m(X,Y)"""
    _check_tuple(p, f)
    rows = [p.j @ eval_word(p.X, p.Y, w) for w in f.words]
    return determinant([list(row) for row in rows])


def g_translate(p: MPoint, g) -> MPoint:
    """(g X g^-1, g Y g^-1, g i, j g^-1)"""
    g = _object_array(g, 2)
    if g.shape != (p.n, p.n):
        raise UsageError(f"g must be {p.n} x {p.n}")
    g_inv = _object_array(inverse(g.tolist()), 2)
    return MPoint(g @ p.X @ g_inv, g @ p.Y @ g_inv, g @ p.i, p.j @ g_inv)


def scale_point(p: MPoint, z) -> MPoint:
    """The scaling action (zX, zY, zi, zj)"""
    z = Fraction(z)
    return MPoint(p.X * z, p.Y * z, p.i * z, p.j * z)


def jmath_point(xs: Sequence, ys: Sequence) -> MPoint:
    """(diag x, diag y, (1, ..., 1), 0)"""
    if len(xs) != len(ys):
        raise UsageError("x and y must have the same length")
    n = len(xs)
    return MPoint(diagonal(xs), diagonal(ys), [Fraction(1)] * n, [Fraction(0)] * n)


def permutation_matrix(perm: Sequence[int]) -> np.ndarray:
    """Matrix sending basis vector b_a to b_perm[a]"""
    n = len(perm)
    out = zeros((n, n))
    for a, image in enumerate(perm):
        out[image, a] = Fraction(1)
    return out


def random_invertible(n: int, rng: np.random.Generator, window: tuple[int, int] = (-3, 3)) -> np.ndarray:
    """
    Random integer matrix in GL_n(Q), redrawn until the determinant is nonzero

    Args:
        n (int): size
        rng (np.random.Generator): source of randomness
        window (tuple): inclusive entry range

    Returns:
        np.ndarray: n x n object array of Fractions
    """
    while True:
        g = [[Fraction(int(rng.integers(window[0], window[1] + 1))) for _ in range(n)] for _ in range(n)]
        if determinant(g):
            return _object_array(g, 2)


def random_nctuple(n: int, max_len: int, rng: np.random.Generator) -> NCTuple:
    """n random words in x, y of length at most max_len"""
    words = []
    for _ in range(n):
        length = int(rng.integers(0, max_len + 1))
        words.append(NCWord(''.join(LETTERS[int(b)] for b in rng.integers(0, 2, size=length))))
    return NCTuple(tuple(words))


def equivariance_holds(p: MPoint, g: np.ndarray, f: NCTuple) -> bool:
    """psi(g.p) = det(g) psi(p), phi(g.p) = det(g)^-1 phi(p), char poly of Y unchanged"""
    det_g = determinant(g.tolist())
    moved = g_translate(p, g)
    return (psi_eval(moved, f) == det_g * psi_eval(p, f)
            and phi_eval(moved, f) == phi_eval(p, f) / det_g
            and char_poly_coeffs(moved) == char_poly_coeffs(p)
            and on_variety(moved) == on_variety(p))


def vanishing_pattern_holds(p: MPoint, r: int, f: NCTuple) -> bool:
    """psi_f vanishes off M_0 and phi_f vanishes off M_n"""
    if r != 0 and psi_eval(p, f) != 0:
        return False
    if r != p.n and phi_eval(p, f) != 0:
        return False
    return True


def scaling_weight_holds(p: MPoint, f: NCTuple, z) -> bool:
    """The scaling action keeps p on M and multiplies psi_f, phi_f by z^(n + total word length)"""
    moved = scale_point(p, z)
    weight = Fraction(z) ** (p.n + f.total_length())
    return (on_variety(moved) == on_variety(p)
            and psi_eval(moved, f) == weight * psi_eval(p, f)
            and phi_eval(moved, f) == weight * phi_eval(p, f))
