"""
Exact Linear Algebra Module
Row reduction, rank, kernels, determinants and inverses over Q or GF(p),
backed by sympy's DomainMatrix
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from sympy import GF, QQ, isprime
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from errors import UsageError

SparseRow = Mapping[int, Fraction]


@dataclass(frozen=True)
class Field:
    """Coefficient field for linear algebra: exact rationals, or GF(prime) when prime is set"""

    prime: int | None = None

    def __post_init__(self):
        if self.prime is not None and not isprime(self.prime):
            raise UsageError(f"GF({self.prime}) is not a field: {self.prime} is not prime")

    @property
    def is_exact(self) -> bool:
        return self.prime is None

    @property
    def domain(self):
        return QQ if self.prime is None else GF(self.prime)

    def convert(self, c) -> object:
        c = Fraction(c)
        if self.prime is None:
            return QQ(c.numerator, c.denominator)
        if c.denominator % self.prime == 0:
            raise UsageError(f"{c} has no image in GF({self.prime})")
        K = self.domain
        return K(c.numerator) / K(c.denominator)

    def lift(self, e) -> Fraction:
        """Domain element back to a Fraction (symmetric representative in prime mode)"""
        r = self.domain.to_sympy(e)
        return Fraction(int(r.p), int(r.q))

    def describe(self) -> str:
        return "exact" if self.prime is None else f"prime:{self.prime}"


EXACT = Field()


def _sparse_matrix(rows: Sequence[SparseRow], ncols: int, field: Field) -> DomainMatrix:
    data = {}
    for i, row in enumerate(rows):
        converted = {}
        for j, c in row.items():
            if c:
                e = field.convert(c)
                if e:
                    converted[j] = e
        if converted:
            data[i] = converted
    return DomainMatrix(data, (len(rows), ncols), field.domain)


def _dense_matrix(matrix: Sequence[Sequence], field: Field) -> DomainMatrix:
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    return DomainMatrix([[field.convert(c) for c in row] for row in matrix], (nrows, ncols), field.domain)


def rref(rows: Sequence[SparseRow], ncols: int, field: Field = EXACT) -> tuple[list[dict[int, Fraction]], list[int]]:
    """
    Reduced row echelon form of a sparse matrix

    Args:
        rows (list): sparse rows {column: coefficient}
        ncols (int): number of columns
        field (Field): coefficient field

    Returns:
        tuple: (nonzero reduced rows in pivot order, pivot columns)
    """
    if not rows or ncols == 0:
        return [], []
    reduced, pivots = _sparse_matrix(rows, ncols, field).rref()
    data = reduced.to_sparse().rep
    out = []
    for i in sorted(data):
        row = {j: field.lift(e) for j, e in data[i].items() if e}
        if row:
            out.append(row)
    return out, list(pivots)


def rank(rows: Sequence[SparseRow], ncols: int, field: Field = EXACT) -> int:
    """
    Rank of a sparse matrix

    Args:
        rows (list): sparse rows {column: coefficient}
        ncols (int): number of columns
        field (Field): coefficient field

    Returns:
        int: rank over the field (0 for an empty matrix)
    """
    if not rows or ncols == 0:
        return 0
    return _sparse_matrix(rows, ncols, field).rank()


def dense_rank(matrix: Sequence[Sequence], field: Field = EXACT) -> int:
    """Rank of a dense list-of-rows matrix"""
    if not matrix or not len(matrix[0]):
        return 0
    return _dense_matrix(matrix, field).rank()


def reduce_vector(vector: SparseRow, basis: Sequence[SparseRow], pivots: Sequence[int]) -> dict[int, Fraction]:
    """Remainder of a vector modulo the span of an rref basis (exact arithmetic)"""
    out = {j: Fraction(c) for j, c in vector.items() if c}
    for row, pivot in zip(basis, pivots):
        factor = out.get(pivot)
        if not factor:
            continue
        for j, c in row.items():
            value = out.get(j, 0) - factor * c
            if value:
                out[j] = value
            else:
                out.pop(j, None)
    return out


def kernel(rows: Sequence[SparseRow], ncols: int, field: Field = EXACT) -> list[dict[int, Fraction]]:
    """Basis of {v : M v = 0}, one vector per free column"""
    reduced, pivots = rref(rows, ncols, field)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = {free: Fraction(1)}
        for row, pivot in zip(reduced, pivots):
            c = row.get(free)
            if c:
                vector[pivot] = -c
        basis.append(vector)
    return basis


def span_contains(basis_rows: Sequence[SparseRow], vector: SparseRow, ncols: int, field: Field = EXACT) -> bool:
    """True iff adjoining the vector does not raise the rank"""
    return rank(list(basis_rows) + [vector], ncols, field) == rank(basis_rows, ncols, field)


def determinant(matrix: Sequence[Sequence], field: Field = EXACT) -> Fraction:
    """
    Determinant of a square matrix

    Args:
        matrix (list): rows of rational entries
        field (Field): coefficient field

    Returns:
        Fraction: the determinant, 1 for the empty matrix; a symmetric representative in prime mode
    """
    if not matrix:
        return Fraction(1)
    return field.lift(_dense_matrix(matrix, field).det())


def inverse(matrix: Sequence[Sequence], field: Field = EXACT) -> list[list[Fraction]]:
    """
    Inverse of a square matrix

    Args:
        matrix (list): rows of rational entries
        field (Field): coefficient field

    Returns:
        list: rows of the inverse

    Raises:
        UsageError: the matrix is singular over the field
    """
    try:
        inv = _dense_matrix(matrix, field).inv()
    except (DMNonInvertibleMatrixError, ZeroDivisionError) as exc:
        raise UsageError("matrix is singular") from exc
    return [[field.lift(e) for e in row] for row in _rows(inv, field)]


def _rows(dm: DomainMatrix, field: Field) -> list[list]:
    nrows, ncols = dm.shape
    data = dm.to_sparse().rep
    return [[data.get(i, {}).get(j, field.domain.zero) for j in range(ncols)] for i in range(nrows)]


def charpoly(matrix: Sequence[Sequence], field: Field = EXACT) -> list[Fraction]:
    """Coefficients of det(t*Id - M), leading 1 first"""
    return [field.lift(e) for e in _dense_matrix(matrix, field).charpoly()]
