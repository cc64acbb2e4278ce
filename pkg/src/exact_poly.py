"""
Exact Polynomial Module
Sparse multivariate polynomials over the rationals in x_1..x_n, y_1..y_n,
bigraded by (x-degree, y-degree)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from types import MappingProxyType
from typing import Iterator, Mapping, NamedTuple, Sequence

from errors import UsageError


@dataclass(frozen=True, order=True)
class BiDegree:
    """Total x-degree and total y-degree of a bihomogeneous polynomial"""

    dx: int
    dy: int

    def __post_init__(self):
        if self.dx < 0 or self.dy < 0:
            raise UsageError(f"bidegree must be nonnegative, got ({self.dx},{self.dy})")

    def __add__(self, other: BiDegree) -> BiDegree:
        return BiDegree(self.dx + other.dx, self.dy + other.dy)

    def minus(self, ddx: int, ddy: int) -> BiDegree | None:
        """Return (dx-ddx, dy-ddy), or None when a component would go negative"""
        if ddx > self.dx or ddy > self.dy:
            return None
        return BiDegree(self.dx - ddx, self.dy - ddy)

    def fits_in(self, cutoff: BiDegree) -> bool:
        return self.dx <= cutoff.dx and self.dy <= cutoff.dy

    @property
    def total(self) -> int:
        return self.dx + self.dy

    def key(self) -> str:
        return f"{self.dx},{self.dy}"

    def __str__(self):
        return f"({self.dx},{self.dy})"

    @staticmethod
    def window(cutoff: BiDegree) -> list[BiDegree]:
        """All bidegrees (a, b) with a <= cutoff.dx and b <= cutoff.dy, row-major"""
        return [BiDegree(a, b) for a in range(cutoff.dx + 1) for b in range(cutoff.dy + 1)]


class Monomial(NamedTuple):
    """x^xexp * y^yexp; tuple comparison is lex on xexp then yexp"""

    xexp: tuple[int, ...]
    yexp: tuple[int, ...]

    @classmethod
    def one(cls, n: int) -> Monomial:
        return cls((0,) * n, (0,) * n)

    @property
    def n(self) -> int:
        return len(self.xexp)

    def bidegree(self) -> BiDegree:
        return BiDegree(sum(self.xexp), sum(self.yexp))

    def times(self, other: Monomial) -> Monomial:
        return Monomial(tuple(a + b for a, b in zip(self.xexp, other.xexp)),
                        tuple(a + b for a, b in zip(self.yexp, other.yexp)))

    def permuted(self, perm: Sequence[int]) -> Monomial:
        """Diagonal S_n action: variable i is sent to variable perm[i]"""
        xs = [0] * self.n
        ys = [0] * self.n
        for i, image in enumerate(perm):
            xs[image] = self.xexp[i]
            ys[image] = self.yexp[i]
        return Monomial(tuple(xs), tuple(ys))

    def embed(self, index: int, n: int) -> Monomial:
        """Move a one-variable-pair monomial x^p y^q to x_index^p y_index^q among n pairs"""
        xs = [0] * n
        ys = [0] * n
        xs[index] = self.xexp[0]
        ys[index] = self.yexp[0]
        return Monomial(tuple(xs), tuple(ys))

    def evaluate(self, xs: Sequence[Fraction], ys: Sequence[Fraction]) -> Fraction:
        value = Fraction(1)
        for base, e in zip(xs, self.xexp):
            if e:
                value *= Fraction(base) ** e
        for base, e in zip(ys, self.yexp):
            if e:
                value *= Fraction(base) ** e
        return value

    def text(self) -> str:
        factors = []
        for name, exps in (('x', self.xexp), ('y', self.yexp)):
            for i, e in enumerate(exps, 1):
                if e == 1:
                    factors.append(f"{name}{i}")
                elif e > 1:
                    factors.append(f"{name}{i}^{e}")
        return "*".join(factors)


class Polynomial:
    """
    Immutable sparse polynomial with exact rational coefficients.

    No stored coefficient is zero, so equality is equality of term maps.
    """

    __slots__ = ('_terms', 'n', '_hash')

    def __init__(self, terms: Mapping[Monomial, object] | None = None, n: int = 1):
        if n < 1:
            raise UsageError(f"variable count must be positive, got {n}")
        cleaned = {}
        for m, c in (terms or {}).items():
            if len(m.xexp) != n or len(m.yexp) != n:
                raise UsageError(f"monomial {m} does not have {n} variable pairs")
            c = Fraction(c)
            if c:
                cleaned[m] = cleaned.get(m, 0) + c
        self._terms = {m: c for m, c in cleaned.items() if c}
        self.n = n
        self._hash = None

    @classmethod
    def _clean(cls, terms: dict, n: int) -> Polynomial:
        # terms already pruned and validated
        p = cls.__new__(cls)
        p._terms = terms
        p.n = n
        p._hash = None
        return p

    @classmethod
    def zero(cls, n: int) -> Polynomial:
        return cls._clean({}, n)

    @classmethod
    def constant(cls, c, n: int) -> Polynomial:
        return cls({Monomial.one(n): c}, n)

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> Polynomial:
        return cls({m: c}, m.n)

    @classmethod
    def variable(cls, name: str, index: int, n: int) -> Polynomial:
        """x_index or y_index, with index counted from 1"""
        if name not in ('x', 'y') or not 1 <= index <= n:
            raise UsageError(f"no variable {name}{index} among {n} pairs")
        exps = tuple(1 if i == index - 1 else 0 for i in range(n))
        zeros = (0,) * n
        m = Monomial(exps, zeros) if name == 'x' else Monomial(zeros, exps)
        return cls._clean({m: Fraction(1)}, n)

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending canonical order (leading term first)"""
        return sorted(self._terms.items(), reverse=True)

    def _check(self, other: Polynomial):
        if other.n != self.n:
            raise UsageError(f"mismatched variable counts {self.n} and {other.n}")

    def _coerce(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.n)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for m, c in other._terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial._clean(terms, self.n)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._clean({m: -c for m, c in self._terms.items()}, self.n)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, c) -> Polynomial:
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.n)
        return Polynomial._clean({m: c * v for m, v in self._terms.items()}, self.n)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1.times(m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return Polynomial._clean({m: c for m, c in terms.items() if c}, self.n)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Polynomial:
        if e < 0:
            raise UsageError("negative powers are not polynomials")
        result = Polynomial.constant(1, self.n)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.n)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial('{format_polynomial(self)}', n={self.n})"

    def __reduce__(self):
        return (_rebuild, (self.n, tuple(self._terms.items())))

    def bigrade_split(self) -> dict[BiDegree, Polynomial]:
        parts: dict[BiDegree, dict] = {}
        for m, c in self._terms.items():
            parts.setdefault(m.bidegree(), {})[m] = c
        return {bd: Polynomial._clean(parts[bd], self.n) for bd in sorted(parts)}

    def bidegree(self) -> BiDegree | None:
        """The bidegree of a bihomogeneous polynomial, None for zero"""
        if not self.is_bihomogeneous():
            raise UsageError(f"{self} is not bihomogeneous")
        return next(iter(self._terms)).bidegree() if self._terms else None

    def is_bihomogeneous(self) -> bool:
        """True when every term has the same bidegree (zero included)"""
        return len({m.bidegree() for m in self._terms}) <= 1

    def evaluate(self, xs: Sequence, ys: Sequence) -> Fraction:
        if len(xs) != self.n or len(ys) != self.n:
            raise UsageError(f"expected {self.n} x-values and {self.n} y-values")
        xs = [Fraction(v) for v in xs]
        ys = [Fraction(v) for v in ys]
        return sum((c * m.evaluate(xs, ys) for m, c in self._terms.items()), Fraction(0))

    def act(self, perm: Sequence[int]) -> Polynomial:
        """sigma(p) for the diagonal action sigma(x_i) = x_perm[i], sigma(y_i) = y_perm[i]"""
        return Polynomial._clean({m.permuted(perm): c for m, c in self._terms.items()}, self.n)

    def embed(self, index: int, n: int) -> Polynomial:
        """f(x, y) in one variable pair -> f(x_index, y_index) among n pairs (index from 0)"""
        if self.n != 1:
            raise UsageError("only one-pair polynomials can be embedded")
        return Polynomial._clean({m.embed(index, n): c for m, c in self._terms.items()}, n)

    def to_row(self, column_index: Mapping[Monomial, int]) -> dict[int, Fraction]:
        try:
            return {column_index[m]: c for m, c in self._terms.items()}
        except KeyError as exc:
            raise UsageError(f"{self} has a term outside the given columns") from exc

    @classmethod
    def from_row(cls, row: Mapping[int, Fraction], columns: Sequence[Monomial], n: int) -> Polynomial:
        return cls._clean({columns[j]: Fraction(c) for j, c in row.items() if c}, n)


def _rebuild(n, items):
    return Polynomial._clean(dict(items), n)


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    """Coefficientwise sum"""
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    """Distributive product"""
    return p * q


def bigrade_split(p: Polynomial) -> dict[BiDegree, Polynomial]:
    """Split p into bihomogeneous components"""
    return p.bigrade_split()


def evaluate(p: Polynomial, xs: Sequence, ys: Sequence) -> Fraction:
    """Exact value of p at x = xs, y = ys"""
    return p.evaluate(xs, ys)


def format_polynomial(p: Polynomial) -> str:
    """
    Canonical text form, leading term first, e.g. "3/2*x1^2*y3 - y1"

    Args:
        p (Polynomial): polynomial to format

    Returns:
        str: text form, "0" for the zero polynomial
    """
    if not p:
        return "0"
    pieces = []
    for idx, (m, c) in enumerate(p.sorted_terms()):
        body = m.text()
        magnitude = abs(c)
        if not body:
            term = str(magnitude)
        elif magnitude == 1:
            term = body
        else:
            term = f"{magnitude}*{body}"
        if idx == 0:
            pieces.append(f"-{term}" if c < 0 else term)
        else:
            pieces.append(f"- {term}" if c < 0 else f"+ {term}")
    return " ".join(pieces)


_TERM = re.compile(r'[+-]?[^+-]+')
_VARIABLE = re.compile(r'^([xy])(\d+)(?:\^(\d+))?$')
_NUMBER = re.compile(r'^\d+(?:/\d+)?$')


def parse_polynomial(text: str, n: int) -> Polynomial:
    """
    Parse the canonical text form

    Args:
        text (str): e.g. "3/2*x1^2*y3 - y1"
        n (int): number of variable pairs

    Returns:
        Polynomial: parsed polynomial
    """
    compact = re.sub(r'\s+', '', text)
    if not compact:
        raise UsageError("empty polynomial text")
    terms: dict[Monomial, Fraction] = {}
    consumed = 0
    for chunk in _TERM.findall(compact):
        consumed += len(chunk)
        sign = -1 if chunk.startswith('-') else 1
        body = chunk.lstrip('+-')
        coeff = Fraction(sign)
        xs = [0] * n
        ys = [0] * n
        for factor in body.split('*'):
            if _NUMBER.match(factor):
                coeff *= Fraction(factor)
                continue
            match = _VARIABLE.match(factor)
            if not match:
                raise UsageError(f"cannot parse factor '{factor}' in '{text}'")
            name, index, power = match.group(1), int(match.group(2)), int(match.group(3) or 1)
            if not 1 <= index <= n:
                raise UsageError(f"variable {name}{index} out of range for n={n}")
            (xs if name == 'x' else ys)[index - 1] += power
        m = Monomial(tuple(xs), tuple(ys))
        terms[m] = terms.get(m, 0) + coeff
    if consumed != len(compact):
        raise UsageError(f"cannot parse '{text}'")
    return Polynomial(terms, n)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` nonnegative integers summing to `total`"""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for bars in combinations(range(total + parts - 1), parts - 1):
        previous = -1
        out = []
        for bar in bars:
            out.append(bar - previous - 1)
            previous = bar
        out.append(total + parts - 2 - previous)
        yield tuple(out)


@lru_cache(maxsize=None)
def monomials_of_bidegree(n: int, bd: BiDegree) -> tuple[Monomial, ...]:
    """Column basis of the bidegree-bd piece, ascending canonical order"""
    return tuple(sorted(Monomial(xe, ye)
                        for xe, ye in product(compositions(bd.dx, n), compositions(bd.dy, n))))


@lru_cache(maxsize=None)
def column_index(n: int, bd: BiDegree) -> Mapping[Monomial, int]:
    return MappingProxyType({m: j for j, m in enumerate(monomials_of_bidegree(n, bd))})
