"""Exact sparse linear algebra over the rationals.

Everything here works with :class:`fractions.Fraction` (plain ``int`` is
accepted wherever a rational is expected, since it is an exact rational too).
Sparse vectors are ``dict`` objects mapping an integer index to a nonzero
coefficient.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .errors import LinearAlgebraError, ParseError, SubNotContained

Rational = Fraction
SparseVector = Dict[int, Fraction]


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"not an exact rational: {x!r}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; zero denominators are rejected."""
    s = text.strip()
    try:
        if "/" in s:
            p, q = s.split("/")
            p, q = int(p), int(q)
            if q == 0:
                raise ParseError(f"zero denominator in {text!r}")
            return Fraction(p, q)
        return Fraction(int(s))
    except ValueError:
        raise ParseError(f"not a rational: {text!r}") from None


def format_rational(x) -> str:
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class SparseMatrix:
    rows: int
    cols: int
    entries: Mapping[Tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise LinearAlgebraError(f"index ({i}, {j}) out of bounds for {self.rows}x{self.cols}")
            v = as_rational(v)
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "SparseMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        return cls(nr, nc, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping[int, Fraction]]) -> "SparseMatrix":
        return cls(nrows, len(columns), {(i, j): v for j, c in enumerate(columns) for i, v in c.items()})

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def row_dicts(self) -> List[SparseVector]:
        out: List[SparseVector] = [{} for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def column_dicts(self) -> List[SparseVector]:
        out: List[SparseVector] = [{} for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            out[j][i] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise LinearAlgebraError("shape mismatch in product")
        rows = self.row_dicts()
        ocols = other.row_dicts()
        out = {}
        for i, r in enumerate(rows):
            acc: Dict[int, Fraction] = {}
            for k, a in r.items():
                for j, b in ocols[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            for j, v in acc.items():
                if v:
                    out[(i, j)] = v
        return SparseMatrix(self.rows, other.cols, out)

    def apply(self, vec: Mapping[int, Fraction]) -> SparseVector:
        """Matrix times a sparse column vector."""
        cols = self.column_dicts()
        out: Dict[int, Fraction] = {}
        for j, x in vec.items():
            for i, a in cols[j].items():
                out[i] = out.get(i, 0) + a * x
        return {i: v for i, v in out.items() if v}

    def is_zero(self) -> bool:
        return not self.entries


def rref(m: SparseMatrix) -> Tuple[SparseMatrix, List[int], int]:
    """Reduced row-echelon form, pivot columns and rank.

    Pivots are taken at the first nonzero entry scanning columns left to
    right and, within a column, rows top to bottom.
    """
    rows, pivots = _eliminate(m)
    out = {(i, j): v for i, r in enumerate(rows) for j, v in r.items() if v}
    return SparseMatrix(m.rows, m.cols, out), pivots, len(pivots)


def _eliminate(m: SparseMatrix) -> Tuple[List[Dict[int, Fraction]], List[int]]:
    """Gauss-Jordan on row dicts; returns the pivot rows in pivot order and the pivot columns."""
    rows = [dict(r) for r in m.row_dicts()]
    # column -> rows with a (possibly stale) nonzero entry there
    where: Dict[int, set] = {}
    for i, r in enumerate(rows):
        for j in r:
            where.setdefault(j, set()).add(i)
    done = [False] * len(rows)
    order: List[int] = []
    pivots: List[int] = []
    for col in range(m.cols):
        cand = where.get(col)
        if not cand:
            continue
        live = [i for i in cand if rows[i].get(col)]
        free = [i for i in live if not done[i]]
        if not free:
            continue
        pr = min(free)
        prow = rows[pr]
        inv = 1 / Fraction(prow[col])
        for k in prow:
            prow[k] = prow[k] * inv
        for i in live:
            if i == pr:
                continue
            r = rows[i]
            f = r[col]
            for k, v in prow.items():
                nv = r.get(k, 0) - f * v
                if nv:
                    if k not in r:
                        where.setdefault(k, set()).add(i)
                    r[k] = nv
                else:
                    r.pop(k, None)
        where[col] = {pr}
        done[pr] = True
        order.append(pr)
        pivots.append(col)
    return [rows[i] for i in order], pivots


def kernel_basis(m: SparseMatrix, with_pivots: bool = False):
    """Basis of the null space, one vector per free column (in column order).

    The vector for free column ``j`` has a 1 in position ``j``, zeros in every
    other free column, and is supported on columns ``<= j``.  With
    ``with_pivots`` the pivot columns are returned as well.
    """
    rows, pivots = _eliminate(m)
    pivset = set(pivots)
    # column j -> [(pivot col, entry)] for rows having an entry in column j
    by_col: Dict[int, List[Tuple[int, Fraction]]] = {}
    for i, c in enumerate(pivots):
        for j, v in rows[i].items():
            if j != c and v:
                by_col.setdefault(j, []).append((c, v))
    out = []
    for j in range(m.cols):
        if j in pivset:
            continue
        v = {j: Fraction(1)}
        for c, e in by_col.get(j, ()):
            v[c] = -e
        out.append(v)
    return (out, pivots) if with_pivots else out


def image_basis(m: SparseMatrix) -> List[SparseVector]:
    """Independent spanning set of the column space: the pivot columns of ``m``."""
    _, pivots, _ = rref(m)
    cols = m.column_dicts()
    return [dict(cols[j]) for j in pivots]


def rank(m: SparseMatrix) -> int:
    return rank_of_vectors(m.column_dicts())


def quotient_dimension(sub: Sequence[Mapping[int, Fraction]], ambient: Sequence[Mapping[int, Fraction]]) -> int:
    """``dim span(ambient) - dim span(sub)``; every sub vector must lie in the ambient span."""
    amb = Echelon()
    for v in ambient:
        amb.add(v)
    for v in sub:
        if not amb.contains(v):
            raise SubNotContained("a sub vector lies outside the ambient span")
    return amb.rank - rank_of_vectors(sub)


def _primitive(v: Mapping[int, object]) -> Dict[int, int]:
    """Scale a rational vector to a primitive integer vector with positive leading entry."""
    den = 1
    for x in v.values():
        if isinstance(x, Fraction) and x.denominator != 1:
            den = den * x.denominator // gcd(den, x.denominator)
    if den == 1:
        w = {k: int(x) for k, x in v.items() if x}
    else:
        w = {k: int(x * den) for k, x in v.items() if x}
    g = 0
    for x in w.values():
        g = gcd(g, x)
        if g == 1:
            break
    if g > 1:
        w = {k: x // g for k, x in w.items()}
    return w


class Echelon:
    """Incremental echelon basis of a subspace of Q^(index set).

    Rows are stored as primitive integer vectors (fraction-free elimination),
    keyed by their pivot, which is the smallest index of the reduced row.
    """

    __slots__ = ("rows",)

    def __init__(self):
        self.rows: Dict[int, Dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, v: Dict[int, int]) -> Dict[int, int]:
        if not v or not self.rows:
            return v
        heap = list(v)
        heapq.heapify(heap)
        rows = self.rows
        while heap:
            k = heapq.heappop(heap)
            a = v.get(k)
            if not a:
                continue
            r = rows.get(k)
            if r is None:
                continue
            p = r[k]
            # v <- p*v - a*r, then divide out the content
            if p != 1:
                for key in v:
                    v[key] *= p
            for key, x in r.items():
                nv = v.get(key, 0) - a * x
                if nv:
                    if key not in v:
                        heapq.heappush(heap, key)
                    v[key] = nv
                else:
                    v.pop(key, None)
            if p != 1 and v:
                g = 0
                for x in v.values():
                    g = gcd(g, x)
                    if g == 1:
                        break
                if g > 1:
                    for key in v:
                        v[key] //= g
        return v

    def add(self, vec: Mapping[int, object]) -> bool:
        """Insert a vector; returns True when it was independent of the current rows."""
        v = self._reduce(_primitive(vec))
        if not v:
            return False
        k = min(v)
        if v[k] < 0:
            v = {key: -x for key, x in v.items()}
        self.rows[k] = v
        return True

    def contains(self, vec: Mapping[int, object]) -> bool:
        return not self._reduce(_primitive(vec))


def rank_of_vectors(vectors: Iterable[Mapping[int, object]]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def kernel_vectors(columns: Sequence[Mapping[int, object]]) -> List[Dict[int, int]]:
    """Kernel of the matrix with the given columns, by tracked column reduction.

    Each returned vector is an integer combination of column indices whose
    image is zero.  Fraction-free, so it stays fast on large sparse input.
    """
    pivots: Dict[int, Tuple[Dict[int, int], Dict[int, int]]] = {}
    out = []
    for j, col in enumerate(columns):
        den = 1
        for x in col.values():
            if isinstance(x, Fraction) and x.denominator != 1:
                den = den * x.denominator // gcd(den, x.denominator)
        # v = den * col exactly, so the tracked combination stays honest
        v = {k: int(x * den) for k, x in col.items() if x}
        t = {j: den}
        while v:
            k = min(v)
            hit = pivots.get(k)
            if hit is None:
                break
            r, rt = hit
            a, p = v[k], r[k]
            g = gcd(a, p)
            a, p = a // g, p // g
            # v <- p*v - a*r, same on the tracked combination
            v = _lincomb(v, p, r, -a)
            t = _lincomb(t, p, rt, -a)
        if v:
            pivots[min(v)] = (v, t)
        else:
            c = 0
            for x in t.values():
                c = gcd(c, x)
            out.append({k: x // c for k, x in t.items()})
    return out


def _lincomb(u: Dict[int, int], a: int, v: Dict[int, int], b: int) -> Dict[int, int]:
    out = {k: a * x for k, x in u.items()} if a != 1 else dict(u)
    for k, x in v.items():
        nv = out.get(k, 0) + b * x
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out
