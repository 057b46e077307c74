"""Graded vector spaces, chain complexes, chain maps, dg algebras and modules.

Everything is homologically graded (the differential lowers degree by one)
and lives inside an explicit degree window.  A complex knows its basis in
every degree of its window; the flags ``exact_below`` / ``exact_above`` say
whether the degrees outside the window are genuinely zero or merely not
computed.  Homology in degree n is trusted only when n-1, n and n+1 are all
known.

Basis labels are hashable, JSON-friendly values: strings, or tuples whose
first entry is a string tag (``("⊗", x, y)`` for tensors, ``("s", k, x)`` for
shifts, ``("hom", x, y)`` for elementary maps, ...).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import DifferentialError, IncompleteDegree, InvariantViolation, WindowUnderflow
from .linalg import Echelon, SparseMatrix, kernel_basis
from .report import Report
from .vec import add_into, add_term, clean

Label = Hashable
Combo = Dict[Label, object]
INF = float("inf")


@dataclass(frozen=True)
class DegreeWindow:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise InvariantViolation(f"window lo={self.lo} exceeds hi={self.hi}")

    def __contains__(self, n) -> bool:
        return self.lo <= n <= self.hi

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def intersect(self, other: "DegreeWindow") -> Optional["DegreeWindow"]:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return DegreeWindow(lo, hi) if lo <= hi else None


def window(lo_or_w, hi=None) -> DegreeWindow:
    if isinstance(lo_or_w, DegreeWindow):
        return lo_or_w
    if isinstance(lo_or_w, tuple):
        return DegreeWindow(*lo_or_w)
    return DegreeWindow(lo_or_w, hi)


class GradedVectorSpace:
    """Named basis per degree; labels are unique across the whole space."""

    def __init__(self, basis: Mapping[int, Sequence[Label]]):
        self.basis: Dict[int, Tuple[Label, ...]] = {n: tuple(v) for n, v in sorted(basis.items()) if len(v)}
        self._deg: Dict[Label, int] = {}
        for n, labels in self.basis.items():
            for x in labels:
                if x in self._deg:
                    raise InvariantViolation(f"duplicate basis label {x!r}")
                self._deg[x] = n

    def degree(self, x: Label) -> int:
        return self._deg[x]

    def __contains__(self, x) -> bool:
        return x in self._deg

    def dim(self, n: int) -> int:
        return len(self.basis.get(n, ()))

    def dims(self) -> Dict[int, int]:
        return {n: len(v) for n, v in self.basis.items()}

    def labels(self) -> Iterable[Label]:
        for n in self.basis:
            yield from self.basis[n]

    def __len__(self) -> int:
        return len(self._deg)


class ChainComplex:
    """A windowed chain complex with a sparse, label-level differential.

    ``differential`` is either a mapping label -> combination (missing labels
    are cycles) or a function label -> combination evaluated lazily and
    cached.  The function may be asked about labels just outside the window.
    """

    def __init__(
        self,
        basis: Mapping[int, Sequence[Label]],
        differential: Union[Mapping[Label, Combo], Callable[[Label], Combo]],
        window: Optional[DegreeWindow] = None,
        *,
        exact_below: bool = True,
        exact_above: bool = True,
        check: bool = True,
        name: str = "",
    ):
        self.space = GradedVectorSpace(basis)
        self.basis = self.space.basis
        if window is None:
            window = DegreeWindow(min(self.basis), max(self.basis)) if self.basis else DegreeWindow(0, 0)
        self.window = window
        for n in self.basis:
            if n not in window:
                raise InvariantViolation(f"basis in degree {n} lies outside window [{window.lo}, {window.hi}]")
        self.exact_below = exact_below
        self.exact_above = exact_above
        self.name = name
        if callable(differential):
            self._dfun = differential
            self._d: Dict[Label, Combo] = {}
        else:
            self._dfun = None
            self._d = {x: clean(v) for x, v in differential.items() if v}
        self._index: Dict[int, Dict[Label, int]] = {}
        self._rank: Dict[int, int] = {}
        if check:
            bad = self.d_squared_violations()
            if bad:
                raise DifferentialError(f"d∘d != 0 on {bad[0]!r}" + (f" (+{len(bad) - 1} more)" if len(bad) > 1 else ""))

    # -- basic queries ---------------------------------------------------
    def degree(self, x: Label) -> int:
        return self.space._deg[x]

    def __contains__(self, x) -> bool:
        return x in self.space._deg

    def dim(self, n: int) -> int:
        return len(self.basis.get(n, ()))

    def dims(self) -> Dict[int, int]:
        return {n: self.dim(n) for n in self.window}

    def labels(self) -> Iterable[Label]:
        return self.space.labels()

    def known(self, n: int) -> bool:
        """Degree n is completely described (either in the window or provably zero)."""
        if n in self.window:
            return True
        return self.exact_below if n < self.window.lo else self.exact_above

    def unknown_intervals(self) -> List[Tuple[float, float]]:
        out = []
        if not self.exact_below:
            out.append((-INF, self.window.lo - 1))
        if not self.exact_above:
            out.append((self.window.hi + 1, INF))
        return out

    def possible_intervals(self) -> List[Tuple[float, float]]:
        """Intervals of degrees that may carry nonzero basis."""
        return self.unknown_intervals() + [(n, n) for n in self.basis]

    def bounds(self) -> Tuple[float, float]:
        """(lowest, highest) possibly nonzero degree, infinite when not exact."""
        ivs = self.possible_intervals()
        if not ivs:
            return (INF, -INF)
        return (min(a for a, _ in ivs), max(b for _, b in ivs))

    # -- differential ----------------------------------------------------
    def diff(self, x: Label) -> Combo:
        if self._dfun is None:
            return self._d.get(x, {})
        v = self._d.get(x)
        if v is None:
            v = clean(self._dfun(x))
            self._d[x] = v
        return v

    def apply(self, vec: Mapping[Label, object]) -> Combo:
        out: Combo = {}
        for x, c in vec.items():
            add_into(out, self.diff(x), c)
        return out

    def index(self, n: int) -> Dict[Label, int]:
        idx = self._index.get(n)
        if idx is None:
            idx = {x: i for i, x in enumerate(self.basis.get(n, ()))}
            self._index[n] = idx
        return idx

    def to_coords(self, vec: Mapping[Label, object], n: int) -> Dict[int, object]:
        idx = self.index(n)
        try:
            return {idx[x]: c for x, c in vec.items()}
        except KeyError as e:
            raise DifferentialError(f"label {e.args[0]!r} is not a basis element of degree {n}") from None

    def from_coords(self, coords: Mapping[int, object], n: int) -> Combo:
        b = self.basis.get(n, ())
        return {b[i]: c for i, c in coords.items() if c}

    def columns(self, n: int) -> List[Dict[int, object]]:
        """Columns of d_n in the bases of degrees n and n-1."""
        if not self.known(n):
            raise IncompleteDegree(f"degree {n} is not known")
        if not self.dim(n):
            return []
        if not self.known(n - 1):
            raise WindowUnderflow(f"degree {n - 1} is not known, so d_{n} cannot be assembled")
        return [self.to_coords(self.diff(x), n - 1) for x in self.basis[n]]

    def matrix(self, n: int) -> SparseMatrix:
        cols = self.columns(n)
        return SparseMatrix.from_columns(self.dim(n - 1), cols) if cols else SparseMatrix(self.dim(n - 1), 0)

    def rank_d(self, n: int) -> int:
        r = self._rank.get(n)
        if r is None:
            if not self.dim(n) or not self.dim(n - 1):
                if not self.known(n) or (self.dim(n) and not self.known(n - 1)):
                    self.columns(n)  # raises the appropriate error
                r = 0
            else:
                e = Echelon()
                for col in self.columns(n):
                    e.add(col)
                r = e.rank
            self._rank[n] = r
        return r

    def d_squared_violations(self, limit: int = 5) -> List[Label]:
        """Basis labels x with d(d(x)) != 0, checked where d of degree n-1 is stored."""
        bad = []
        for n, labels in self.basis.items():
            if n - 1 not in self.window or not self.dim(n - 1):
                continue
            for x in labels:
                dx = self.diff(x)
                if not dx:
                    continue
                for y in dx:
                    if y not in self.space._deg or self.space._deg[y] != n - 1:
                        raise DifferentialError(f"d({x!r}) contains {y!r}, not a basis element of degree {n - 1}")
                if self.apply(dx):
                    bad.append(x)
                    if len(bad) >= limit:
                        return bad
        return bad

    def __repr__(self) -> str:
        dims = ", ".join(f"{n}:{len(v)}" for n, v in self.basis.items())
        return f"ChainComplex({self.name or 'unnamed'}; [{self.window.lo},{self.window.hi}]; {dims})"


def zero_complex(w: Optional[DegreeWindow] = None) -> ChainComplex:
    return ChainComplex({}, {}, w or DegreeWindow(0, 0), name="0")


def unit_complex(name: str = "1", degree: int = 0) -> ChainComplex:
    """ℚ concentrated in one degree, basis label ``name``."""
    return ChainComplex({degree: [name]}, {}, name=f"Q[{degree}]")


# -- homology ------------------------------------------------------------


@dataclass
class HomologyGroup:
    degree: int
    dim: int
    trusted: bool
    cycles: Optional[List[Combo]] = None


class Homology(dict):
    """degree -> HomologyGroup."""

    def dims(self, trusted_only: bool = True) -> Dict[int, int]:
        return {n: g.dim for n, g in self.items() if g.trusted or not trusted_only}

    def trusted(self) -> List[int]:
        return [n for n, g in self.items() if g.trusted]

    def untrusted(self) -> List[int]:
        return [n for n, g in self.items() if not g.trusted]


def homology(c: ChainComplex, w: Optional[DegreeWindow] = None, representatives: bool = False) -> Homology:
    """Homology dimensions (and optionally representative cycles) over a window.

    Degree n is trusted when degrees n-1, n, n+1 of ``c`` are all known; an
    untrusted degree reports dim ker d_n minus the boundaries that are known.
    """
    w = w or c.window
    if not c.known(w.lo - 1):
        raise WindowUnderflow(f"differential data below degree {w.lo} is missing")
    out = Homology()
    for n in w:
        if not c.known(n):
            raise IncompleteDegree(f"degree {n} of {c.name or 'the complex'} is not known")
        trusted = c.known(n + 1)
        z = c.dim(n) - c.rank_d(n)
        b = c.rank_d(n + 1) if trusted else 0
        g = HomologyGroup(n, z - b, trusted)
        if representatives:
            g.cycles = _representatives(c, n, trusted)
        out[n] = g
    return out


def _representatives(c: ChainComplex, n: int, with_boundaries: bool) -> List[Combo]:
    if not c.dim(n):
        return []
    zs = kernel_basis(c.matrix(n)) if c.dim(n - 1) else [{i: 1} for i in range(c.dim(n))]
    e = Echelon()
    if with_boundaries:
        for col in c.columns(n + 1):
            e.add(col)
    reps = []
    for z in zs:
        if e.add(z):
            reps.append(c.from_coords(clean(z), n))
    return reps


def homology_dims(c: ChainComplex, w: Optional[DegreeWindow] = None) -> Dict[int, int]:
    return homology(c, w).dims()


# -- degree bookkeeping for tensor and hom -------------------------------


def _hits(ivs_a, ivs_b, n, sign) -> bool:
    """Is there p in some interval of ivs_a with n + sign*p in some interval of ivs_b?

    sign = -1: partner degree n - p (tensor); sign = +1: partner p + n (hom).
    """
    for a0, a1 in ivs_a:
        for b0, b1 in ivs_b:
            if sign < 0:
                lo, hi = max(a0, n - b1), min(a1, n - b0)
            else:
                lo, hi = max(a0, b0 - n), min(a1, b1 - n)
            if lo <= hi:
                return True
    return False


def _pair_complete(a: ChainComplex, b: ChainComplex, n: int, sign: int) -> bool:
    return not (
        _hits(a.unknown_intervals(), b.possible_intervals(), n, sign)
        or _hits(a.possible_intervals(), b.unknown_intervals(), n, sign)
    )


def _default_window(a: ChainComplex, b: ChainComplex, sign: int) -> DegreeWindow:
    alo, ahi = a.window.lo, a.window.hi
    blo, bhi = b.window.lo, b.window.hi
    if sign < 0:
        lo, hi = alo + blo, ahi + bhi
    else:
        lo, hi = blo - ahi, bhi - alo
    good = [n for n in range(lo, hi + 1) if _pair_complete(a, b, n, sign)]
    if not good:
        return DegreeWindow(lo, lo)
    start = good[0]
    end = start
    while end + 1 in good:
        end += 1
    return DegreeWindow(start, end)


def _check_complete(a, b, w, sign, what):
    for n in w:
        if not _pair_complete(a, b, n, sign):
            raise IncompleteDegree(f"degree {n} of the {what} cannot be assembled from the available degrees")


# -- tensor, shift, cover, hom ------------------------------------------


def tensor_label(x: Label, y: Label) -> Label:
    return ("⊗", x, y)


def tensor(a: ChainComplex, b: ChainComplex, w: Optional[DegreeWindow] = None, check: bool = True) -> ChainComplex:
    """a ⊗ b with d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy, labels ("⊗", x, y)."""
    if w is None:
        w = _default_window(a, b, -1)
    _check_complete(a, b, w, -1, "tensor product")
    basis: Dict[int, List[Label]] = {}
    for p, xs in a.basis.items():
        for q, ys in b.basis.items():
            if p + q in w:
                basis.setdefault(p + q, []).extend(("⊗", x, y) for x in xs for y in ys)
    adeg, bdeg = a.space._deg, b.space._deg

    def d(lbl):
        _, x, y = lbl
        out: Combo = {}
        for x2, c in a.diff(x).items():
            add_term(out, ("⊗", x2, y), c)
        s = -1 if adeg[x] % 2 else 1
        for y2, c in b.diff(y).items():
            add_term(out, ("⊗", x, y2), s * c)
        return out

    (alo, ahi), (blo, bhi) = a.bounds(), b.bounds()
    return ChainComplex(
        basis, d, w,
        exact_below=alo + blo >= w.lo, exact_above=ahi + bhi <= w.hi,
        check=check, name=f"({a.name}⊗{b.name})",
    )


def shift_label(x: Label, k: int) -> Label:
    if k == 0:
        return x
    if isinstance(x, tuple) and x and x[0] == "s":
        j = x[1] + k
        return x[2] if j == 0 else ("s", j, x[2])
    return ("s", k, x)


def shift(c: ChainComplex, k: int) -> ChainComplex:
    """Degree n of the result is degree n-k of c; d acquires the sign (-1)^k."""
    if k == 0:
        return c
    basis = {n + k: [shift_label(x, k) for x in xs] for n, xs in c.basis.items()}
    s = -1 if k % 2 else 1
    d = {}
    for xs in c.basis.values():
        for x in xs:
            dx = c.diff(x)
            if dx:
                d[shift_label(x, k)] = {shift_label(y, k): s * v for y, v in dx.items()}
    return ChainComplex(
        basis, d, DegreeWindow(c.window.lo + k, c.window.hi + k),
        exact_below=c.exact_below, exact_above=c.exact_above, check=False, name=f"{c.name}[{k}]",
    )


def connective_cover(c: ChainComplex, k: int) -> Tuple[ChainComplex, "ChainMap"]:
    """Replace degree k by the cycles Z_k, drop everything below.

    Returns the cover together with its inclusion into ``c``.  The cycle basis
    comes from the reduced row-echelon form of d_k (one vector per free
    column) and gets labels ("z", k, i).
    """
    if not c.known(k - 1):
        raise WindowUnderflow(f"degree {k - 1} is needed to compute cycles in degree {k}")
    basis: Dict[int, List[Label]] = {n: list(xs) for n, xs in c.basis.items() if n > k}
    inc: Dict[Label, Combo] = {x: {x: 1} for xs in basis.values() for x in xs}
    d: Dict[Label, Combo] = {x: c.diff(x) for xs in basis.values() for x in xs if c.diff(x)}
    if c.dim(k):
        m = c.matrix(k)
        zs, pivots = kernel_basis(m, with_pivots=True)
        pv = set(pivots)
        free = [j for j in range(m.cols) if j not in pv]
        labels = [("z", k, i) for i in range(len(zs))]
        if labels:
            basis[k] = labels
        for lbl, z in zip(labels, zs):
            inc[lbl] = c.from_coords(z, k)
        col_to_z = {col: labels[i] for i, col in enumerate(free)}
        for x in c.basis.get(k + 1, ()):
            dx = c.diff(x)
            if dx:
                # an element of Z_k is determined by its free-column coordinates
                coords = c.to_coords(dx, k)
                d[x] = {col_to_z[i]: v for i, v in coords.items() if i in col_to_z}
    cover = ChainComplex(
        basis, d, DegreeWindow(k, max(c.window.hi, k)),
        exact_below=True, exact_above=c.exact_above, name=f"{c.name}<{k}>",
    )
    return cover, ChainMap(cover, c, inc, check=False)


def hom_label(x: Label, y: Label) -> Label:
    return ("hom", x, y)


def hom_complex(m: ChainComplex, n: ChainComplex, w: Optional[DegreeWindow] = None, check: bool = True) -> ChainComplex:
    """Mapping complex [m, n]: degree q holds maps raising degree by q.

    The basis element ("hom", x, y) sends x to y and every other basis element
    of m to zero; δf = d_n∘f - (-1)^q f∘d_m.
    """
    if w is None:
        w = _default_window(m, n, +1)
    _check_complete(m, n, w, +1, "hom complex")
    basis: Dict[int, List[Label]] = {}
    for p, xs in m.basis.items():
        for r, ys in n.basis.items():
            if r - p in w:
                basis.setdefault(r - p, []).extend(("hom", x, y) for x in xs for y in ys)
    # transpose of d_m: x -> [(x', coefficient of x in d x')]
    into: Dict[Label, List[Tuple[Label, object]]] = {}
    for xs in m.basis.values():
        for x2 in xs:
            for x, cf in m.diff(x2).items():
                into.setdefault(x, []).append((x2, cf))
    mdeg, ndeg = m.space._deg, n.space._deg

    def d(lbl):
        _, x, y = lbl
        q = ndeg[y] - mdeg[x]
        out: Combo = {}
        for y2, cf in n.diff(y).items():
            add_term(out, ("hom", x, y2), cf)
        s = 1 if q % 2 else -1
        # (f∘d_m)(x') = coefficient of x in d x' times y
        for x2, cf in into.get(x, ()):
            add_term(out, ("hom", x2, y), s * cf)
        return out

    (mlo, mhi), (nlo, nhi) = m.bounds(), n.bounds()
    return ChainComplex(
        basis, d, w,
        exact_below=nlo - mhi >= w.lo, exact_above=nhi - mlo <= w.hi,
        check=check, name=f"[{m.name},{n.name}]",
    )


# -- chain maps ----------------------------------------------------------


class ChainMap:
    """A degree-preserving (or degree-shifting) linear map given on basis labels."""

    def __init__(
        self,
        source: ChainComplex,
        target: ChainComplex,
        components: Union[Mapping[Label, Combo], Callable[[Label], Combo]],
        degree: int = 0,
        *,
        check: bool = True,
        name: str = "",
    ):
        self.source = source
        self.target = target
        self.degree = degree
        self.name = name
        if callable(components):
            self._fun = components
            self._img: Dict[Label, Combo] = {}
        else:
            self._fun = None
            self._img = {x: clean(v) for x, v in components.items() if v}
        if check:
            bad = self.violations()
            if bad:
                raise DifferentialError(f"map {name or ''} does not commute with d on {bad[0]!r}")

    def image(self, x: Label) -> Combo:
        if self._fun is None:
            return self._img.get(x, {})
        v = self._img.get(x)
        if v is None:
            v = clean(self._fun(x))
            self._img[x] = v
        return v

    def apply(self, vec: Mapping[Label, object]) -> Combo:
        out: Combo = {}
        for x, c in vec.items():
            add_into(out, self.image(x), c)
        return out

    def matrix(self, n: int) -> SparseMatrix:
        cols = [self.target.to_coords(self.image(x), n + self.degree) for x in self.source.basis.get(n, ())]
        return SparseMatrix.from_columns(self.target.dim(n + self.degree), cols)

    def violations(self, limit: int = 5) -> List[Label]:
        """Labels x with d f(x) != (-1)^{|f|} f(d x), where both sides are computable."""
        bad = []
        s = -1 if self.degree % 2 else 1
        for n, xs in self.source.basis.items():
            if not (self.source.known(n - 1) and self.target.known(n + self.degree - 1)):
                continue
            for x in xs:
                lhs = self.target.apply(self.image(x))
                rhs = self.apply(self.source.diff(x))
                add_into(lhs, rhs, -s)
                if lhs:
                    bad.append(x)
                    if len(bad) >= limit:
                        return bad
        return bad

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """Composition self ∘ other."""
        return ChainMap(
            other.source, self.target,
            lambda x: self.apply(other.image(x)),
            self.degree + other.degree, check=False,
        )


def identity_map(c: ChainComplex) -> ChainMap:
    return ChainMap(c, c, {x: {x: 1} for x in c.labels()}, check=False, name="id")


def induced_rank(f: ChainMap, n: int) -> int:
    """Rank of H_n(f): H_n(source) -> H_n(target + deg f).

    Uses rank [[d_n, 0], [f_n, d_{n+1}]] = rank d_n + dim(f(Z_n) + B_n).
    """
    a, b = f.source, f.target
    m = n + f.degree
    e = Echelon()
    off = a.dim(n - 1)
    bcols = b.columns(m + 1) if b.dim(m + 1) else []
    for col in bcols:
        e.add({off + i: v for i, v in col.items()})
    acols = a.columns(n) if a.dim(n) else []
    for j, x in enumerate(a.basis.get(n, ())):
        v = dict(acols[j]) if acols else {}
        for i, c in b.to_coords(f.image(x), m).items():
            v[off + i] = c
        e.add(v)
    return e.rank - a.rank_d(n) - b.rank_d(m + 1)


def is_quasi_iso(f: ChainMap, w: Optional[DegreeWindow] = None) -> Dict[int, bool]:
    """Per degree n of w, is H_n(f) an isomorphism?  Only trusted degrees are reported."""
    w = w or f.source.window
    ha = homology(f.source, w)
    tw = DegreeWindow(w.lo + f.degree, w.hi + f.degree)
    hb = homology(f.target, tw)
    out = {}
    for n in w:
        ga, gb = ha[n], hb[n + f.degree]
        if not (ga.trusted and gb.trusted):
            continue
        if ga.dim != gb.dim:
            out[n] = False
            continue
        out[n] = induced_rank(f, n) == ga.dim
    return out


# -- dg algebras and modules ---------------------------------------------


Table = Union[Mapping[Tuple[Label, Label], Combo], Callable[[Label, Label], Combo]]


def _lookup(table, cache):
    if callable(table):
        def get(x, y):
            key = (x, y)
            v = cache.get(key)
            if v is None:
                v = clean(table(x, y))
                cache[key] = v
            return v
        return get
    fixed = {k: clean(v) for k, v in table.items() if v}

    def get(x, y):
        return fixed.get((x, y), {})
    return get


class DGAlgebra:
    """Unital dg algebra on a windowed complex, product given on basis pairs.

    Products landing above the window may be absent from a table (truncation);
    validation therefore only looks at pairs and triples inside the window.
    """

    def __init__(self, complex: ChainComplex, unit: Label, product: Table, augmentation: Optional[Mapping[Label, object]] = None, name: str = ""):
        self.complex = complex
        self.unit = unit
        self.augmentation = dict(augmentation) if augmentation is not None else None
        self.name = name or complex.name
        self._cache: Dict = {}
        self._mul = _lookup(product, self._cache)
        if unit not in complex or complex.degree(unit) != 0:
            raise InvariantViolation(f"unit {unit!r} is not a degree-0 basis element")

    def mul(self, x: Label, y: Label) -> Combo:
        if x == self.unit:
            return {y: 1}
        if y == self.unit:
            return {x: 1}
        return self._mul(x, y)

    def multiply(self, u: Mapping[Label, object], v: Mapping[Label, object]) -> Combo:
        out: Combo = {}
        for x, a in u.items():
            for y, b in v.items():
                add_into(out, self.mul(x, y), a * b)
        return out

    def eps(self, vec: Mapping[Label, object]):
        if self.augmentation is None:
            return None
        return sum(self.augmentation.get(x, 0) * c for x, c in vec.items())

    def __repr__(self):
        return f"DGAlgebra({self.name})"


class AlgebraModule:
    """Left dg module over a DGAlgebra, action given on (algebra label, module label)."""

    def __init__(self, algebra: DGAlgebra, complex: ChainComplex, action: Table, name: str = ""):
        self.algebra = algebra
        self.complex = complex
        self.name = name or complex.name
        self._cache: Dict = {}
        self._act = _lookup(action, self._cache)

    def act(self, a: Label, m: Label) -> Combo:
        if a == self.algebra.unit:
            return {m: 1}
        return self._act(a, m)

    def action(self, u: Mapping[Label, object], v: Mapping[Label, object]) -> Combo:
        out: Combo = {}
        for x, a in u.items():
            for y, b in v.items():
                add_into(out, self.act(x, y), a * b)
        return out

    def __repr__(self):
        return f"AlgebraModule({self.name} over {self.algebra.name})"


def trivial_module(a: DGAlgebra, label: Label = "1", degree: int = 0) -> AlgebraModule:
    """ℚ[degree] with the augmentation action."""
    if a.augmentation is None:
        from .errors import NotAugmented

        raise NotAugmented(f"{a.name} has no augmentation")
    c = unit_complex(label, degree)
    aug = a.augmentation

    def act(x, m):
        e = aug.get(x, 0)
        return {m: e} if e else {}

    return AlgebraModule(a, c, act, name=f"Q[{degree}]")


def _pick(items: List, budget: Optional[int], seed: int = 0) -> List:
    if budget is None or len(items) <= budget:
        return items
    return random.Random(seed).sample(items, budget)


def validate_algebra(a: DGAlgebra, budget: Optional[int] = None, w: Optional[DegreeWindow] = None) -> Report:
    """Associativity, unitality, Leibniz and augmentation checks on basis elements.

    Exhaustive over the window unless ``budget`` caps the number of pairs and
    triples examined (then a seeded sample is used).
    """
    c = a.complex
    w = w or c.window
    rep = Report(f"algebra {a.name}")
    labels = [x for n in w for x in c.basis.get(n, ())]
    deg = c.space._deg
    for x in labels:
        rep.record("unit", a.mul(a.unit, x) == {x: 1} and a.mul(x, a.unit) == {x: 1}, f"{x!r}")
    pairs = [(x, y) for x in labels for y in labels if deg[x] + deg[y] in w]
    for x, y in _pick(pairs, budget):
        n = deg[x] + deg[y]
        if not c.known(n - 1):
            continue
        lhs = c.apply(a.mul(x, y))
        rhs = a.multiply(c.diff(x), {y: 1})
        add_into(rhs, a.multiply({x: 1}, c.diff(y)), -1 if deg[x] % 2 else 1)
        add_into(lhs, rhs, -1)
        rep.record("leibniz", not lhs, f"({x!r}, {y!r})")
        if a.augmentation is not None:
            e = a.eps(a.mul(x, y)) - a.augmentation.get(x, 0) * a.augmentation.get(y, 0)
            rep.record("augmentation", e == 0, f"({x!r}, {y!r})")
    for x, y in pairs:
        for v in a.mul(x, y):
            if v not in c:
                rep.fail("closure", f"{x!r}·{y!r} contains {v!r}")
    triples = [(x, y, z) for x, y in pairs for z in labels if deg[x] + deg[y] + deg[z] in w]
    for x, y, z in _pick(triples, budget):
        lhs = a.multiply(a.mul(x, y), {z: 1})
        rhs = a.multiply({x: 1}, a.mul(y, z))
        add_into(lhs, rhs, -1)
        rep.record("associativity", not lhs, f"({x!r}, {y!r}, {z!r})")
    if a.augmentation is not None:
        rep.record("augmentation", a.augmentation.get(a.unit, 0) == 1, "unit")
        for x, v in a.augmentation.items():
            rep.record("augmentation", deg.get(x, 0) == 0, f"{x!r} not in degree 0")
        for x in labels:
            if deg[x] == 1:
                rep.record("augmentation", a.eps(c.diff(x)) == 0, f"ε∘d on {x!r}")
    return rep


def validate_module(mod: AlgebraModule, budget: Optional[int] = None, w: Optional[DegreeWindow] = None) -> Report:
    a, c = mod.algebra, mod.complex
    ac = a.complex
    w = w or c.window
    rep = Report(f"module {mod.name}")
    adeg, mdeg = ac.space._deg, c.space._deg
    alabels = [x for xs in ac.basis.values() for x in xs]
    mlabels = [x for n in w for x in c.basis.get(n, ())]
    for m in mlabels:
        rep.record("unit", mod.act(a.unit, m) == {m: 1}, f"{m!r}")
    pairs = [(x, m) for x in alabels for m in mlabels if adeg[x] + mdeg[m] in w]
    for x, m in _pick(pairs, budget):
        n = adeg[x] + mdeg[m]
        if not c.known(n - 1):
            continue
        lhs = c.apply(mod.act(x, m))
        rhs = mod.action(ac.diff(x), {m: 1})
        add_into(rhs, mod.action({x: 1}, c.diff(m)), -1 if adeg[x] % 2 else 1)
        add_into(lhs, rhs, -1)
        rep.record("leibniz", not lhs, f"({x!r}, {m!r})")
    triples = [(x, y, m) for x in alabels for y in alabels if adeg[x] + adeg[y] <= ac.window.hi for m in mlabels if adeg[x] + adeg[y] + mdeg[m] in w]
    for x, y, m in _pick(triples, budget):
        lhs = mod.action(a.mul(x, y), {m: 1})
        rhs = mod.action({x: 1}, mod.act(y, m))
        add_into(lhs, rhs, -1)
        rep.record("associativity", not lhs, f"({x!r}, {y!r}, {m!r})")
    return rep


def direct_sum(parts: Sequence[ChainComplex], name: str = "") -> ChainComplex:
    """Direct sum of complexes with pairwise disjoint labels."""
    basis: Dict[int, List[Label]] = {}
    d: Dict[Label, Combo] = {}
    lo = min(p.window.lo for p in parts)
    hi = max(p.window.hi for p in parts)
    for p in parts:
        for n, xs in p.basis.items():
            basis.setdefault(n, []).extend(xs)
            for x in xs:
                if p.diff(x):
                    d[x] = p.diff(x)
    return ChainComplex(
        basis, d, DegreeWindow(lo, hi),
        exact_below=all(p.exact_below for p in parts), exact_above=all(p.exact_above for p in parts),
        check=False, name=name,
    )
