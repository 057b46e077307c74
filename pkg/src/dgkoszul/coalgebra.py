"""Dg coalgebras, comodules, cofree comodules, cotensor products, coinvariants
and the colinear hom complex.

Coproducts and coactions are given per basis label as combinations of label
pairs ``{(x, y): coefficient}``; the order of the pairs is the Sweedler order
used wherever a sign depends on it.  Right coactions are never stored: when
the coalgebra is cocommutative a right structure is read off a left one via
the signed twist.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import IncompleteDegree, InvariantViolation, Mismatch, NotCocommutative
from .graded import (
    ChainComplex, ChainMap, Combo, DegreeWindow, Label, _check_complete, _default_window, tensor, unit_complex,
)
from .linalg import SparseMatrix, kernel_basis
from .report import Report
from .vec import add_into, add_term, clean

PairCombo = Dict[Tuple[Label, Label], object]


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


class _Lazy:
    """label -> combination, from a table or a cached function."""

    def __init__(self, src):
        if callable(src):
            self.fun = src
            self.cache: Dict = {}
        else:
            self.fun = None
            self.cache = {k: clean(v) for k, v in src.items() if v}

    def __call__(self, x):
        if self.fun is None:
            return self.cache.get(x, {})
        v = self.cache.get(x)
        if v is None:
            v = clean(self.fun(x))
            self.cache[x] = v
        return v


class DGCoalgebra:
    """Coaugmented dg coalgebra with explicit cocommutative / 2-reduced flags.

    The counit defaults to the functional dual to the coaugmentation label.
    ``coproduct`` must return the full coproduct (including the primitive
    terms x⊗1 + 1⊗x).
    """

    def __init__(
        self,
        complex: ChainComplex,
        coproduct: Union[Mapping[Label, PairCombo], Callable[[Label], PairCombo]],
        coaugmentation: Label,
        counit: Optional[Mapping[Label, object]] = None,
        *,
        cocommutative: bool = False,
        two_reduced: bool = False,
        name: str = "",
    ):
        self.complex = complex
        self.coaug = coaugmentation
        self.counit = dict(counit) if counit is not None else {coaugmentation: 1}
        self.cocommutative = cocommutative
        self.two_reduced = two_reduced
        self.name = name or complex.name
        self._delta = _Lazy(coproduct)
        self._reduced: Dict[Label, PairCombo] = {}
        if coaugmentation not in complex or complex.degree(coaugmentation) != 0:
            from .errors import NotCoaugmented

            raise NotCoaugmented(f"{coaugmentation!r} is not a degree-0 basis element")

    def delta(self, x: Label) -> PairCombo:
        if x == self.coaug:
            return {(x, x): 1}
        return self._delta(x)

    def reduced(self, x: Label) -> PairCombo:
        """Reduced coproduct: drop the terms with a coaugmentation factor."""
        v = self._reduced.get(x)
        if v is None:
            u = self.coaug
            v = {k: c for k, c in self.delta(x).items() if k[0] != u and k[1] != u}
            self._reduced[x] = v
        return v

    def eps(self, vec: Mapping[Label, object]):
        return sum(self.counit.get(x, 0) * c for x, c in vec.items())

    def degree(self, x: Label) -> int:
        return self.complex.degree(x)

    def reduced_labels(self, n: int) -> Sequence[Label]:
        return [x for x in self.complex.basis.get(n, ()) if x != self.coaug]

    @property
    def window(self) -> DegreeWindow:
        return self.complex.window

    def __repr__(self):
        return f"DGCoalgebra({self.name})"


def tensor_pairs_apply(fa, fb, dega, vec: PairCombo, sign_b=True) -> PairCombo:
    """(fa ⊗ fb) on pair combinations, fa/fb given as label -> combo, even maps."""
    out: PairCombo = {}
    for (x, y), c in vec.items():
        for x2, a in fa(x).items():
            for y2, b in fb(y).items():
                add_term(out, (x2, y2), c * a * b)
    return out


def _d_on_pairs(ca: ChainComplex, cb: ChainComplex, vec: PairCombo) -> PairCombo:
    """(d⊗1 + 1⊗d) with the Koszul sign, on pair combinations."""
    out: PairCombo = {}
    da = ca.space._deg
    for (x, y), c in vec.items():
        for x2, a in ca.diff(x).items():
            add_term(out, (x2, y), c * a)
        s = _sgn(da[x])
        for y2, b in cb.diff(y).items():
            add_term(out, (x, y2), s * c * b)
    return out


def validate_coalgebra(c: DGCoalgebra, w: Optional[DegreeWindow] = None) -> Report:
    """Exhaustive basis-level check of counit, coassociativity, chain-map and flags."""
    cx = c.complex
    w = w or cx.window
    rep = Report(f"coalgebra {c.name}")
    deg = cx.space._deg
    labels = [x for n in w for x in cx.basis.get(n, ())]
    rep.record("counit", c.eps({c.coaug: 1}) == 1, "ε(η(1)) != 1")
    for x in labels:
        dx = c.delta(x)
        for (a, b), v in dx.items():
            if a not in cx or b not in cx:
                rep.fail("closure", f"Δ({x!r}) contains ({a!r}, {b!r})")
                break
            if deg[a] + deg[b] != deg[x]:
                rep.fail("degree", f"Δ({x!r}) term ({a!r}, {b!r})")
        left: Combo = {}
        right: Combo = {}
        for (a, b), v in dx.items():
            add_term(left, b, c.counit.get(a, 0) * v)
            add_term(right, a, c.counit.get(b, 0) * v)
        rep.record("counit", left == {x: 1} and right == {x: 1}, f"{x!r}")
        # (Δ⊗1)Δ = (1⊗Δ)Δ, as triples
        l3: Combo = {}
        r3: Combo = {}
        for (a, b), v in dx.items():
            for (a1, a2), u in c.delta(a).items():
                add_term(l3, (a1, a2, b), v * u)
            for (b1, b2), u in c.delta(b).items():
                add_term(r3, (a, b1, b2), v * u)
        rep.record("coassociativity", l3 == r3, f"{x!r}")
        if c.cocommutative:
            tw: Combo = {}
            for (a, b), v in dx.items():
                add_term(tw, (b, a), _sgn(deg[a] * deg[b]) * v)
            rep.record("cocommutativity", tw == dx, f"{x!r}")
        if cx.known(deg[x] - 1):
            lhs: PairCombo = {}
            for y, v in cx.diff(x).items():
                add_into(lhs, c.delta(y), v)
            rhs = _d_on_pairs(cx, cx, dx)
            add_into(lhs, rhs, -1)
            rep.record("chain-map", not lhs, f"Δ∘d != d∘Δ on {x!r}")
    for x, v in c.counit.items():
        rep.record("counit", deg.get(x) == 0, f"counit nonzero on {x!r} outside degree 0")
    for x in labels:
        if deg[x] == 1:
            rep.record("counit", c.eps(cx.diff(x)) == 0, f"ε∘d on {x!r}")
    if c.two_reduced:
        rep.record("2-reduced", list(cx.basis.get(0, ())) == [c.coaug], "C_0 is not spanned by η(1)")
        rep.record("2-reduced", cx.dim(1) == 0, "C_1 != 0")
        rep.record("2-reduced", all(n >= 0 for n in cx.basis), "negative degrees present")
    return rep


def is_two_reduced(c: DGCoalgebra) -> bool:
    cx = c.complex
    return list(cx.basis.get(0, ())) == [c.coaug] and cx.dim(1) == 0 and all(n >= 0 for n in cx.basis) and cx.exact_below


# -- example coalgebras --------------------------------------------------


def trivial_coalgebra(label: Label = "1") -> DGCoalgebra:
    """ℚ with Δ(1) = 1⊗1."""
    return DGCoalgebra(unit_complex(label), {}, label, cocommutative=True, two_reduced=True, name="Q")


def sphere_homology_coalgebra(n: int, gen: str = "c") -> DGCoalgebra:
    """H_*(S^n): ℚ·1 ⊕ ℚ·c with c primitive and zero differential."""
    cx = ChainComplex({0: ["1"], n: [gen]}, {}, name=f"H(S{n})")
    return DGCoalgebra(cx, {gen: {(gen, "1"): 1, ("1", gen): 1}}, "1",
                       cocommutative=True, two_reduced=n >= 2, name=f"H(S{n})")


def product_sphere_homology_coalgebra(p: int = 2, q: int = 2) -> DGCoalgebra:
    """H_*(S^p × S^q) with Künneth coproduct Δ(ab) = ab⊗1 + a⊗b + (-1)^{pq} b⊗a + 1⊗ab."""
    basis: Dict[int, List[str]] = {0: ["1"]}
    basis.setdefault(p, []).append("a")
    basis.setdefault(q, []).append("b")
    basis.setdefault(p + q, []).append("ab")
    cx = ChainComplex(basis, {}, name=f"H(S{p}xS{q})")
    delta = {
        "a": {("a", "1"): 1, ("1", "a"): 1},
        "b": {("b", "1"): 1, ("1", "b"): 1},
        "ab": {("ab", "1"): 1, ("a", "b"): 1, ("b", "a"): _sgn(p * q), ("1", "ab"): 1},
    }
    return DGCoalgebra(cx, delta, "1", cocommutative=True, two_reduced=min(p, q) >= 2, name=f"H(S{p}xS{q})")


def coalgebra_tensor(c: DGCoalgebra, d: DGCoalgebra, w: Optional[DegreeWindow] = None) -> DGCoalgebra:
    """C ⊗ D with Δ(x⊗y) = Σ (-1)^{|x2||y1|} (x1⊗y1) ⊗ (x2⊗y2)."""
    cx = tensor(c.complex, d.complex, w)
    cdeg, ddeg = c.complex.space._deg, d.complex.space._deg

    def delta(lbl):
        _, x, y = lbl
        out: PairCombo = {}
        dy = d.delta(y)
        for (x1, x2), a in c.delta(x).items():
            for (y1, y2), b in dy.items():
                add_term(out, (("⊗", x1, y1), ("⊗", x2, y2)), _sgn(cdeg[x2] * ddeg[y1]) * a * b)
        return out

    counit = {("⊗", x, y): a * b for x, a in c.counit.items() for y, b in d.counit.items()}
    return DGCoalgebra(cx, delta, ("⊗", c.coaug, d.coaug), counit,
                       cocommutative=c.cocommutative and d.cocommutative,
                       two_reduced=c.two_reduced and d.two_reduced, name=f"{c.name}⊗{d.name}")


# -- comodules -----------------------------------------------------------


class Comodule:
    """Left comodule: ρ(x) = Σ c ⊗ x' given as {(c, x'): coefficient}."""

    def __init__(self, coalgebra: DGCoalgebra, complex: ChainComplex,
                 coaction: Union[Mapping[Label, PairCombo], Callable[[Label], PairCombo]], name: str = ""):
        self.coalgebra = coalgebra
        self.complex = complex
        self.name = name or complex.name
        self._rho = _Lazy(coaction)

    def rho(self, x: Label) -> PairCombo:
        return self._rho(x)

    def rho_right(self, x: Label) -> PairCombo:
        """Right coaction through the signed twist: Σ (-1)^{|c||x'|} x' ⊗ c."""
        if not self.coalgebra.cocommutative:
            raise NotCocommutative(f"{self.coalgebra.name} is not flagged cocommutative")
        cdeg, mdeg = self.coalgebra.complex.space._deg, self.complex.space._deg
        return {(m, c): _sgn(cdeg[c] * mdeg[m]) * v for (c, m), v in self.rho(x).items()}

    def __repr__(self):
        return f"Comodule({self.name} over {self.coalgebra.name})"


def validate_comodule(m: Comodule, w: Optional[DegreeWindow] = None) -> Report:
    c, cx, mx = m.coalgebra, m.coalgebra.complex, m.complex
    w = w or mx.window
    rep = Report(f"comodule {m.name}")
    cdeg, mdeg = cx.space._deg, mx.space._deg
    for n in w:
        for x in mx.basis.get(n, ()):
            r = m.rho(x)
            bad = [k for k in r if k[0] not in cx or k[1] not in mx]
            if bad:
                rep.fail("closure", f"ρ({x!r}) contains {bad[0]!r}")
                continue
            rep.record("degree", all(cdeg[a] + mdeg[b] == n for a, b in r), f"{x!r}")
            cu: Combo = {}
            for (a, b), v in r.items():
                add_term(cu, b, c.counit.get(a, 0) * v)
            rep.record("counit", cu == {x: 1}, f"{x!r}")
            l3: Combo = {}
            r3: Combo = {}
            for (a, b), v in r.items():
                for (a1, a2), u in c.delta(a).items():
                    add_term(l3, (a1, a2, b), u * v)
                for (b1, b2), u in m.rho(b).items():
                    add_term(r3, (a, b1, b2), u * v)
            rep.record("coassociativity", l3 == r3, f"{x!r}")
            if mx.known(n - 1):
                lhs: PairCombo = {}
                for y, v in mx.diff(x).items():
                    add_into(lhs, m.rho(y), v)
                add_into(lhs, _d_on_pairs(cx, mx, r), -1)
                rep.record("chain-map", not lhs, f"ρ∘d != d∘ρ on {x!r}")
    return rep


def coalgebra_as_comodule(c: DGCoalgebra) -> Comodule:
    return Comodule(c, c.complex, c.delta, name=c.name)


def trivial_comodule(c: DGCoalgebra, v: Optional[ChainComplex] = None) -> Comodule:
    """v with ρ(x) = 1⊗x; v defaults to ℚ in degree 0 labelled "1"."""
    v = v or unit_complex("1")
    u = c.coaug
    return Comodule(c, v, lambda x: {(u, x): 1}, name=v.name if v.name else "triv")


def cofree_comodule(c: DGCoalgebra, v: ChainComplex, w: Optional[DegreeWindow] = None) -> Comodule:
    """C ⊗ V with coaction Δ ⊗ 1; labels ("⊗", c, v)."""
    cx = tensor(c.complex, v, w)

    def rho(lbl):
        _, x, y = lbl
        return {(a, ("⊗", b, y)): k for (a, b), k in c.delta(x).items()}

    return Comodule(c, cx, rho, name=f"{c.name}⊗{v.name}")


def comodule_sum(parts: Sequence[Comodule], name: str = "") -> Comodule:
    from .graded import direct_sum

    c = parts[0].coalgebra
    for p in parts[1:]:
        if p.coalgebra is not c:
            raise Mismatch("summands over different coalgebras")
    owner = {}
    for p in parts:
        for x in p.complex.labels():
            owner[x] = p
    cx = direct_sum([p.complex for p in parts], name=name)
    return Comodule(c, cx, lambda x: owner[x].rho(x), name=name)


def truncation(m: Comodule, top: int) -> Comodule:
    """The subcomodule of elements of degree <= top.

    A subcomodule only when coactions of low elements stay low, which holds for
    comodules over coalgebras concentrated in non-negative degrees.
    """
    mx = m.complex
    basis = {n: xs for n, xs in mx.basis.items() if n <= top}
    d = {x: mx.diff(x) for xs in basis.values() for x in xs if mx.diff(x)}
    cx = ChainComplex(basis, d, DegreeWindow(mx.window.lo, min(mx.window.hi, top)) if mx.window.lo <= top else DegreeWindow(top, top),
                      exact_below=mx.exact_below, exact_above=True, name=f"{m.name}≤{top}")
    return Comodule(m.coalgebra, cx, m.rho, name=cx.name)


class ComoduleMap(ChainMap):
    def __init__(self, source: Comodule, target: Comodule, components, *, check: bool = True, name: str = ""):
        if source.coalgebra is not target.coalgebra:
            raise Mismatch("comodules over different coalgebras")
        self.src_comodule = source
        self.tgt_comodule = target
        super().__init__(source.complex, target.complex, components, 0, check=check, name=name)

    def colinearity_violations(self, limit: int = 5) -> List[Label]:
        bad = []
        for x in self.source.labels():
            lhs: PairCombo = {}
            for y, v in self.image(x).items():
                add_into(lhs, self.tgt_comodule.rho(y), v)
            rhs: PairCombo = {}
            for (c, y), v in self.src_comodule.rho(x).items():
                for z, u in self.image(y).items():
                    add_term(rhs, (c, z), u * v)
            add_into(lhs, rhs, -1)
            if lhs:
                bad.append(x)
                if len(bad) >= limit:
                    break
        return bad


# -- kernels of linear maps on complexes ---------------------------------


class KernelComplex:
    """Degreewise kernel of a chain map phi: X -> Y given on labels.

    ``complex`` has labels (tag, n, i); ``vectors[label]`` is the kernel vector
    in the ambient basis of X and ``inclusion`` the ChainMap into X.
    """

    def __init__(self, x: ChainComplex, phi: Callable[[Label], Combo], tag: str, w: Optional[DegreeWindow] = None, name: str = ""):
        w = w or x.window
        self.ambient = x
        self.vectors: Dict[Label, Combo] = {}
        self._free: Dict[int, Dict[int, Label]] = {}
        basis: Dict[int, List[Label]] = {}
        for n in w:
            labels = x.basis.get(n, ())
            if not labels:
                continue
            rows: Dict[Label, int] = {}
            cols = []
            for lbl in labels:
                col = {}
                for y, v in phi(lbl).items():
                    i = rows.get(y)
                    if i is None:
                        i = rows[y] = len(rows)
                    col[i] = v
                cols.append(col)
            m = SparseMatrix.from_columns(len(rows), cols)
            ks, pivots = kernel_basis(m, with_pivots=True)
            pv = set(pivots)
            free = [j for j in range(len(labels)) if j not in pv]
            names = [(tag, n, i) for i in range(len(ks))]
            if names:
                basis[n] = names
            self._free[n] = {j: names[i] for i, j in enumerate(free)}
            for nm, k in zip(names, ks):
                self.vectors[nm] = x.from_coords(clean(k), n)
        self._x = x

        def d(lbl):
            n = lbl[1]
            return self.coordinates(x.apply(self.vectors[lbl]), n - 1)

        self.complex = ChainComplex(basis, d, w, exact_below=x.exact_below and w.lo <= x.window.lo,
                                    exact_above=x.exact_above and w.hi >= x.window.hi, name=name)
        self.inclusion = ChainMap(self.complex, x, self.vectors, check=False)

    def coordinates(self, vec: Combo, n: int) -> Combo:
        """Coordinates of a kernel element of degree n in the kernel basis."""
        if not vec:
            return {}
        free = self._free.get(n)
        if free is None:
            raise IncompleteDegree(f"degree {n} of the kernel was not computed")
        idx = self._x.index(n)
        return {free[idx[y]]: v for y, v in vec.items() if idx[y] in free}


def cotensor(m: Comodule, n: Comodule, w: Optional[DegreeWindow] = None) -> Tuple[Comodule, KernelComplex]:
    """M □_C N: equaliser of M⊗ρ_N and ρ^r_M⊗N inside M⊗N.

    The right structure on M comes from the twist, so C must be cocommutative.
    The result is a left comodule through the coaction of N, moved to the front.
    """
    c = m.coalgebra
    if n.coalgebra is not c:
        raise Mismatch("cotensor of comodules over different coalgebras")
    if not c.cocommutative:
        raise NotCocommutative(f"{c.name} is not flagged cocommutative")
    mn = tensor(m.complex, n.complex, w)
    mdeg, cdeg = m.complex.space._deg, c.complex.space._deg

    def phi(lbl):
        _, x, y = lbl
        out: Combo = {}
        for (a, y2), v in n.rho(y).items():
            add_term(out, (x, a, y2), v)
        for (x2, a), v in m.rho_right(x).items():
            add_term(out, (x2, a, y), -v)
        return out

    ker = KernelComplex(mn, phi, "□", mn.window, name=f"{m.name}□{n.name}")

    def rho(lbl):
        vec = ker.vectors[lbl]
        by_c: Dict[Label, Combo] = {}
        for (_, x, y), v in vec.items():
            for (a, y2), u in n.rho(y).items():
                add_term(by_c.setdefault(a, {}), ("⊗", x, y2), _sgn(mdeg[x] * cdeg[a]) * u * v)
        out: PairCombo = {}
        for a, comb in by_c.items():
            if comb:
                deg = lbl[1] - cdeg[a]
                for k, v in ker.coordinates(comb, deg).items():
                    out[(a, k)] = v
        return out

    return Comodule(c, ker.complex, rho, name=ker.complex.name), ker


def coinvariants(n: Comodule, w: Optional[DegreeWindow] = None) -> KernelComplex:
    """Kernel of ρ - η⊗id: the elements x with ρ(x) = 1⊗x."""
    u = n.coalgebra.coaug

    def phi(x):
        out = dict(n.rho(x))
        add_term(out, (u, x), -1)
        return out

    return KernelComplex(n.complex, phi, "inv", w or n.complex.window, name=f"{n.name}^co")


def comodule_hom_complex(n: Comodule, m: Comodule, w: Optional[DegreeWindow] = None) -> KernelComplex:
    """Colinear maps N -> M: equaliser of f ↦ ρ_M∘f and f ↦ (C⊗f)∘ρ_N in [N, M]."""
    from .graded import hom_complex

    c = n.coalgebra
    if m.coalgebra is not c:
        raise Mismatch("hom between comodules over different coalgebras")
    h = hom_complex(n.complex, m.complex, w)
    ndeg, mdeg, cdeg = n.complex.space._deg, m.complex.space._deg, c.complex.space._deg
    # x -> [(x', c, coefficient of c⊗x in ρ(x'))]
    into: Dict[Label, List[Tuple[Label, Label, object]]] = {}
    for x2 in n.complex.labels():
        for (a, x), v in n.rho(x2).items():
            into.setdefault(x, []).append((x2, a, v))

    def phi(lbl):
        _, x, y = lbl
        q = mdeg[y] - ndeg[x]
        out: Combo = {}
        for (a, y2), v in m.rho(y).items():
            add_term(out, (x, a, y2), v)
        for x2, a, v in into.get(x, ()):
            add_term(out, (x2, a, y), -_sgn(q * cdeg[a]) * v)
        return out

    return KernelComplex(h, phi, "colin", h.window, name=f"{{{n.name},{m.name}}}")
