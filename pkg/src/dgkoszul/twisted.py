"""Twisted extensions and coextensions, the Koszul unit and counit, the
t-equivalence predicate and the two-sided cobar construction.

For a twisting chain τ: C ⇝ A, a comodule N and a module M:

* A ⊗_τ N:  d(a⊗n) = da⊗n + (-1)^{|a|} a⊗dn - (-1)^{|a|} Σ a·τ(n0)⊗n1
* C ⊗^τ M:  d(c⊗m) = dc⊗m + (-1)^{|c|} c⊗dm + Σ (-1)^{|c0|} c0⊗τ(c1)·m

where ρ(n) = Σ n0⊗n1 and Δ(c) = Σ c0⊗c1.  Labels are ("⊗", a, n) and
("⊗", c, m).
"""

from __future__ import annotations

from typing import Callable, Dict, List, Mapping, Optional, Tuple, Union

from .barcobar import UNIT, CobarAlgebra, TwistingChain, cobar
from .coalgebra import Comodule, ComoduleMap, DGCoalgebra, PairCombo, is_two_reduced
from .errors import AlgebraMismatch, CoalgebraMismatch, IncompleteDegree, InvariantViolation, Mismatch, NotTwoReduced
from .graded import (
    AlgebraModule, ChainComplex, ChainMap, Combo, DegreeWindow, DGAlgebra, Label, is_quasi_iso, tensor,
)
from .report import Report
from .vec import add_into, add_term


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


def _win(w) -> Optional[DegreeWindow]:
    return DegreeWindow(0, w) if isinstance(w, int) else w


class TwistedExtension(AlgebraModule):
    def __init__(self, tau: TwistingChain, comodule: Comodule, complex: ChainComplex):
        self.tau = tau
        self.comodule = comodule
        a = tau.target
        hi = complex.window.hi
        adeg = a.complex.space._deg
        ndeg = comodule.complex.space._deg

        def act(b, lbl):
            _, x, y = lbl
            if adeg[b] + adeg[x] + ndeg[y] > hi:
                return {}
            return {("⊗", z, y): k for z, k in a.mul(b, x).items()}

        super().__init__(a, complex, act, name=complex.name)


class TwistedCoextension(Comodule):
    def __init__(self, tau: TwistingChain, module: AlgebraModule, complex: ChainComplex):
        self.tau = tau
        self.module = module
        c = tau.source

        def rho(lbl):
            _, x, y = lbl
            return {(a, ("⊗", b, y)): k for (a, b), k in c.delta(x).items()}

        super().__init__(c, complex, rho, name=complex.name)


def extension(tau: TwistingChain, n: Comodule, w: Optional[Union[DegreeWindow, int]] = None, check: bool = True) -> TwistedExtension:
    """A ⊗_τ N as a left A-module."""
    if n.coalgebra is not tau.source:
        raise CoalgebraMismatch("the comodule is not over the source of τ")
    a = tau.target
    ac = a.complex
    adeg = ac.space._deg
    universal = isinstance(a, CobarAlgebra) and tau is a.t
    coaug, ahi = n.coalgebra.coaug, ac.window.hi
    cdeg = n.coalgebra.complex.space._deg

    def d(lbl):
        _, x, y = lbl
        out: Combo = {}
        for x2, k in ac.diff(x).items():
            add_term(out, ("⊗", x2, y), k)
        s = _sgn(adeg[x])
        for y2, k in n.complex.diff(y).items():
            add_term(out, ("⊗", x, y2), s * k)
        for (c, y2), k in n.rho(y).items():
            if universal:
                # x·t(c) is concatenation of words
                if c != coaug and adeg[x] + cdeg[c] - 1 <= ahi:
                    add_term(out, ("⊗", x + (c,), y2), -s * k)
                continue
            tc = tau(c)
            if tc:
                for z, u in a.multiply({x: 1}, tc).items():
                    add_term(out, ("⊗", z, y2), -s * k * u)
        return out

    base = tensor(ac, n.complex, _win(w), check=False)
    cx = ChainComplex(base.basis, d, base.window, exact_below=base.exact_below, exact_above=base.exact_above,
                      check=check, name=f"{a.name}⊗_{tau.name}{n.name}")
    return TwistedExtension(tau, n, cx)


def coextension(tau: TwistingChain, m: AlgebraModule, w: Optional[Union[DegreeWindow, int]] = None, check: bool = True) -> TwistedCoextension:
    """C ⊗^τ M as a left C-comodule (coaction Δ ⊗ 1)."""
    if m.algebra is not tau.target:
        raise AlgebraMismatch("the module is not over the target of τ")
    c = tau.source
    cc = c.complex
    cdeg = cc.space._deg

    def d(lbl):
        _, x, y = lbl
        out: Combo = {}
        for x2, k in cc.diff(x).items():
            add_term(out, ("⊗", x2, y), k)
        s = _sgn(cdeg[x])
        for y2, k in m.complex.diff(y).items():
            add_term(out, ("⊗", x, y2), s * k)
        for (a, b), k in c.delta(x).items():
            tb = tau(b)
            if tb:
                for z, u in m.action(tb, {y: 1}).items():
                    add_term(out, ("⊗", a, z), _sgn(cdeg[a]) * k * u)
        return out

    base = tensor(cc, m.complex, _win(w), check=False)
    cx = ChainComplex(base.basis, d, base.window, exact_below=base.exact_below, exact_above=base.exact_above,
                      check=check, name=f"{c.name}⊗^{tau.name}{m.name}")
    return TwistedCoextension(tau, m, cx)


def extension_map(src: TwistedExtension, tgt: TwistedExtension, f: ChainMap) -> ChainMap:
    """id ⊗ f between twisted extensions along the same τ."""
    def img(lbl):
        _, x, y = lbl
        return {("⊗", x, z): k for z, k in f.image(y).items() if ("⊗", x, z) in tgt.complex}

    return ChainMap(src.complex, tgt.complex, img, check=False, name=f"id⊗{f.name}")


def coextension_map(src: TwistedCoextension, tgt: TwistedCoextension, f: ChainMap) -> ChainMap:
    def img(lbl):
        _, x, y = lbl
        return {("⊗", x, z): k for z, k in f.image(y).items() if ("⊗", x, z) in tgt.complex}

    return ChainMap(src.complex, tgt.complex, img, check=False, name=f"id⊗{f.name}")


# -- Koszul duality with the universal twisting chain --------------------------


def _lowest(c: ChainComplex) -> int:
    return min(c.basis) if c.basis else 0


def koszul_module(n: Comodule, w: Union[DegreeWindow, int], omega: Optional[CobarAlgebra] = None, check: bool = True) -> TwistedExtension:
    """t^!N = ΩC ⊗_t N through the window (ΩC built as far as needed)."""
    w = _win(w)
    c = n.coalgebra
    if omega is None:
        omega = cobar(c, DegreeWindow(0, max(w.hi - _lowest(n.complex), 0)))
    return extension(omega.t, n, w, check=check)


def koszul_comodule(m: AlgebraModule, omega: CobarAlgebra, w: Union[DegreeWindow, int], check: bool = True) -> TwistedCoextension:
    """t_*M = C ⊗^t M."""
    return coextension(omega.t, m, _win(w), check=check)


def koszul_counit_homotopy(c: DGCoalgebra, w: Union[DegreeWindow, int]) -> Tuple[TwistedExtension, Callable[[Label], Combo], Report]:
    """The contraction of ΩC ⊗_t C onto ℚ.

    h((tc1…tck)⊗1) = (-1)^{1+Σ_{i<k}|tci|} (tc1…tc_{k-1})⊗ck, and h = 0 on
    every other basis element (in particular for k = 0).  Returns the complex,
    h, and a report of dh + hd = id - ηε on every basis element in window.
    """
    w = _win(w)
    if not is_two_reduced(c):
        raise NotTwoReduced(f"{c.name} is not 2-reduced")
    omega = cobar(c, w)
    cm = Comodule(c, c.complex, c.delta, name=c.name)
    ext = extension(omega.t, cm, w, check=False)
    cdeg = c.complex.space._deg
    u = c.coaug

    def h(lbl):
        _, word, x = lbl
        if x != u or len(word) == 1:
            return {}
        pre = sum(cdeg[y] - 1 for y in word[1:-1])
        return {("⊗", word[:-1], word[-1]): -_sgn(pre)}

    rep = verify_contraction(ext.complex, h, ("⊗", UNIT, u), w)
    return ext, h, rep


def verify_contraction(cx: ChainComplex, h: Callable[[Label], Combo], base: Label, w: DegreeWindow) -> Report:
    """Check dh + hd = id - (projection onto the basis element ``base``) on every basis element."""
    rep = Report(f"contraction of {cx.name}")
    hcache: Dict[Label, Combo] = {}

    def happly(vec):
        out: Combo = {}
        for y, k in vec.items():
            v = hcache.get(y)
            if v is None:
                v = hcache[y] = h(y)
            if v:
                add_into(out, v, k)
        return out

    for n in w:
        for x in cx.basis.get(n, ()):
            hx = h(x)
            lhs = cx.apply(hx) if hx else {}
            add_into(lhs, happly(cx.diff(x)))
            add_term(lhs, x, -1)
            if x == base:
                add_term(lhs, x, 1)
            rep.record("homotopy", not lhs, f"{x!r}")
    return rep


def koszul_unit(n: Comodule, w: Union[DegreeWindow, int], check: bool = True) -> Tuple[ComoduleMap, TwistedCoextension]:
    """η: N -> t_*t^!N = C ⊗^t (ΩC ⊗_t N), x ↦ Σ x0 ⊗ (1 ⊗ x1)."""
    w = _win(w)
    c = n.coalgebra
    tn = koszul_module(n, DegreeWindow(min(w.lo, _lowest(n.complex)), w.hi), check=check)
    ttn = coextension(tn.tau, tn, w, check=check)
    src = _restrict(n, w)

    def eta(x):
        return {("⊗", a, ("⊗", UNIT, y)): k for (a, y), k in n.rho(x).items()}

    return ComoduleMap(src, ttn, eta, check=check, name="η"), ttn


def _restrict(n: Comodule, w: DegreeWindow) -> Comodule:
    """The comodule viewed through the window (same labels)."""
    nc = n.complex
    if nc.window.lo >= w.lo and nc.window.hi <= w.hi:
        return n
    basis = {k: v for k, v in nc.basis.items() if k in w}
    cx = ChainComplex(basis, {x: nc.diff(x) for v in basis.values() for x in v}, w,
                      exact_below=nc.exact_below and w.lo <= nc.window.lo,
                      exact_above=nc.exact_above and w.hi >= nc.window.hi, check=False, name=nc.name)
    return Comodule(n.coalgebra, cx, n.rho, name=n.name)


def t_equivalence(f: ComoduleMap, w: Union[DegreeWindow, int], omega: Optional[CobarAlgebra] = None) -> Dict[int, bool]:
    """Is t^!f = id ⊗ f: ΩC⊗_tM -> ΩC⊗_tN a quasi-isomorphism?  Per trusted degree of w."""
    w = _win(w)
    m, n = f.src_comodule, f.tgt_comodule
    c = m.coalgebra
    if not is_two_reduced(c):
        raise NotTwoReduced(f"{c.name} is not 2-reduced")
    lo = min(_lowest(m.complex), _lowest(n.complex))
    if omega is None:
        omega = cobar(c, DegreeWindow(0, max(w.hi + 1 - lo, 0)))
    wide = DegreeWindow(min(w.lo, lo) - 1, w.hi + 1)
    tm = extension(omega.t, m, _fit(omega, m, wide))
    tn = extension(omega.t, n, _fit(omega, n, wide))
    return is_quasi_iso(extension_map(tm, tn, f), w)


def _fit(omega: CobarAlgebra, n: Comodule, w: DegreeWindow) -> DegreeWindow:
    lo = max(w.lo, _lowest(n.complex))
    return DegreeWindow(min(lo, w.hi), w.hi)


# -- two-sided cobar -----------------------------------------------------------


def two_sided_cobar(
    n: Comodule,
    c: DGCoalgebra,
    m: Comodule,
    w: Union[DegreeWindow, int],
    right_coaction: Optional[Callable[[Label], PairCombo]] = None,
    omega: Optional[CobarAlgebra] = None,
    check: bool = True,
) -> ChainComplex:
    """Ω(N; C; M) = N ⊗_t ΩC ⊗_t M, labels ("Ω", x, word, y).

    N is used as a right comodule: through ``right_coaction`` (x ↦ {(x0, c1): k})
    if given, otherwise through the twist (C must be cocommutative).
    """
    w = _win(w)
    if n.coalgebra is not c or m.coalgebra is not c:
        raise Mismatch("mismatched coalgebras in the two-sided cobar construction")
    rho_r = right_coaction or n.rho_right
    nlo, mlo = _lowest(n.complex), _lowest(m.complex)
    if omega is None:
        omega = cobar(c, DegreeWindow(0, max(w.hi - nlo - mlo, 0)))
    oc = omega.complex
    nx, mx = n.complex, m.complex
    ndeg, mdeg, odeg = nx.space._deg, mx.space._deg, oc.space._deg
    hi = w.hi
    basis: Dict[int, List[Label]] = {}
    for p, xs in nx.basis.items():
        for q, ws in oc.basis.items():
            for r, ys in mx.basis.items():
                if p + q + r in w:
                    basis.setdefault(p + q + r, []).extend(("Ω", x, wd, y) for x in xs for wd in ws for y in ys)

    def d(lbl):
        _, x, wd, y = lbl
        out: Combo = {}
        a, b = ndeg[x], odeg[wd]
        for x2, k in nx.diff(x).items():
            add_term(out, ("Ω", x2, wd, y), k)
        s = _sgn(a)
        for w2, k in oc.diff(wd).items():
            add_term(out, ("Ω", x, w2, y), s * k)
        s2 = _sgn(a + b)
        for y2, k in mx.diff(y).items():
            add_term(out, ("Ω", x, wd, y2), s2 * k)
        for (x0, c1), k in rho_r(x).items():
            if c1 != c.coaug:
                add_term(out, ("Ω", x0, ("t", c1) + wd[1:], y), _sgn(ndeg[x0]) * k)
        for (c0, y1), k in m.rho(y).items():
            if c0 != c.coaug:
                add_term(out, ("Ω", x, wd + (c0,), y1), -s2 * k)
        return out

    # completeness: a degree is complete when every factor degree it needs is known
    def complete(deg):
        return nx.known(deg - mlo) and mx.known(deg - nlo) and oc.known(deg - nlo - mlo)

    top = hi
    exact_above = nx.exact_above and mx.exact_above and oc.exact_above
    for k in range(w.lo, hi + 1):
        if not complete(k):
            raise IncompleteDegree(f"degree {k} of the two-sided cobar construction is incomplete")
    del top
    return ChainComplex(basis, d, w, exact_below=nx.exact_below and mx.exact_below and w.lo <= nlo + mlo,
                        exact_above=exact_above, check=check, name=f"Ω({n.name};{c.name};{m.name})")
