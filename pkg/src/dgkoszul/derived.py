"""Derived functors and spectral sequences.

Homological degrees throughout; Ext^k and Coext^k are read off as H_{-k} of
the relevant hom complex (see ``cohomological``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple, Union

from .barcobar import CobarAlgebra, TwistingChain, bar, bar_twisting_chain, cobar
from .coalgebra import Comodule, DGCoalgebra, comodule_hom_complex, is_two_reduced, validate_comodule
from .errors import AlgebraMismatch, CoalgebraMismatch, FiltrationError, HypothesisViolated, IncompleteDegree, Mismatch, NotCocommutative, NotTwoReduced
from .graded import (
    AlgebraModule, ChainComplex, Combo, DegreeWindow, DGAlgebra, Homology, Label, homology, tensor,
)
from .linalg import Echelon, kernel_vectors
from .twisted import TwistedExtension, coextension, extension, koszul_module, two_sided_cobar
from .vec import add_into, add_term


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


def _win(w) -> DegreeWindow:
    return DegreeWindow(0, w) if isinstance(w, int) else w


def _lowest(c: ChainComplex) -> int:
    return min(c.basis) if c.basis else 0


def _highest(c: ChainComplex) -> int:
    return max(c.basis) if c.basis else 0


def cohomological(h: Union[Homology, Dict[int, int]]) -> Dict[int, int]:
    """{k: dim Ext^k} from homological dims, Ext^k = H_{-k}."""
    dims = h.dims() if isinstance(h, Homology) else h
    return {-n: d for n, d in sorted(dims.items(), reverse=True)}


# -- filtered complexes and the spectral-sequence engine ------------------------


class FilteredComplex:
    """An increasing filtration F_p spanned by basis labels of level <= p."""

    def __init__(self, total: ChainComplex, level: Callable[[Label], int], check: bool = True):
        self.total = total
        self.level = level
        if check:
            self.validate()

    def validate(self) -> None:
        t = self.total
        for n, xs in t.basis.items():
            if not t.known(n - 1):
                continue
            for x in xs:
                p = self.level(x)
                for y in t.diff(x):
                    if self.level(y) > p:
                        raise FiltrationError(f"d({x!r}) has {y!r} at level {self.level(y)} > {p}")

    def sub_basis(self, p: int, n: int) -> List[Label]:
        return [x for x in self.total.basis.get(n, ()) if self.level(x) <= p]

    def levels(self) -> Tuple[int, int]:
        ls = [self.level(x) for x in self.total.labels()]
        return (min(ls), max(ls)) if ls else (0, 0)


HOMOLOGICAL = "homological"
COHOMOLOGICAL = "cohomological"


@dataclass
class SpectralSequence:
    """Pages E_r as {(level, n): dim} together with the ranks of d_r.

    ``convention`` fixes how (level, n) is printed as (p, q):
      homological:   p = level,  q = n - p,  d_r: E^{p,q} -> E^{p-r, q+r-1}
      cohomological: p = -level, q = n + p,  d_r: E^{p,q} -> E^{p+r, q+r-1}
    """

    pages: Dict[int, Dict[Tuple[int, int], int]]
    ranks: Dict[int, Dict[Tuple[int, int], int]]
    abutment: Dict[int, int]
    degrees: List[int]
    convention: str = HOMOLOGICAL
    collapse: Optional[int] = None
    last: int = 0
    notes: List[str] = field(default_factory=list)

    def bidegree(self, level: int, n: int) -> Tuple[int, int]:
        if self.convention == HOMOLOGICAL:
            return level, n - level
        return -level, n - level

    def differential_bidegree(self, r: int) -> Tuple[int, int]:
        return (-r, r - 1) if self.convention == HOMOLOGICAL else (r, r - 1)

    def table(self, r: int) -> Dict[Tuple[int, int], int]:
        """Page r as {(p, q): dim}, nonzero entries only."""
        page = self.pages[min(r, self.last)]
        return {self.bidegree(l, n): d for (l, n), d in sorted(page.items()) if d}

    def e_infinity(self) -> Dict[Tuple[int, int], int]:
        return self.table(self.last)

    def antidiagonal_sums(self) -> Dict[int, int]:
        """Σ_p dim E∞ in each total (homological) degree n."""
        out = {n: 0 for n in self.degrees}
        for (l, n), d in self.pages[self.last].items():
            out[n] = out.get(n, 0) + d
        return out

    def reconciles(self) -> bool:
        return self.antidiagonal_sums() == {n: self.abutment[n] for n in self.degrees}

    def page_consistency(self) -> List[Tuple[int, int, int]]:
        """(r, level, n) where dim E_{r+1} != dim E_r - rank out - rank in."""
        bad = []
        for r in sorted(self.pages):
            if r + 1 not in self.pages:
                continue
            for (l, n), d in self.pages[r + 1].items():
                out = self.ranks[r].get((l, n))
                inn = self.ranks[r].get((l + r, n + 1))
                if out is None or inn is None:
                    continue
                if d != self.pages[r][(l, n)] - out - inn:
                    bad.append((r, l, n))
        return bad

    def render(self, r: Optional[int] = None) -> str:
        r = self.last if r is None else r
        t = self.table(r)
        name = "∞" if r >= self.last else str(r)
        a, b = self.differential_bidegree(r)
        lines = [f"E_{name} ({self.convention}; d_r has bidegree ({a:+d}, {b:+d}) in (p, q))"]
        if not t:
            return "\n".join(lines + ["  (zero)"])
        ps = sorted({p for p, _ in t})
        qs = sorted({q for _, q in t}, reverse=True)
        width = max(3, max(len(str(p)) for p in ps) + 1)
        lines.append("q\\p " + "".join(f"{p:>{width}}" for p in ps))
        for q in qs:
            lines.append(f"{q:>3} " + "".join(f"{t.get((p, q), 0) or '.':>{width}}" for p in ps))
        return "\n".join(lines)


class _Degree:
    """Linear algebra of one total degree: coordinates and filtration levels."""

    def __init__(self, fc: FilteredComplex, n: int):
        t = fc.total
        self.n = n
        self.labels = list(t.basis.get(n, ()))
        self.lv = [fc.level(x) for x in self.labels]
        self.cols = t.columns(n) if self.labels and t.known(n - 1) else [{} for _ in self.labels]
        self.lower_lv = [fc.level(x) for x in t.basis.get(n - 1, ())]

    def image(self, vec: Dict[int, int]) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for j, k in vec.items():
            add_into(out, self.cols[j], k)
        return out

    def z(self, r: int, p: int) -> List[Dict[int, int]]:
        """Z_r^p = {x in F_p : dx in F_{p-r}} as coordinate vectors."""
        idx = [j for j, l in enumerate(self.lv) if l <= p]
        cut = p - r
        cols = [{i: v for i, v in self.cols[j].items() if self.lower_lv[i] > cut} for j in idx]
        return [{idx[j]: k for j, k in v.items()} for v in kernel_vectors(cols)]


def _span_dim(vectors) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def ss_from_filtration(fc: FilteredComplex, w: Optional[Union[DegreeWindow, int]] = None,
                       convention: str = HOMOLOGICAL, start: int = 0) -> SpectralSequence:
    """Pages E_r^{p} (degree n) = Z_r^p / (Z_{r-1}^{p-1} + d Z_{r-1}^{p+r-1}).

    Computed on every degree n of the window with n-1, n, n+1 known, for r
    from ``start`` until r exceeds the spread of filtration levels, where the
    page equals E∞.
    """
    t = fc.total
    w = _win(w) if w is not None else t.window
    degrees = [n for n in w if t.known(n - 1) and t.known(n) and t.known(n + 1)]
    lmin, lmax = fc.levels()
    last = max(lmax - lmin + 1, start)
    cache: Dict[int, _Degree] = {}

    def deg(n):
        g = cache.get(n)
        if g is None:
            g = cache[n] = _Degree(fc, n)
        return g

    zc: Dict[Tuple[int, int, int], List[Dict[int, int]]] = {}

    def z(r, p, n):
        r = max(r, -1)
        key = (r, p, n)
        v = zc.get(key)
        if v is None:
            v = zc[key] = deg(n).z(r, p) if t.known(n) and t.known(n - 1) else []
        return v

    def denom(r, p, n):
        """Z_{r-1}^{p-1} + d Z_{r-1}^{p+r-1} in degree n."""
        up = deg(n + 1)
        return list(z(r - 1, p - 1, n)) + [up.image(v) for v in z(r - 1, p + r - 1, n + 1)]

    levels = sorted(set(range(lmin, lmax + 1)))
    pages: Dict[int, Dict[Tuple[int, int], int]] = {}
    ranks: Dict[int, Dict[Tuple[int, int], int]] = {}
    for r in range(start, last + 1):
        page = {}
        for n in degrees:
            for p in levels:
                top = z(r, p, n)
                page[(p, n)] = len(top) - _span_dim(denom(r, p, n)) if top else 0
        pages[r] = page
        rk = {}
        for n in degrees:
            if n - 1 not in degrees:
                continue
            g = deg(n)
            for p in levels:
                if not page[(p, n)]:
                    rk[(p, n)] = 0
                    continue
                base = denom(r, p - r, n - 1)
                e = Echelon()
                for v in base:
                    e.add(v)
                b0 = e.rank
                for v in z(r, p, n):
                    e.add(g.image(v))
                rk[(p, n)] = e.rank - b0
        ranks[r] = rk
    abut = homology(t, DegreeWindow(min(degrees), max(degrees))).dims() if degrees else {}
    ss = SpectralSequence(pages, ranks, abut, degrees, convention, last=last)
    # first page from which every computed differential vanishes
    col = None
    for r in sorted(ranks, reverse=True):
        if any(ranks[r].values()):
            break
        col = r
    ss.collapse = col
    ss.notes.append(f"E_{last} = E_∞ in degrees {degrees[0]}..{degrees[-1]}" if degrees else "no complete degrees")
    edge = [n for n in w if n not in degrees]
    if edge:
        ss.notes.append(f"undetermined beyond window: degrees {edge}")
    return ss


# -- twisted hom complexes -----------------------------------------------------


def twisted_hom(tau: TwistingChain, n: Comodule, m: AlgebraModule, w: Union[DegreeWindow, int], check: bool = True) -> ChainComplex:
    """Hom_A(A ⊗_τ N, M) ≅ [N, M] with δf = d∘f - (-1)^q f∘d + (-1)^q Σ ± τ(x0)·f(x1).

    Labels ("hom", x, y) send x to y.  Only the degrees of the window are
    built; N must be known wherever a map of those degrees starts.
    """
    w = _win(w)
    if n.coalgebra is not tau.source:
        raise CoalgebraMismatch("the comodule is not over the source of τ")
    if m.algebra is not tau.target:
        raise AlgebraMismatch("the module is not over the target of τ")
    nx, mx = n.complex, m.complex
    if (not nx.exact_above and not mx.exact_above) or (not nx.exact_below and not mx.exact_below):
        raise IncompleteDegree("both sides unbounded in the same direction: hom degrees cannot be completed")
    for q in w:
        for p in nx.basis:
            if not mx.known(p + q):
                raise IncompleteDegree(f"{mx.name} is not known in degree {p + q}")
        for r in mx.basis:
            if not nx.known(r - q):
                raise IncompleteDegree(f"{nx.name} is not known in degree {r - q}")
    basis: Dict[int, List[Label]] = {}
    for p, xs in nx.basis.items():
        for r, ys in mx.basis.items():
            if r - p in w:
                basis.setdefault(r - p, []).extend(("hom", x, y) for x in xs for y in ys)
    into: Dict[Label, List[Tuple[Label, object]]] = {}
    twist_into: Dict[Label, List[Tuple[Label, Label, object]]] = {}
    for x2 in nx.labels():
        for x, cf in nx.diff(x2).items():
            into.setdefault(x, []).append((x2, cf))
        for (c, x), cf in n.rho(x2).items():
            if c != n.coalgebra.coaug:
                twist_into.setdefault(x, []).append((x2, c, cf))
    ndeg, mdeg = nx.space._deg, mx.space._deg
    cdeg = n.coalgebra.complex.space._deg

    def d(lbl):
        _, x, y = lbl
        q = mdeg[y] - ndeg[x]
        out: Combo = {}
        for y2, cf in mx.diff(y).items():
            add_term(out, ("hom", x, y2), cf)
        s = -_sgn(q)
        for x2, cf in into.get(x, ()):
            add_term(out, ("hom", x2, y), s * cf)
        for x2, c, cf in twist_into.get(x, ()):
            tc = tau(c)
            if not tc:
                continue
            s2 = _sgn(q) * _sgn(q * (cdeg[c] - 1))
            for y2, k in m.action(tc, {y: 1}).items():
                add_term(out, ("hom", x2, y2), s2 * cf * k)
        return out

    return ChainComplex(basis, d, w, exact_below=False, exact_above=False, check=check,
                        name=f"Hom_{tau.name}({nx.name},{mx.name})")


# -- Cotor ---------------------------------------------------------------------


def _need_two_reduced(c: DGCoalgebra):
    if not is_two_reduced(c):
        raise NotTwoReduced(f"{c.name} is not 2-reduced")


def cotor(c: DGCoalgebra, m: Comodule, n: Comodule, w: Union[DegreeWindow, int], right_coaction=None) -> Homology:
    """Cotor^C(M, N) as the homology of the two-sided cobar construction Ω(M; C; N)."""
    w = _win(w)
    _need_two_reduced(c)
    lo = _lowest(m.complex) + _lowest(n.complex)
    big = DegreeWindow(min(w.lo, lo), w.hi + 1)
    cx = two_sided_cobar(m, c, n, big, right_coaction=right_coaction)
    h = homology(cx, DegreeWindow(max(w.lo, big.lo), w.hi))
    return h


def hopf_tensor_module(omega: CobarAlgebra, a: AlgebraModule, b: AlgebraModule, w: DegreeWindow) -> AlgebraModule:
    """A ⊗ B over ΩC through the primitive-generator coproduct (C cocommutative)."""
    if not omega.coalgebra.cocommutative:
        raise NotCocommutative(f"{omega.coalgebra.name} is not flagged cocommutative")
    cx = tensor(a.complex, b.complex, w, check=True)
    adeg = a.complex.space._deg
    odeg = omega.complex.space._deg

    def act(u, lbl):
        _, x, y = lbl
        out: Combo = {}
        for (u1, u2), k in omega.hopf_coproduct(u).items():
            left = a.act(u1, x)
            if not left:
                continue
            right = b.act(u2, y)
            s = _sgn(odeg[u2] * adeg[x]) * k
            for x2, k1 in left.items():
                for y2, k2 in right.items():
                    z = ("⊗", x2, y2)
                    if z in cx:
                        add_term(out, z, s * k1 * k2)
        return out

    return AlgebraModule(omega, cx, act, name=f"{a.name}⊗{b.name}")


def derived_cotensor(m: Comodule, n: Comodule, w: Union[DegreeWindow, int]) -> Comodule:
    """t_*(t^!M ⊗ t^!N): a comodule whose homology is Cotor^C(M, N)."""
    w = _win(w)
    c = m.coalgebra
    if n.coalgebra is not c:
        raise Mismatch("mismatched coalgebras in the derived cotensor product")
    _need_two_reduced(c)
    lo = _lowest(m.complex) + _lowest(n.complex)
    big = DegreeWindow(min(w.lo, lo), w.hi + 1)
    omega = cobar(c, DegreeWindow(0, max(big.hi - lo, 0)))
    tm = extension(omega.t, m, DegreeWindow(_lowest(m.complex), big.hi - _lowest(n.complex)))
    tn = extension(omega.t, n, DegreeWindow(_lowest(n.complex), big.hi - _lowest(m.complex)))
    p = hopf_tensor_module(omega, tm, tn, big)
    return coextension(omega.t, p, big)


# -- Ext -------------------------------------------------------------------------


def _ext_window(w: DegreeWindow) -> DegreeWindow:
    return DegreeWindow(w.lo - 1, w.hi + 1)


def bar_resolution_hom(a: DGAlgebra, v: AlgebraModule, w_: AlgebraModule, window: Union[DegreeWindow, int], check: bool = True) -> Tuple[ChainComplex, Comodule]:
    """[B(A, A, V), W]_A ≅ Hom_π(BA ⊗^π V, W), with the bar-comodule also returned."""
    window = _win(window)
    if not v.complex.exact_below:
        raise HypothesisViolated("convergence-hypothesis-violated: V must be bounded below")
    if not w_.complex.exact_above or not w_.complex.exact_below:
        raise HypothesisViolated("convergence-hypothesis-violated: W must be bounded")
    vlo = _lowest(v.complex)
    wlo, whi = _lowest(w_.complex), _highest(w_.complex)
    big = _ext_window(window)
    top = whi - big.lo
    b = bar(a, DegreeWindow(0, max(top - vlo, 0)))
    pi = bar_twisting_chain(b, a)
    nb = coextension(pi, v, DegreeWindow(vlo, max(top, vlo)), check=check)
    h = twisted_hom(pi, nb, w_, big, check=check)
    return h, nb


def ext(a: DGAlgebra, v: AlgebraModule, w_: AlgebraModule, window: Union[DegreeWindow, int], route: str = "auto") -> Homology:
    """Ext_A(V, W) in homological indexing over ``window`` (Ext^k = H_{-k}).

    route "bar": the normalised bar resolution, V bounded below and W bounded.
    route "semifree": V = A ⊗_τ N is already semifree; Hom_A(V, W) ≅ Hom_τ(N, W).
    "auto" picks semifree when V is a twisted extension over A.
    """
    window = _win(window)
    if route == "auto":
        route = "semifree" if isinstance(v, TwistedExtension) and v.algebra is a else "bar"
    if route == "semifree":
        if not isinstance(v, TwistedExtension) or v.algebra is not a:
            raise Mismatch("semifree route needs V = A ⊗_τ N over the same algebra")
        if not v.comodule.complex.exact_below or not v.comodule.complex.exact_above:
            raise HypothesisViolated("convergence-hypothesis-violated: N must be bounded")
        h = twisted_hom(v.tau, v.comodule, w_, _ext_window(window))
    elif route == "bar":
        h, _ = bar_resolution_hom(a, v, w_, window)
    else:
        raise ValueError(f"unknown route {route!r}")
    return homology(h, window)


def hyper_ext_ss(a: DGAlgebra, v: AlgebraModule, w_: AlgebraModule, window: Union[DegreeWindow, int]) -> SpectralSequence:
    """Skeletal (bar-length) filtration of [B(A, A, V), W]_A; cohomological pages.

    p is the bar length, E_1^{p,q} = [H(Ā)^{⊗p} ⊗ H(V), H(W)] in internal
    degree q, and the abutment is Ext in total degree q - p (homological).
    """
    window = _win(window)
    if not v.complex.exact_below or not (w_.complex.exact_above and w_.complex.exact_below):
        raise HypothesisViolated("hypothesis-violated: V must be bounded below and W bounded above")
    h, _ = bar_resolution_hom(a, v, w_, window)

    def level(lbl):
        _, x, _ = lbl
        return -(len(x[1]) - 1)

    return ss_from_filtration(FilteredComplex(h, level), window, convention=COHOMOLOGICAL, start=0)


# -- Coext -------------------------------------------------------------------------


def _check_bounded(n: Comodule, what: str):
    if not n.complex.exact_below or not n.complex.exact_above:
        raise HypothesisViolated(f"hypothesis-violated: {what} must be bounded")


def coext_complex(c: DGCoalgebra, n: Comodule, m: Comodule, window: Union[DegreeWindow, int]):
    """{N, t_*t^!M} as a kernel complex, built over the padded window."""
    window = _win(window)
    _need_two_reduced(c)
    _check_bounded(n, "N")
    big = _ext_window(window)
    nlo, nhi, mlo = _lowest(n.complex), _highest(n.complex), _lowest(m.complex)
    top = max(nhi + big.hi, mlo)
    omega = cobar(c, DegreeWindow(0, max(top - mlo, 0)))
    tm = extension(omega.t, m, DegreeWindow(mlo, top))
    ttm = coextension(omega.t, tm, DegreeWindow(mlo, top))
    hw = DegreeWindow(big.lo, big.hi)
    return comodule_hom_complex(n, ttm, hw), omega


def coext(c: DGCoalgebra, n: Comodule, m: Comodule, window: Union[DegreeWindow, int]) -> Homology:
    """Coext_C(N, M) = H({N, t_*t^!M}) in homological indexing."""
    window = _win(window)
    k, _ = coext_complex(c, n, m, window)
    return homology(k.complex, window)


def coext_via_ext(c: DGCoalgebra, n: Comodule, m: Comodule, window: Union[DegreeWindow, int], omega: Optional[CobarAlgebra] = None) -> Homology:
    """Ext_{ΩC}(t^!N, t^!M) by the semifree route."""
    window = _win(window)
    _need_two_reduced(c)
    _check_bounded(n, "N")
    big = _ext_window(window)
    nlo, nhi, mlo = _lowest(n.complex), _highest(n.complex), _lowest(m.complex)
    top = max(nhi + big.hi, mlo)
    if omega is None:
        omega = cobar(c, DegreeWindow(0, max(top - min(mlo, nlo), 0)))
    tn = extension(omega.t, n, DegreeWindow(nlo, max(nhi, nlo)))
    tm = extension(omega.t, m, DegreeWindow(mlo, top))
    return ext(omega, tn, tm, window, route="semifree")


def coext_ss(c: DGCoalgebra, n: Comodule, m: Comodule, window: Union[DegreeWindow, int]) -> SpectralSequence:
    """Filtration of [N, ΩC ⊗_t M]_t by the degree of N; cohomological pages.

    E_1^{p,q} = [N_p, H_q(ΩC ⊗_t M)] with d_1 induced by d_N; the abutment is
    compared against ``coext`` by the caller.
    """
    window = _win(window)
    _need_two_reduced(c)
    _check_bounded(n, "N (its homology)")
    big = _ext_window(window)
    nlo, nhi, mlo = _lowest(n.complex), _highest(n.complex), _lowest(m.complex)
    top = max(nhi + big.hi, mlo)
    omega = cobar(c, DegreeWindow(0, max(top - mlo, 0)))
    tm = extension(omega.t, m, DegreeWindow(mlo, top))
    h = twisted_hom(omega.t, n, tm, big)
    ndeg = n.complex.space._deg

    def level(lbl):
        return -ndeg[lbl[1]]

    return ss_from_filtration(FilteredComplex(h, level), window, convention=COHOMOLOGICAL, start=0)


def coext_e2_product(n: Comodule, m: Comodule, c: DGCoalgebra, window: Union[DegreeWindow, int]) -> Dict[Tuple[int, int], int]:
    """The table (p, q) ↦ dim H_p(N) · dim H_q(ΩC ⊗_t M) the coext SS starts from."""
    window = _win(window)
    nlo, nhi, mlo = _lowest(n.complex), _highest(n.complex), _lowest(m.complex)
    hn = homology(n.complex, DegreeWindow(nlo, nhi)).dims()
    top = max(nhi + window.hi + 1, mlo)
    tm = koszul_module(m, DegreeWindow(mlo, top + 1))
    hm = homology(tm.complex, DegreeWindow(mlo, top)).dims()
    out = {}
    for p, a in hn.items():
        for q, b in hm.items():
            if a * b and q - p in window:
                out[(p, q)] = a * b
    return out
