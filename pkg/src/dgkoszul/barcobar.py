"""Cobar and bar constructions, twisting chains, and the bar-cobar unit.

Cobar words are tuples ``("t", c1, ..., ck)`` standing for tc1·…·tck with
|tc| = |c| - 1; the empty word ``("t",)`` is the unit.  Bar words are tuples
``("b", a1, ..., ak)`` standing for [a1|…|ak] with |[a]| = |a| + 1.

Sign conventions (checked by d² = 0 and chain-map tests, not by transcription):

* cobar: d(tc) = -t(dc) - Σ (-1)^{|c0|} tc0·tc1 over the reduced coproduct,
  extended as a derivation;
* bar: d[a1|…|ak] = Σ_i (-1)^{Σ_{j<i}|[aj]|} [a1|…|-d ai|…|ak]
  + Σ_i (-1)^{i-1+Σ_{j<=i}|aj|} [a1|…|ai·ai+1|…|ak];
* a twisting chain τ satisfies d(τc) = -τ(dc) - Σ (-1)^{|c0|} τ(c0)·τ(c1).
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .coalgebra import DGCoalgebra, PairCombo, is_two_reduced
from .errors import IncompleteDegree, InvariantViolation, Mismatch, NotAnAlgebraMap, NotAugmented, NotCoaugmented, NotTwoReduced
from .graded import ChainComplex, ChainMap, Combo, DegreeWindow, DGAlgebra, Label, unit_complex
from .report import Report
from .vec import add_into, add_term, clean

UNIT = ("t",)
BUNIT = ("b",)


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


def _win(w) -> DegreeWindow:
    return DegreeWindow(0, w) if isinstance(w, int) else w


class TwistingChain:
    """A degree -1 map τ: C ⇝ A vanishing on the coaugmentation."""

    def __init__(self, source: DGCoalgebra, target: DGAlgebra,
                 assignment: Union[Mapping[Label, Combo], Callable[[Label], Combo]], name: str = "τ"):
        self.source = source
        self.target = target
        self.name = name
        if callable(assignment):
            self._fun = assignment
            self._cache: Dict[Label, Combo] = {}
        else:
            self._fun = None
            self._cache = {k: clean(v) for k, v in assignment.items() if v}

    def __call__(self, c: Label) -> Combo:
        if c == self.source.coaug:
            return {}
        if self._fun is None:
            return self._cache.get(c, {})
        v = self._cache.get(c)
        if v is None:
            v = clean(self._fun(c))
            self._cache[c] = v
        return v

    def apply(self, vec: Mapping[Label, object]) -> Combo:
        out: Combo = {}
        for c, k in vec.items():
            add_into(out, self(c), k)
        return out

    def mc_defect(self, c: Label) -> Combo:
        """d(τc) + τ(dc) + Σ (-1)^{|c0|} τ(c0)·τ(c1); zero iff Maurer-Cartan holds at c."""
        C, A = self.source, self.target
        out = A.complex.apply(self(c))
        add_into(out, self.apply(C.complex.diff(c)))
        for (a, b), k in C.reduced(c).items():
            add_into(out, A.multiply(self(a), self(b)), _sgn(C.degree(a)) * k)
        return out


def twisting_chain_check(tau: TwistingChain, w: Optional[DegreeWindow] = None) -> Report:
    """Maurer-Cartan identity on every basis element of the source in window.

    Only elements whose image degree |c| - 1 is computed in the target are
    checked (higher ones are truncated away).
    """
    C, A = tau.source, tau.target
    w = w or C.complex.window
    rep = Report(f"twisting chain {tau.name}")
    top = A.complex.window.hi + 1
    for n in w:
        if n > top:
            break
        for c in C.complex.basis.get(n, ()):
            for x in tau(c):
                if x in A.complex and A.complex.degree(x) != n - 1:
                    rep.fail("degree", f"τ({c!r}) has a term of degree {A.complex.degree(x)}")
            defect = tau.mc_defect(c)
            rep.record("maurer-cartan", not defect, f"{c!r}")
    rep.record("coaugmentation", not tau(C.coaug), "τ(1) != 0")
    return rep


# -- cobar -------------------------------------------------------------------


class CobarAlgebra(DGAlgebra):
    """ΩC with its universal twisting chain t: c ↦ tc."""

    def __init__(self, coalgebra: DGCoalgebra, complex: ChainComplex, gens: List[Label]):
        self.coalgebra = coalgebra
        self.generators = gens
        hi = complex.window.hi
        deg = complex.space._deg

        def mul(x, y):
            if deg[x] + deg[y] > hi:
                return {}
            return {x + y[1:]: 1}

        super().__init__(complex, UNIT, mul, augmentation={UNIT: 1}, name=f"Ω({coalgebra.name})")
        self.t = TwistingChain(coalgebra, self, lambda c: {("t", c): 1} if ("t", c) in complex else {}, name="t")
        self.two_reduced = is_two_reduced(coalgebra)

    def hopf_coproduct(self, word: Tuple) -> Dict[Tuple[Tuple, Tuple], object]:
        """Generators are primitive: Δ(tc1…tck) = Σ over unshuffles with Koszul signs."""
        letters = word[1:]
        k = len(letters)
        deg = self.coalgebra.complex.space._deg
        d = [deg[c] - 1 for c in letters]
        out: Dict = {}
        for r in range(k + 1):
            for I in combinations(range(k), r):
                Is = set(I)
                J = [j for j in range(k) if j not in Is]
                s = 1
                for a in I:
                    for b in J:
                        if b < a and d[a] % 2 and d[b] % 2:
                            s = -s
                add_term(out, (("t",) + tuple(letters[i] for i in I), ("t",) + tuple(letters[j] for j in J)), s)
        return out


def _words(gens: Sequence[Tuple[Label, int]], hi: int, tag: str) -> Dict[int, List[Tuple]]:
    """All words in generators of positive degree with total degree <= hi."""
    by_deg: Dict[int, List[Tuple]] = {0: [(tag,)]}
    for n in range(1, hi + 1):
        lst = []
        for g, d in gens:
            if d <= n:
                for w in by_deg.get(n - d, ()):
                    lst.append(w[:1] + (g,) + w[1:])
        if lst:
            by_deg[n] = lst
    order = {g: i for i, (g, _) in enumerate(gens)}
    for n, lst in by_deg.items():
        lst.sort(key=lambda w: (len(w), [order[g] for g in w[1:]]))
    return by_deg


def cobar(c: DGCoalgebra, w: Union[DegreeWindow, int]) -> CobarAlgebra:
    """The cobar construction ΩC through the window (needs C through w.hi + 1)."""
    w = _win(w)
    cc = c.complex
    if c.coaug not in cc:
        raise NotCoaugmented(f"{c.name} has no coaugmentation")
    if list(cc.basis.get(0, ())) != [c.coaug] or cc.dim(1) or any(n < 0 for n in cc.basis) or not cc.exact_below:
        raise NotTwoReduced(f"{c.name}: the cobar construction needs C_0 = ℚ, C_1 = 0 to have finite degrees")
    if not cc.known(w.hi + 1):
        raise IncompleteDegree(f"{c.name} is known only through degree {cc.window.hi}; cobar through {w.hi} needs {w.hi + 1}")
    gens = [(x, n - 1) for n in sorted(cc.basis) if 1 <= n - 1 <= w.hi for x in c.reduced_labels(n)]
    words = _words(gens, w.hi, "t")
    basis = {n: ws for n, ws in words.items() if n in w}
    gdeg = {g: d for g, d in gens}
    cdeg = cc.space._deg
    dgen: Dict[Label, Dict[Tuple, object]] = {}
    for g, _ in gens:
        v: Dict[Tuple, object] = {}
        for y, k in cc.diff(g).items():
            if y != c.coaug:
                add_term(v, (y,), -k)
        for (a, b), k in c.reduced(g).items():
            add_term(v, (a, b), -_sgn(cdeg[a]) * k)
        dgen[g] = v

    def d(word):
        out: Combo = {}
        pre = 0
        letters = word[1:]
        for i, g in enumerate(letters):
            dg = dgen[g]
            if dg:
                s = _sgn(pre)
                head, tail = word[: i + 1], letters[i + 1:]
                for u, k in dg.items():
                    add_term(out, head + u + tail, s * k)
            pre += gdeg[g]
        return out

    finite = not gens
    cx = ChainComplex(basis, d, w, exact_below=w.lo <= 0, exact_above=finite, name=f"Ω({c.name})")
    return CobarAlgebra(c, cx, [g for g, _ in gens])


def trivial_algebra(label: Label = "1") -> DGAlgebra:
    return DGAlgebra(unit_complex(label), label, {}, augmentation={label: 1}, name="Q")


# -- algebra maps and the Tw(C, A) bijection -----------------------------------


class AlgebraMap(ChainMap):
    def __init__(self, source: DGAlgebra, target: DGAlgebra, components, *, check: bool = True, name: str = ""):
        self.src_algebra = source
        self.tgt_algebra = target
        super().__init__(source.complex, target.complex, components, 0, check=False, name=name)
        if check:
            bad = self.violations()
            if bad:
                raise NotAnAlgebraMap(f"does not commute with d on {bad[0]!r}")
            bad = self.multiplicativity_violations()
            if bad:
                raise NotAnAlgebraMap(f"not multiplicative on {bad[0]!r}")

    def multiplicativity_violations(self, limit: int = 5) -> List:
        a, b = self.src_algebra, self.tgt_algebra
        bad = []
        if self.image(a.unit) != {b.unit: 1}:
            bad.append((a.unit,))
        deg = a.complex.space._deg
        labels = list(a.complex.labels())
        hi = min(a.complex.window.hi, b.complex.window.hi)
        for x in labels:
            for y in labels:
                if deg[x] + deg[y] > hi:
                    continue
                lhs = self.apply(a.mul(x, y))
                add_into(lhs, b.multiply(self.image(x), self.image(y)), -1)
                if lhs:
                    bad.append((x, y))
                    if len(bad) >= limit:
                        return bad
        return bad


def algebra_map_from_generators(omega: CobarAlgebra, target: DGAlgebra, images: Callable[[Label], Combo], check: bool = True) -> AlgebraMap:
    """The algebra map ΩC -> A with tc ↦ images(c), extended multiplicatively."""
    hi = target.complex.window.hi
    memo: Dict[Tuple, Combo] = {UNIT: {target.unit: 1}}

    def f(word):
        v = memo.get(word)
        if v is None:
            head = f(word[:-1])
            v = target.multiply(head, images(word[-1])) if head else {}
            v = {x: k for x, k in v.items() if target.complex.degree(x) <= hi} if v else {}
            memo[word] = v
        return v

    return AlgebraMap(omega, target, f, check=check, name="f")


def twist_from_algebra_map(f: AlgebraMap) -> TwistingChain:
    """τ = f∘t for an algebra map f: ΩC -> A."""
    omega = f.src_algebra
    if not isinstance(omega, CobarAlgebra):
        raise Mismatch("the source of f must be a cobar construction")
    bad = f.violations() or f.multiplicativity_violations()
    if bad:
        raise NotAnAlgebraMap(f"{bad[0]!r}")
    return TwistingChain(omega.coalgebra, f.tgt_algebra, lambda c: f.apply(omega.t(c)), name=f"{f.name}∘t")


def twist_to_algebra_map(tau: TwistingChain, w: Optional[Union[DegreeWindow, int]] = None) -> AlgebraMap:
    """The algebra map ΩC -> A extending tc ↦ τ(c); a chain map iff τ is a twisting chain."""
    w = _win(w) if w is not None else DegreeWindow(0, tau.target.complex.window.hi)
    omega = cobar(tau.source, w)
    try:
        return algebra_map_from_generators(omega, tau.target, tau)
    except NotAnAlgebraMap as e:
        raise NotAnAlgebraMap(f"τ is not a twisting chain ({e})") from None


# -- bar ---------------------------------------------------------------------


def bar(a: DGAlgebra, w: Union[DegreeWindow, int]) -> DGCoalgebra:
    """The bar construction BA: tensor coalgebra on sĀ with d = d_⊗ + δ."""
    w = _win(w)
    ac = a.complex
    if a.augmentation is None:
        raise NotAugmented(f"{a.name} has no augmentation")
    if {k: v for k, v in a.augmentation.items() if v} != {a.unit: 1}:
        raise NotAugmented(f"{a.name}: augmentation must be dual to the unit")
    if any(n < 0 for n in ac.basis) or not ac.exact_below:
        raise NotAugmented(f"{a.name} is not connective")
    if not ac.known(w.hi - 1):
        raise IncompleteDegree(f"{a.name} is known only through degree {ac.window.hi}; bar through {w.hi} needs {w.hi - 1}")
    gens = [(x, n + 1) for n in sorted(ac.basis) if n + 1 <= w.hi for x in ac.basis[n] if x != a.unit]
    words = _words(gens, w.hi, "b")
    basis = {n: ws for n, ws in words.items() if n in w}
    adeg = ac.space._deg
    hi = w.hi

    def d(word):
        out: Combo = {}
        letters = word[1:]
        pre = 0  # Σ_{j<i} |[aj]|
        run = 0  # Σ_{j<=i} |aj|
        for i, x in enumerate(letters):
            s = -_sgn(pre)
            for y, k in ac.diff(x).items():
                if y != a.unit:
                    add_term(out, ("b",) + letters[:i] + (y,) + letters[i + 1:], s * k)
            run += adeg[x]
            if i + 1 < len(letters):
                z = letters[i + 1]
                if adeg[x] + adeg[z] <= hi:
                    s2 = _sgn(i + run)
                    for y, k in a.mul(x, z).items():
                        if y != a.unit:
                            add_term(out, ("b",) + letters[:i] + (y,) + letters[i + 2:], s2 * k)
            pre += adeg[x] + 1
        return out

    def delta(word):
        return {(word[:i + 1], ("b",) + word[i + 1:]): 1 for i in range(len(word))}

    cx = ChainComplex(basis, d, w, exact_below=w.lo <= 0, exact_above=not gens and True, name=f"B({a.name})")
    two_red = list(ac.basis.get(0, ())) == [a.unit]
    return DGCoalgebra(cx, delta, BUNIT, cocommutative=False, two_reduced=two_red, name=f"B({a.name})")


def bar_twisting_chain(b: DGCoalgebra, a: DGAlgebra) -> TwistingChain:
    """The canonical π: BA ⇝ A, [x] ↦ x and longer words ↦ 0."""
    return TwistingChain(b, a, lambda word: {word[1]: 1} if len(word) == 2 else {}, name="π")


# -- the unit C -> BΩC ----------------------------------------------------------


def iterated_reduced(c: DGCoalgebra, x: Label, k: int) -> Dict[Tuple, object]:
    """Δ̄^{(k)}(x) as combinations of k-tuples (Δ̄^{(1)} = id)."""
    cur: Dict[Tuple, object] = {(x,): 1}
    for _ in range(k - 1):
        nxt: Dict[Tuple, object] = {}
        for tup, v in cur.items():
            for (a, b), u in c.reduced(tup[0]).items():
                add_term(nxt, (a, b) + tup[1:], u * v)
        cur = nxt
        if not cur:
            break
    return cur


def barcobar_unit(c: DGCoalgebra, w: Union[DegreeWindow, int], check: bool = True) -> Tuple[ChainMap, DGCoalgebra]:
    """F: C -> BΩC, F(x) = Σ_k [tx(1)|…|tx(k)] over iterated reduced coproducts.

    Returns the map and the bar-cobar coalgebra.  ``check`` verifies that F is
    a chain map and a coalgebra map on every basis element of the window.
    """
    w = _win(w)
    omega = cobar(c, DegreeWindow(0, max(w.hi - 1, 0)))
    bo = bar(omega, w)
    cc = c.complex

    def f(x):
        if x == c.coaug:
            return {BUNIT: 1}
        out: Combo = {}
        k = 1
        while True:
            terms = iterated_reduced(c, x, k)
            if not terms:
                break
            for tup, v in terms.items():
                add_term(out, ("b",) + tuple(("t", y) for y in tup), v)
            k += 1
        return out

    basis = {n: cc.basis[n] for n in cc.basis if n in w}
    src = ChainComplex(basis, {x: cc.diff(x) for xs in basis.values() for x in xs},
                       w, exact_below=cc.exact_below, exact_above=cc.exact_above and cc.window.hi <= w.hi,
                       check=False, name=cc.name)
    fmap = ChainMap(src, bo.complex, f, check=False, name="unit")
    if check:
        bad = fmap.violations()
        if bad:
            raise InvariantViolation(f"unit is not a chain map at {bad[0]!r}")
        bad = coalgebra_map_violations(fmap, c, bo)
        if bad:
            raise InvariantViolation(f"unit is not a coalgebra map at {bad[0]!r}")
    return fmap, bo


def coalgebra_map_violations(f: ChainMap, c: DGCoalgebra, d: DGCoalgebra, limit: int = 5) -> List[Label]:
    bad = []
    for x in f.source.labels():
        lhs: PairCombo = {}
        for y, v in f.image(x).items():
            add_into(lhs, d.delta(y), v)
        rhs: PairCombo = {}
        for (a, b), v in c.delta(x).items():
            fa, fb = f.image(a), f.image(b)
            for p, u in fa.items():
                for q, z in fb.items():
                    add_term(rhs, (p, q), u * z * v)
        add_into(lhs, rhs, -1)
        if lhs:
            bad.append(x)
            if len(bad) >= limit:
                break
    return bad


def unit_retraction(c: DGCoalgebra, bo: DGCoalgebra, src: ChainComplex) -> ChainMap:
    """p: BΩC -> C with p[tx] = x and every other word to 0; p∘F = id."""

    def p(word):
        if word == BUNIT:
            return {c.coaug: 1}
        if len(word) == 2 and len(word[1]) == 2:
            return {word[1][1]: 1}
        return {}

    return ChainMap(bo.complex, src, p, check=False, name="retraction")
