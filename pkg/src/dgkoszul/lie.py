"""Dg Lie algebras: free graded Lie algebras on Lyndon words, universal
enveloping algebras with PBW bases, Chevalley-Eilenberg coalgebras and the
primitive Lie algebra of a cobar construction.

Brackets are graded: [a, b] = -(-1)^{|a||b|} [b, a].  The free Lie algebra on
generators V is realised inside the tensor algebra T(V) as the span of graded
commutators; its basis is the standard bracketing of every Lyndon word plus
the square [w, w] of every Lyndon word of odd degree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .coalgebra import DGCoalgebra, is_two_reduced
from .errors import DegreeZeroGenerator, IncompleteDegree, InvariantViolation, NotReduced, NotTwoReduced, ParseError
from .graded import ChainComplex, Combo, DegreeWindow, DGAlgebra, Label, _pick
from .linalg import SparseMatrix, rref
from .report import Report
from .vec import add_into, add_term, clean, normalize

Word = Tuple[int, ...]
TV = Dict[Word, object]


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


# -- Lie algebras ----------------------------------------------------------


class DGLieAlgebra:
    """Dg Lie algebra on a windowed complex; bracket on basis pairs.

    Brackets landing above the window are dropped (truncation).
    """

    def __init__(self, complex: ChainComplex, bracket: Union[Mapping, Callable[[Label, Label], Combo]], *, name: str = ""):
        self.complex = complex
        self.name = name or complex.name
        self._cache: Dict = {}
        if callable(bracket):
            self._fun = bracket
        else:
            table = {k: clean(v) for k, v in bracket.items() if v}
            self._fun = lambda x, y: table.get((x, y), {})
        self.free: Optional["FreeLie"] = None
        self.presentation: Optional["FreeLiePresentation"] = None

    def bracket(self, x: Label, y: Label) -> Combo:
        key = (x, y)
        v = self._cache.get(key)
        if v is None:
            v = clean(self._fun(x, y))
            self._cache[key] = v
        return v

    def bracket_vec(self, u: Mapping, v: Mapping) -> Combo:
        out: Combo = {}
        for x, a in u.items():
            for y, b in v.items():
                add_into(out, self.bracket(x, y), a * b)
        return out

    @property
    def reduced(self) -> bool:
        return self.complex.dim(0) == 0 and all(n >= 1 for n in self.complex.basis)

    def labels(self) -> List[Label]:
        return list(self.complex.labels())

    def __repr__(self):
        return f"DGLieAlgebra({self.name})"


def validate_lie(l: DGLieAlgebra, budget: Optional[int] = None, w: Optional[DegreeWindow] = None) -> Report:
    """Antisymmetry, Jacobi, derivation property and d² = 0, on basis elements in window."""
    c = l.complex
    w = w or c.window
    rep = Report(f"lie {l.name}")
    deg = c.space._deg
    labels = [x for n in w for x in c.basis.get(n, ())]
    bad = c.d_squared_violations()
    rep.record("d-squared", not bad, f"{bad[:1]!r}")
    pairs = [(x, y) for x in labels for y in labels if deg[x] + deg[y] in w]
    for x, y in pairs:
        lhs = dict(l.bracket(x, y))
        add_into(lhs, l.bracket(y, x), _sgn(deg[x] * deg[y]))
        rep.record("antisymmetry", not lhs, f"({x!r}, {y!r})")
        for z in l.bracket(x, y):
            if z not in c:
                rep.fail("closure", f"[{x!r},{y!r}] contains {z!r}")
    for x, y in _pick(pairs, budget):
        if not c.known(deg[x] + deg[y] - 1):
            continue
        lhs = c.apply(l.bracket(x, y))
        add_into(lhs, l.bracket_vec(c.diff(x), {y: 1}), -1)
        add_into(lhs, l.bracket_vec({x: 1}, c.diff(y)), -_sgn(deg[x]))
        rep.record("derivation", not lhs, f"({x!r}, {y!r})")
    triples = [(x, y, z) for x, y in pairs for z in labels if deg[x] + deg[y] + deg[z] in w]
    for x, y, z in _pick(triples, budget):
        # [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
        lhs = l.bracket_vec({x: 1}, l.bracket(y, z))
        add_into(lhs, l.bracket_vec(l.bracket(x, y), {z: 1}), -1)
        add_into(lhs, l.bracket_vec({y: 1}, l.bracket(x, z)), -_sgn(deg[x] * deg[y]))
        rep.record("jacobi", not lhs, f"({x!r}, {y!r}, {z!r})")
    return rep


def lie_direct_sum(parts: Sequence[DGLieAlgebra], name: str = "") -> DGLieAlgebra:
    from .graded import direct_sum

    owner = {}
    for p in parts:
        for x in p.complex.labels():
            owner[x] = p
    cx = direct_sum([p.complex for p in parts], name=name)

    def br(x, y):
        p = owner[x]
        return p.bracket(x, y) if owner[y] is p else {}

    return DGLieAlgebra(cx, br, name=name)


def abelian_lie(gens: Sequence[Tuple[str, int]], name: str = "") -> DGLieAlgebra:
    basis: Dict[int, List[str]] = {}
    for g, d in gens:
        basis.setdefault(d, []).append(g)
    return DGLieAlgebra(ChainComplex(basis, {}, name=name), {}, name=name)


# -- presentations and Lie words -------------------------------------------

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


def parse_lie_word(text: str):
    """'[x,[x,y]]' -> ('x', ('x', 'y')); a bare name stays a string."""
    s = text.replace(" ", "")

    def parse(i):
        if i < len(s) and s[i] == "[":
            a, i = parse(i + 1)
            if i >= len(s) or s[i] != ",":
                raise ParseError(f"expected ',' in Lie word {text!r}")
            b, i = parse(i + 1)
            if i >= len(s) or s[i] != "]":
                raise ParseError(f"expected ']' in Lie word {text!r}")
            return (a, b), i + 1
        j = i
        while j < len(s) and s[j] not in "[],":
            j += 1
        if j == i:
            raise ParseError(f"empty name in Lie word {text!r}")
        return s[i:j], j

    tree, end = parse(0)
    if end != len(s):
        raise ParseError(f"trailing text in Lie word {text!r}")
    return tree


def format_lie_word(tree) -> str:
    if isinstance(tree, str):
        return tree
    return f"[{format_lie_word(tree[0])},{format_lie_word(tree[1])}]"


@dataclass
class FreeLiePresentation:
    """Generators (name, degree) and differentials of generators.

    ``differential`` maps a generator name to a combination of Lie words,
    given as strings in bracket notation: {"y": {"[x,x]": Fraction(1, 2)}}.
    """

    generators: List[Tuple[str, int]]
    differential: Dict[str, Dict[str, object]] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        self.generators = [(str(g), int(d)) for g, d in self.generators]
        seen = set()
        for g, d in self.generators:
            if not _NAME.match(g):
                raise ParseError(f"bad generator name {g!r}")
            if g in seen:
                raise InvariantViolation(f"duplicate generator {g!r}")
            seen.add(g)
            if d < 1:
                raise DegreeZeroGenerator(f"generator {g!r} has degree {d}")
        for g in self.differential:
            if g not in seen:
                raise InvariantViolation(f"differential given for unknown generator {g!r}")


class FreeLie:
    """The free graded Lie algebra on named generators, inside T(V), up to degree hi."""

    def __init__(self, gens: Sequence[Tuple[object, int]], hi: int):
        self.gens = [g for g, _ in gens]
        self.gdeg = [d for _, d in gens]
        self.names = [g if isinstance(g, str) else str(g) for g in self.gens]
        self.hi = hi
        for g, d in gens:
            if d < 1:
                raise DegreeZeroGenerator(f"generator {g!r} has degree {d}")
        self.basis: Dict[int, List[str]] = {}
        self.image: Dict[str, TV] = {}
        self.ldeg: Dict[str, int] = {}
        self.mdeg: Dict[str, Tuple[int, ...]] = {}
        self._solvers: Dict[Tuple[int, ...], Tuple[List[Word], List[str], List[List[Fraction]]]] = {}
        self._build()

    # words
    def wdeg(self, w: Word) -> int:
        return sum(self.gdeg[i] for i in w)

    def multideg(self, w: Word) -> Tuple[int, ...]:
        m = [0] * len(self.gens)
        for i in w:
            m[i] += 1
        return tuple(m)

    def _lyndon(self) -> List[Word]:
        """Lyndon words (Duval) over the ordered generators with degree <= hi."""
        k = len(self.gens)
        if not k:
            return []
        maxlen = self.hi // min(self.gdeg) if self.hi > 0 else 0
        out = []
        w = [-1]
        while w:
            w[-1] += 1
            word = tuple(w)
            if self.wdeg(word) <= self.hi:
                out.append(word)
            m = len(w)
            while len(w) < maxlen:
                w.append(w[len(w) - m])
            while w and w[-1] == k - 1:
                w.pop()
        return out

    def _standard(self, w: Word) -> Tuple[Word, Word]:
        for i in range(1, len(w)):
            v = w[i:]
            if _is_lyndon(v):
                return w[:i], v
        raise AssertionError("not a Lyndon word")

    def _build(self):
        words = sorted(self._lyndon(), key=lambda w: (self.wdeg(w), len(w), w))
        label_of: Dict[Word, str] = {}
        for w in words:
            if len(w) == 1:
                lbl = self.names[w[0]]
                img = {w: 1}
            else:
                u, v = self._standard(w)
                lbl = f"[{label_of[u]},{label_of[v]}]"
                img = self.commutator(self.image[label_of[u]], self.wdeg(u), self.image[label_of[v]], self.wdeg(v))
            label_of[w] = lbl
            self._add(lbl, img, self.wdeg(w), self.multideg(w))
        for w in words:
            d = self.wdeg(w)
            if d % 2 and 2 * d <= self.hi:
                lbl = f"[{label_of[w]},{label_of[w]}]"
                img = self.commutator(self.image[label_of[w]], d, self.image[label_of[w]], d)
                self._add(lbl, img, 2 * d, tuple(2 * x for x in self.multideg(w)))

    def _add(self, lbl, img, d, md):
        self.basis.setdefault(d, []).append(lbl)
        self.image[lbl] = img
        self.ldeg[lbl] = d
        self.mdeg[lbl] = md

    # tensor-algebra arithmetic
    def mult(self, a: TV, b: TV) -> TV:
        out: TV = {}
        for u, x in a.items():
            for v, y in b.items():
                add_term(out, u + v, x * y)
        return out

    def commutator(self, a: TV, da: int, b: TV, db: int) -> TV:
        out = self.mult(a, b)
        add_into(out, self.mult(b, a), -_sgn(da * db))
        return out

    def _solver(self, md):
        s = self._solvers.get(md)
        if s is None:
            labels = [l for l, m in self.mdeg.items() if m == md]
            rows: Dict[Word, int] = {}
            cols = []
            for l in labels:
                col = {}
                for w, c in self.image[l].items():
                    i = rows.setdefault(w, len(rows))
                    col[i] = c
                cols.append(col)
            words = list(rows)
            if labels:
                mt = SparseMatrix.from_columns(len(rows), cols).transpose()
                _, piv, r = rref(mt)
                if r != len(labels):
                    raise InvariantViolation(f"Lie basis is dependent in multidegree {md}")
                sel = [words[i] for i in piv]
                sq = [[Fraction(self.image[l].get(w, 0)) for l in labels] for w in sel]
                inv = _invert(sq)
            else:
                sel, inv = [], []
            s = (sel, labels, inv)
            self._solvers[md] = s
        return s

    def coordinates(self, v: TV) -> Combo:
        """Express a Lie element of T(V) in the Lie basis; raises if v is not a Lie element."""
        by_md: Dict[Tuple[int, ...], TV] = {}
        for w, c in v.items():
            by_md.setdefault(self.multideg(w), {})[w] = c
        out: Combo = {}
        for md, part in by_md.items():
            if sum(self.gdeg[i] * k for i, k in enumerate(md)) > self.hi:
                raise IncompleteDegree("Lie element above the computed window")
            sel, labels, inv = self._solver(md)
            rhs = [Fraction(part.get(w, 0)) for w in sel]
            coeffs = [sum(inv[i][j] * rhs[j] for j in range(len(sel))) for i in range(len(labels))]
            back: TV = {}
            for l, c in zip(labels, coeffs):
                if c:
                    out[l] = normalize(c)
                    add_into(back, self.image[l], c)
            add_into(back, part, -1)
            if back:
                raise InvariantViolation("element of T(V) is not in the free Lie algebra")
        return out

    def eval_word(self, tree) -> TV:
        if isinstance(tree, str):
            if tree not in self.names:
                raise InvariantViolation(f"unknown generator {tree!r}")
            return {(self.names.index(tree),): 1}
        a, b = self.eval_word(tree[0]), self.eval_word(tree[1])
        da = self.wdeg(next(iter(a))) if a else 0
        db = self.wdeg(next(iter(b))) if b else 0
        return self.commutator(a, da, b, db)

    def derivation(self, dgen: Sequence[TV], v: TV) -> TV:
        """Extend d from generators to T(V) as a derivation of degree -1."""
        out: TV = {}
        for w, c in v.items():
            pre = 0
            for i, g in enumerate(w):
                dg = dgen[g]
                if dg:
                    s = _sgn(pre) * c
                    head, tail = w[:i], w[i + 1:]
                    for u, x in dg.items():
                        add_term(out, head + u + tail, s * x)
                pre += self.gdeg[g]
        return out


def _is_lyndon(w: Word) -> bool:
    n = len(w)
    return all(w < w[i:] + w[:i] for i in range(1, n)) if n > 1 else n == 1


def _invert(m: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(m)
    a = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def free_graded_lie(p: FreeLiePresentation, w: Union[DegreeWindow, int]) -> DGLieAlgebra:
    """Free graded Lie algebra on the presentation, with d extended as a derivation."""
    if isinstance(w, int):
        w = DegreeWindow(0, w)
    fl = FreeLie(p.generators, w.hi)
    dgen: List[TV] = []
    for g, d in p.generators:
        v: TV = {}
        for word, c in p.differential.get(g, {}).items():
            tree = parse_lie_word(word) if isinstance(word, str) else word
            img = fl.eval_word(tree)
            if img and fl.wdeg(next(iter(img))) != d - 1:
                raise InvariantViolation(f"d({g}) has a term {word!r} of the wrong degree")
            add_into(v, img, c)
        dgen.append(v)
    return _free_lie_algebra(fl, dgen, w, p.name, p)


def _free_lie_algebra(fl: FreeLie, dgen, w: DegreeWindow, name: str, pres=None) -> DGLieAlgebra:
    basis = {n: xs for n, xs in fl.basis.items() if n in w}

    def d(lbl):
        if not any(dgen):
            return {}
        return fl.coordinates(fl.derivation(dgen, fl.image[lbl]))

    finite = len(fl.gens) <= 1
    cx = ChainComplex(basis, d, w, exact_below=w.lo <= 1, exact_above=finite, name=name)

    def br(x, y):
        dx, dy = fl.ldeg[x], fl.ldeg[y]
        if dx + dy > w.hi:
            return {}
        return fl.coordinates(fl.commutator(fl.image[x], dx, fl.image[y], dy))

    l = DGLieAlgebra(cx, br, name=name)
    l.free = fl
    l.free_dgen = dgen
    l.presentation = pres
    return l


# -- universal enveloping algebra --------------------------------------------


class _PBW:
    """Normal ordering of words in a Lie basis (straightening)."""

    def __init__(self, l: DGLieAlgebra, hi: int):
        self.l = l
        self.hi = hi
        labels = sorted(l.complex.labels(), key=lambda x: (l.complex.degree(x), l.complex.index(l.complex.degree(x))[x]))
        self.order = {x: i for i, x in enumerate(labels)}
        self.labels = labels
        self.deg = l.complex.space._deg
        self._memo: Dict[Tuple[int, ...], Dict[Tuple[int, ...], object]] = {}

    def normal(self, word: Tuple[int, ...]) -> Dict[Tuple[int, ...], object]:
        """word in basis indices -> combination of non-decreasing PBW words."""
        hit = self._memo.get(word)
        if hit is not None:
            return hit
        labels, deg = self.labels, self.deg
        out: Dict[Tuple[int, ...], object] = {}
        for i in range(len(word) - 1):
            a, b = word[i], word[i + 1]
            if a > b or (a == b and deg[labels[a]] % 2):
                la, lb = labels[a], labels[b]
                if a > b:
                    sw = word[:i] + (b, a) + word[i + 2:]
                    add_into(out, self.normal(sw), _sgn(deg[la] * deg[lb]))
                    coeff = 1
                else:
                    coeff = Fraction(1, 2)
                for z, c in self.l.bracket(la, lb).items():
                    nw = word[:i] + (self.order[z],) + word[i + 2:]
                    add_into(out, self.normal(nw), coeff * c)
                break
        else:
            out = {word: 1}
        out = clean(out)
        self._memo[word] = out
        return out


def _pbw_label(labels, word) -> str:
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        k = j - i
        parts.append(labels[word[i]] + (f"^{k}" if k > 1 else ""))
        i = j
    return "·".join(parts)


def _monomials(degs: Sequence[int], hi: int, allow_repeat: Callable[[int], bool]):
    """Non-decreasing index tuples with total degree <= hi (repeats only where allowed)."""
    out = [()]
    n = len(degs)

    def rec(start, word, tot):
        for i in range(start, n):
            d = tot + degs[i]
            if d > hi:
                continue
            nw = word + (i,)
            out.append(nw)
            rec(i if allow_repeat(i) else i + 1, nw, d)

    rec(0, (), 0)
    return out


def uea(l: DGLieAlgebra, w: Union[DegreeWindow, int]) -> DGAlgebra:
    """Universal enveloping algebra on the PBW basis within the window."""
    if isinstance(w, int):
        w = DegreeWindow(0, w)
    if not l.reduced:
        raise NotReduced(f"{l.name} has elements in degree <= 0")
    if not l.complex.known(w.hi) and w.hi > l.complex.window.hi:
        raise IncompleteDegree(f"Lie algebra known only through degree {l.complex.window.hi}")
    pbw = _PBW(l, w.hi)
    degs = [pbw.deg[x] for x in pbw.labels]
    words = _monomials(degs, w.hi, lambda i: degs[i] % 2 == 0)
    lab = {}
    basis: Dict[int, List[str]] = {}
    for word in sorted(words, key=lambda t: (sum(degs[i] for i in t), len(t), t)):
        s = _pbw_label(pbw.labels, word)
        lab[word] = s
        basis.setdefault(sum(degs[i] for i in word), []).append(s)
    word_of = {s: word for word, s in lab.items()}
    ldiff = l.complex

    def to_labels(comb):
        return {lab[wd]: c for wd, c in comb.items() if sum(degs[i] for i in wd) <= w.hi}

    def d(s):
        word = word_of[s]
        out: Combo = {}
        pre = 0
        for i, a in enumerate(word):
            la = pbw.labels[a]
            for z, c in ldiff.diff(la).items():
                nw = word[:i] + (pbw.order[z],) + word[i + 1:]
                add_into(out, to_labels(pbw.normal(nw)), _sgn(pre) * c)
            pre += degs[a]
        return out

    def mul(x, y):
        wx, wy = word_of[x], word_of[y]
        if sum(degs[i] for i in wx + wy) > w.hi:
            return {}
        return to_labels(pbw.normal(wx + wy))

    finite = l.complex.exact_above and all(deg % 2 for deg in degs)
    cx = ChainComplex(basis, d, w, exact_below=True, exact_above=finite and sum(degs) <= w.hi, name=f"U({l.name})")
    a = DGAlgebra(cx, "1", mul, augmentation={"1": 1}, name=f"U({l.name})")
    a.pbw = pbw
    a.pbw_words = word_of
    return a


# -- Chevalley-Eilenberg coalgebra -------------------------------------------


def _koszul_sort(items: List[int], degs: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Sort factor indices with the Koszul sign; sign 0 when an odd factor repeats."""
    a = list(items)
    sign = 1
    for i in range(1, len(a)):
        j = i
        while j > 0 and a[j - 1] > a[j]:
            if degs[a[j - 1]] % 2 and degs[a[j]] % 2:
                sign = -sign
            a[j - 1], a[j] = a[j], a[j - 1]
            j -= 1
    for i in range(len(a) - 1):
        if a[i] == a[i + 1] and degs[a[i]] % 2:
            return 0, ()
    return sign, tuple(a)


def chevalley_eilenberg(l: DGLieAlgebra, w: Union[DegreeWindow, int]) -> DGCoalgebra:
    """Cocommutative coalgebra Sym(sL) with the CE differential.

    The coproduct is the unshuffle coproduct.  The differential is the
    coderivation with components sx ↦ -s(dx) and sx·sy ↦ (-1)^{|x|} s[x,y].
    """
    if isinstance(w, int):
        w = DegreeWindow(0, w)
    if not l.reduced:
        raise NotReduced(f"{l.name} has elements in degree <= 0")
    lc = l.complex
    if w.hi - 1 > lc.window.hi and not lc.exact_above:
        raise IncompleteDegree(f"Lie algebra known only through degree {lc.window.hi}")
    lie_labels = sorted(lc.labels(), key=lambda x: (lc.degree(x), lc.index(lc.degree(x))[x]))
    lie_labels = [x for x in lie_labels if lc.degree(x) + 1 <= w.hi]
    order = {x: i for i, x in enumerate(lie_labels)}
    sdeg = [lc.degree(x) + 1 for x in lie_labels]
    words = _monomials(sdeg, w.hi, lambda i: sdeg[i] % 2 == 0)

    def label(word):
        if not word:
            return "1"
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            parts.append("s" + lie_labels[word[i]] + (f"^{j - i}" if j - i > 1 else ""))
            i = j
        return "·".join(parts)

    lab = {}
    basis: Dict[int, List[str]] = {}
    for word in sorted(words, key=lambda t: (sum(sdeg[i] for i in t), len(t), t)):
        s = label(word)
        lab[word] = s
        basis.setdefault(sum(sdeg[i] for i in word), []).append(s)
    word_of = {s: wd for wd, s in lab.items()}

    def splits(word):
        """All ordered splittings (I, J) of the factor list, with Koszul signs."""
        k = len(word)
        for r in range(k + 1):
            for I in combinations(range(k), r):
                Iset = set(I)
                J = [i for i in range(k) if i not in Iset]
                # sign of the permutation word -> word[I] + word[J]
                sign = 1
                for a in I:
                    for b in J:
                        if b < a and sdeg[word[a]] % 2 and sdeg[word[b]] % 2:
                            sign = -sign
                yield sign, tuple(word[i] for i in I), tuple(word[j] for j in J)

    def delta(s):
        out = {}
        for sign, a, b in splits(word_of[s]):
            add_term(out, (lab[a], lab[b]), sign)
        return out

    def q(part) -> Dict[int, object]:
        """The two coderivation components, into sL (indices)."""
        if len(part) == 1:
            x = lie_labels[part[0]]
            return {order[z]: -c for z, c in lc.diff(x).items() if z in order}
        if len(part) == 2:
            x, y = lie_labels[part[0]], lie_labels[part[1]]
            s = _sgn(lc.degree(x))
            return {order[z]: s * c for z, c in l.bracket(x, y).items() if z in order}
        return {}

    def d(s):
        out: Combo = {}
        for sign, a, b in splits(word_of[s]):
            if len(a) not in (1, 2):
                continue
            for z, c in q(a).items():
                sg, nw = _koszul_sort([z] + list(b), sdeg)
                if sg:
                    add_term(out, lab[nw], sign * sg * c)
        return out

    cx = ChainComplex(basis, d, w, exact_below=True,
                      exact_above=lc.exact_above and all(x % 2 for x in sdeg) and sum(sdeg) <= w.hi,
                      name=f"CE({l.name})")
    c = DGCoalgebra(cx, delta, "1", cocommutative=True, two_reduced=True, name=f"CE({l.name})")
    c.ce_words = word_of
    c.ce_lie_labels = lie_labels
    return c


# -- primitive Lie algebra of the cobar construction --------------------------


def cobar_generator(c: Label) -> str:
    return f"t{c}" if isinstance(c, str) else f"t{c!r}"


def cobar_lie(c: DGCoalgebra, w: Union[DegreeWindow, int]) -> DGLieAlgebra:
    """Free Lie algebra on s^{-1}C̄ with the cobar differential restricted to it.

    d(tc) = -t(dc) - Σ (-1)^{|c0|} tc0·tc1 over the reduced coproduct; for a
    cocommutative coalgebra this is a Lie element.
    """
    if isinstance(w, int):
        w = DegreeWindow(0, w)
    if not is_two_reduced(c):
        raise NotTwoReduced(f"{c.name} is not 2-reduced")
    cc = c.complex
    if w.hi + 1 > cc.window.hi and not cc.exact_above:
        raise IncompleteDegree(f"coalgebra known only through degree {cc.window.hi}")
    gens = [(x, cc.degree(x) - 1) for n in sorted(cc.basis) for x in c.reduced_labels(n) if n - 1 <= w.hi]
    fl = FreeLie([(cobar_generator(x), d) for x, d in gens], w.hi)
    idx = {x: i for i, (x, _) in enumerate(gens)}
    dgen: List[TV] = []
    for x, _ in gens:
        v: TV = {}
        for y, k in cc.diff(x).items():
            if y in idx:
                add_term(v, (idx[y],), -k)
        for (a, b), k in c.reduced(x).items():
            add_term(v, (idx[a], idx[b]), -_sgn(cc.degree(a)) * k)
        dgen.append(v)
    l = _free_lie_algebra(fl, dgen, w, f"L({c.name})")
    l.cobar_generators = {cobar_generator(x): x for x, _ in gens}
    return l
