"""Finite simplicial sets, normalised chains, the Alexander-Whitney coproduct
and the shuffle map.

Any simplex, degenerate or not, is written (y, σ) with y nondegenerate of
dimension m and σ a nondecreasing surjection [n] -> [m] stored as a tuple of
length n+1; y is nondegenerate exactly when σ is the identity.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple, Union

from .coalgebra import DGCoalgebra
from .errors import InvariantViolation, NotReduced, ParseError
from .graded import ChainComplex, ChainMap, Combo, DegreeWindow, tensor
from .report import Report
from .vec import add_term

Simplex = Tuple[Hashable, Tuple[int, ...]]


def _ident(n: int) -> Tuple[int, ...]:
    return tuple(range(n + 1))


def degeneracy(collapse: Sequence[int], n: int) -> Tuple[int, ...]:
    """The surjection out of [n] with σ(j) = σ(j+1) exactly for j in ``collapse``."""
    out, v = [0], 0
    cs = set(collapse)
    for j in range(n):
        if j not in cs:
            v += 1
        out.append(v)
    return tuple(out)


class FiniteSimplicialSet:
    """Nondegenerate simplices by dimension and their faces.

    ``faces[x]`` lists d_0 x, ..., d_n x, each either a nondegenerate label or
    a pair (label, σ) describing a degenerate simplex.
    """

    def __init__(self, simplices: Mapping[int, Sequence[Hashable]], faces: Mapping[Hashable, Sequence], name: str = "", check: bool = True):
        self.simplices = {n: list(xs) for n, xs in sorted(simplices.items()) if xs}
        self.name = name
        self.dim: Dict[Hashable, int] = {}
        for n, xs in self.simplices.items():
            for x in xs:
                if x in self.dim:
                    raise InvariantViolation(f"duplicate simplex {x!r}")
                self.dim[x] = n
        self._faces: Dict[Hashable, List[Simplex]] = {}
        for x, n in self.dim.items():
            fs = faces.get(x, ()) if n else ()
            if len(fs) != (n + 1 if n else 0):
                raise InvariantViolation(f"simplex {x!r} of dimension {n} needs {n + 1} faces")
            norm = []
            for f in fs:
                plain = not isinstance(f, tuple) or f in self.dim
                if (f if plain else f[0]) not in self.dim:
                    raise InvariantViolation(f"face {f!r} of {x!r} is not a simplex")
                s = (f, _ident(self.dim[f])) if plain else (f[0], tuple(f[1]))
                if len(s[1]) != n or (s[1] and s[1][-1] != self.dim[s[0]]):
                    raise InvariantViolation(f"face {f!r} of {x!r} has the wrong dimension")
                norm.append(s)
            self._faces[x] = norm
        if check:
            rep = self.validate()
            rep.raise_if_failed()

    def labels(self) -> List[Hashable]:
        return [x for xs in self.simplices.values() for x in xs]

    def face(self, i: int, s: Simplex) -> Simplex:
        """d_i of an arbitrary simplex (y, σ)."""
        y, sigma = s
        tau = sigma[:i] + sigma[i + 1:]
        m = self.dim[y]
        if len(set(tau)) == m + 1:
            return (y, tau)
        v = sigma[i]
        z, rho = self._faces[y][v]
        lowered = tuple(t - 1 if t > v else t for t in tau)
        return (z, tuple(rho[t] for t in lowered))

    def faces_of(self, s: Simplex) -> List[Simplex]:
        return [self.face(i, s) for i in range(len(s[1]))] if len(s[1]) > 1 else []

    def is_degenerate(self, s: Simplex) -> bool:
        return len(s[1]) != self.dim[s[0]] + 1

    def validate(self) -> Report:
        """Simplicial identities d_i d_j = d_{j-1} d_i (i < j) on every nondegenerate simplex."""
        rep = Report(f"simplicial set {self.name}")
        for x, n in self.dim.items():
            s = (x, _ident(n))
            for j in range(n + 1):
                for i in range(j):
                    if n < 2:
                        continue
                    lhs = self.face(i, self.face(j, s))
                    rhs = self.face(j - 1, self.face(i, s))
                    rep.record("simplicial-identity", lhs == rhs, f"d{i}d{j} on {x!r}")
        return rep

    def is_reduced(self, r: int = 1) -> bool:
        """One vertex and no nondegenerate simplices in dimensions 1..r-1."""
        return len(self.simplices.get(0, ())) == 1 and all(not self.simplices.get(k) for k in range(1, r))

    def __repr__(self):
        return f"FiniteSimplicialSet({self.name}; " + ", ".join(f"{n}:{len(v)}" for n, v in self.simplices.items()) + ")"


# -- examples ----------------------------------------------------------------


def point() -> FiniteSimplicialSet:
    return FiniteSimplicialSet({0: ["*"]}, {}, name="pt")


def standard_simplex(n: int) -> FiniteSimplicialSet:
    """Δ^n: nondegenerate simplices are the nonempty subsets of {0..n}, named by their vertices."""
    simp: Dict[int, List[str]] = {}
    faces = {}
    for k in range(n + 1):
        for vs in combinations(range(n + 1), k + 1):
            name = "".join(str(v) for v in vs) if n < 10 else ",".join(map(str, vs))
            simp.setdefault(k, []).append(name)
            if k:
                faces[name] = [("".join(str(v) for v in vs[:i] + vs[i + 1:]) if n < 10
                                else ",".join(map(str, vs[:i] + vs[i + 1:]))) for i in range(k + 1)]
    return FiniteSimplicialSet(simp, faces, name=f"Δ{n}")


def sphere_quotient(n: int) -> FiniteSimplicialSet:
    """Δ^n/∂Δ^n: one vertex and one n-simplex whose faces are all degenerate."""
    if n < 1:
        raise InvariantViolation("the sphere model needs n >= 1")
    deg = (("v", tuple(0 for _ in range(n))))
    return FiniteSimplicialSet({0: ["v"], n: ["σ"]}, {"σ": [deg] * (n + 1)}, name=f"Δ{n}/∂Δ{n}")


def product(x: FiniteSimplicialSet, y: FiniteSimplicialSet) -> FiniteSimplicialSet:
    """X × Y with nondegenerate simplices the pairs ((a, σ), (b, τ)) sharing no collapse."""
    simp: Dict[int, List] = {}
    for p, xs in x.simplices.items():
        for q, ys in y.simplices.items():
            for n in range(max(p, q), p + q + 1):
                for dx in combinations(range(n), n - p):
                    rest = [j for j in range(n) if j not in dx]
                    for dy in combinations(rest, n - q):
                        s1, s2 = degeneracy(dx, n), degeneracy(dy, n)
                        for a in xs:
                            for b in ys:
                                simp.setdefault(n, []).append(("×", (a, s1), (b, s2)))
    faces = {}
    for n, zs in simp.items():
        if not n:
            continue
        for z in zs:
            _, sa, sb = z
            faces[z] = [_normal_pair(x.face(i, sa), y.face(i, sb)) for i in range(n + 1)]
    return FiniteSimplicialSet(simp, faces, name=f"{x.name}×{y.name}", check=False)


def _normal_pair(sa: Simplex, sb: Simplex):
    """Write a possibly degenerate pair as (nondegenerate pair, common surjection)."""
    (a, s), (b, t) = sa, sb
    n = len(s) - 1
    common = [j for j in range(n) if s[j] == s[j + 1] and t[j] == t[j + 1]]
    if not common:
        return ("×", sa, sb)
    keep = [j for j in range(n + 1) if j - 1 not in common]
    s2, t2 = tuple(s[j] for j in keep), tuple(t[j] for j in keep)
    return (("×", (a, s2), (b, t2)), degeneracy(common, n))


# -- chains --------------------------------------------------------------------


def normalized_chains(x: FiniteSimplicialSet) -> ChainComplex:
    """Nondegenerate simplices with d = Σ (-1)^i d_i, degenerate faces dropped."""
    d = {}
    for s, n in x.dim.items():
        out: Combo = {}
        for i, f in enumerate(x.faces_of((s, _ident(n)))):
            if not x.is_degenerate(f):
                add_term(out, f[0], -1 if i % 2 else 1)
        d[s] = out
    return ChainComplex(x.simplices, d, name=f"N({x.name})")


def _front(x: FiniteSimplicialSet, s: Simplex, k: int) -> Simplex:
    for i in range(len(s[1]) - 1, k, -1):
        s = x.face(i, s)
    return s


def _back(x: FiniteSimplicialSet, s: Simplex, k: int) -> Simplex:
    for _ in range(k):
        s = x.face(0, s)
    return s


def aw_coalgebra(x: FiniteSimplicialSet) -> DGCoalgebra:
    """Normalised chains with Δσ = Σ_k (front k-face) ⊗ (back (n-k)-face), no extra sign."""
    if not x.is_reduced(1):
        raise NotReduced(f"{x.name} has {len(x.simplices.get(0, ()))} vertices")
    cx = normalized_chains(x)
    v = x.simplices[0][0]

    def delta(sigma):
        n = x.dim[sigma]
        s = (sigma, _ident(n))
        out = {}
        for k in range(n + 1):
            f, b = _front(x, s, k), _back(x, s, k)
            if not x.is_degenerate(f) and not x.is_degenerate(b):
                out[(f[0], b[0])] = out.get((f[0], b[0]), 0) + 1
        return out

    return DGCoalgebra(cx, delta, v, cocommutative=False, two_reduced=x.is_reduced(2), name=f"N({x.name})")


def shuffle_map(x: FiniteSimplicialSet, y: FiniteSimplicialSet, w: Optional[Union[DegreeWindow, int]] = None,
                xy: Optional[FiniteSimplicialSet] = None, check: bool = True) -> ChainMap:
    """∇(a⊗b) = Σ_{(μ,ν)} sign(μ,ν) (s_ν a, s_μ b) over (p,q)-shuffles."""
    if isinstance(w, int):
        w = DegreeWindow(0, w)
    xy = xy or product(x, y)
    src = tensor(normalized_chains(x), normalized_chains(y), w)
    tgt = normalized_chains(xy)

    def img(lbl):
        _, a, b = lbl
        p, q = x.dim[a], y.dim[b]
        n = p + q
        out: Combo = {}
        for mu in combinations(range(n), p):
            nu = [j for j in range(n) if j not in mu]
            sign = -1 if (sum(mu) - p * (p - 1) // 2) % 2 else 1
            z = ("×", (a, degeneracy(nu, n)), (b, degeneracy(mu, n)))
            add_term(out, z, sign)
        return out

    return ChainMap(src, tgt, img, check=check, name="∇")


# -- text format -------------------------------------------------------------------


def parse_facets(text: str) -> FiniteSimplicialSet:
    """Lines 'name dim : f0 f1 ... fn'; a degenerate face is written 'y@σ', with σ
    its surjection as comma-separated integers (e.g. 'v@0,0').  '#' starts a comment."""
    simp: Dict[int, List[str]] = {}
    faces: Dict[str, list] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, tail = line.partition(":")
        parts = head.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'name dim : faces'")
        name, dim = parts
        try:
            n = int(dim)
        except ValueError:
            raise ParseError(f"line {lineno}: bad dimension {dim!r}") from None
        simp.setdefault(n, []).append(name)
        fs = []
        for tok in tail.split():
            if "@" in tok:
                y, _, sig = tok.partition("@")
                try:
                    fs.append((y, tuple(int(t) for t in sig.split(","))))
                except ValueError:
                    raise ParseError(f"line {lineno}: bad surjection {sig!r}") from None
            else:
                fs.append(tok)
        faces[name] = fs
    return FiniteSimplicialSet(simp, faces)
