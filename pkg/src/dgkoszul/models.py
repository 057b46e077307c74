"""Catalog of Lie models Λ_X and coalgebra models C_X = CE(Λ_X) for simply
connected spaces, with combinators and a file format.

A model is either a single free Lie presentation or a product of models, in
which case the Lie model is the direct sum of the factors.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple, Union

from .coalgebra import DGCoalgebra
from .errors import InvariantViolation, ModelError, ParseError
from .graded import DegreeWindow, homology
from .lie import DGLieAlgebra, FreeLiePresentation, chevalley_eilenberg, free_graded_lie, lie_direct_sum
from .report import Report
from . import serialize


def _win(w) -> DegreeWindow:
    return DegreeWindow(0, w) if isinstance(w, int) else w


class SpaceModel:
    def __init__(self, name: str, presentation: Optional[FreeLiePresentation] = None,
                 factors: Tuple["SpaceModel", ...] = (), expected_betti: Optional[Dict[int, int]] = None,
                 expected_whitehead: Optional[Dict[int, int]] = None):
        if (presentation is None) == (not factors):
            raise ModelError("a model is either a presentation or a product of factors")
        self.name = name
        self.presentation = presentation
        self.factors = tuple(factors)
        self.expected_betti = dict(expected_betti or {})
        self.expected_whitehead = None if expected_whitehead is None else dict(expected_whitehead)
        self._lie: Dict[int, DGLieAlgebra] = {}
        self._ce: Dict[int, DGCoalgebra] = {}

    # Lie model through degree hi; the coalgebra needs the Lie model one degree lower
    def lie_model(self, hi: int) -> DGLieAlgebra:
        l = self._lie.get(hi)
        if l is None:
            if self.presentation is not None:
                l = free_graded_lie(self.presentation, DegreeWindow(0, hi))
            else:
                l = lie_direct_sum([f.lie_model(hi) for f in self.factors], name=self.name)
            self._lie[hi] = l
        return l

    def coalgebra_model(self, hi: int) -> DGCoalgebra:
        """C_X through degree hi."""
        c = self._ce.get(hi)
        if c is None:
            c = chevalley_eilenberg(self.lie_model(max(hi - 1, 1)), DegreeWindow(0, hi))
            c.name = f"C({self.name})"
            self._ce[hi] = c
        return c

    def generator_degrees(self) -> List[int]:
        if self.presentation is not None:
            return [d for _, d in self.presentation.generators]
        return [d for f in self.factors for d in f.generator_degrees()]

    def validate(self, hi: int = 8) -> Report:
        """Betti numbers against H(C_X) and Whitehead dims against H(Λ_X) in [0, hi]."""
        rep = Report(f"model {self.name}")
        c = self.coalgebra_model(hi + 1)
        betti = homology(c.complex, DegreeWindow(0, hi)).dims()
        want = {n: self.expected_betti.get(n, 0) for n in range(hi + 1)}
        rep.record("betti", betti == want, f"H(C_X) = {betti}, declared {want}")
        if self.expected_whitehead is not None:
            l = self.lie_model(hi + 1)
            wh = homology(l.complex, DegreeWindow(1, hi)).dims()
            want = {n: self.expected_whitehead.get(n, 0) for n in range(1, hi + 1)}
            rep.record("whitehead", wh == want, f"H(Λ_X) = {wh}, declared {want}")
        return rep

    def whitehead_dims(self, hi: int) -> Dict[int, int]:
        return homology(self.lie_model(hi + 1).complex, DegreeWindow(1, hi)).dims()

    def __eq__(self, other):
        if not isinstance(other, SpaceModel):
            return NotImplemented
        return model_record(self) == model_record(other)

    def __repr__(self):
        return f"SpaceModel({self.name})"


# -- oracles ------------------------------------------------------------------


def free_lie_dims(gen_degrees: List[int], hi: int) -> Dict[int, int]:
    """Dimensions of the free graded Lie algebra, from the PBW product formula.

    T(V) has Hilbert series 1/(1 - Σ t^{|g|}), and equals
    Π_{d odd} (1+t^d)^{ℓ_d} · Π_{d even} (1-t^d)^{-ℓ_d}; solve for ℓ_d degree by degree.
    """
    tv = [0] * (hi + 1)
    tv[0] = 1
    for n in range(1, hi + 1):
        tv[n] = sum(tv[n - g] for g in gen_degrees if g <= n)
    ell = {}
    series = [1] + [0] * hi
    for d in range(1, hi + 1):
        ell[d] = tv[d] - series[d]
        for _ in range(ell[d]):
            series = _times_factor(series, d, hi)
    return ell


def _times_factor(series: List[int], d: int, hi: int) -> List[int]:
    """Multiply by (1+t^d) for odd d, by 1/(1-t^d) for even d."""
    out = list(series)
    if d % 2:
        for n in range(hi, d - 1, -1):
            out[n] += series[n - d]
    else:
        for n in range(d, hi + 1):
            out[n] += out[n - d]
    return out


def _kunneth(a: Dict[int, int], b: Dict[int, int]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for p, x in a.items():
        for q, y in b.items():
            if x * y:
                out[p + q] = out.get(p + q, 0) + x * y
    return out


def _add(a: Optional[Dict[int, int]], b: Optional[Dict[int, int]]) -> Optional[Dict[int, int]]:
    if a is None or b is None:
        return None
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


# -- catalog ------------------------------------------------------------------


def sphere_model(n: int) -> SpaceModel:
    """Free Lie algebra on one generator of degree n-1."""
    if n < 2:
        raise ModelError(f"S^{n} is not simply connected")
    pres = FreeLiePresentation([("x", n - 1)], {}, name=f"S{n}")
    wh = {n - 1: 1}
    if n % 2 == 0:
        wh[2 * n - 2] = 1
    return SpaceModel(f"S{n}", pres, expected_betti={0: 1, n: 1}, expected_whitehead=wh)


def cpn_model(n: int) -> SpaceModel:
    """Generators x1, x3, ..., x(2n-1) with d x(2k-1) = Σ_{i+j=k} [x(2i-1), x(2j-1)]."""
    if n < 1:
        raise ModelError("ℂP^n needs n >= 1")
    if n == 1:
        m = sphere_model(2)
        m.name = "CP1"
        return m
    gens = [(f"x{2 * k - 1}", 2 * k - 1) for k in range(1, n + 1)]
    diff = {}
    for k in range(2, n + 1):
        terms: Dict[str, int] = {}
        for i in range(1, k):
            w = f"[x{2 * i - 1},x{2 * (k - i) - 1}]"
            terms[w] = terms.get(w, 0) + 1
        diff[f"x{2 * k - 1}"] = terms
    pres = FreeLiePresentation(gens, diff, name=f"CP{n}")
    return SpaceModel(f"CP{n}", pres, expected_betti={2 * k: 1 for k in range(n + 1)},
                      expected_whitehead={1: 1, 2 * n: 1})


def point_model() -> SpaceModel:
    return SpaceModel("pt", FreeLiePresentation([], {}, name="pt"), expected_betti={0: 1}, expected_whitehead={})


def product_model(a: SpaceModel, b: SpaceModel) -> SpaceModel:
    """X × Y: direct sum of Lie models; Betti numbers by Künneth."""
    if not a.generator_degrees():
        return b
    if not b.generator_degrees():
        return a
    b = _renamed(b, _all_generators(a))
    return SpaceModel(f"{a.name}x{b.name}", factors=(a, b),
                      expected_betti=_kunneth(a.expected_betti, b.expected_betti),
                      expected_whitehead=_add(a.expected_whitehead, b.expected_whitehead))


def wedge_model(a: SpaceModel, b: SpaceModel) -> SpaceModel:
    """X ∨ Y: free product of Lie models (single presentations only)."""
    if a.presentation is None or b.presentation is None:
        raise ModelError("wedge needs both models given by a single presentation")
    if not a.generator_degrees():
        return b
    if not b.generator_degrees():
        return a
    pa, pb = a.presentation, _renamed(b, _all_generators(a)).presentation
    gens = list(pa.generators) + list(pb.generators)
    diff = dict(pa.differential)
    diff.update(pb.differential)
    pres = FreeLiePresentation(gens, diff, name=f"{a.name}v{b.name}")
    betti = _add(a.expected_betti, b.expected_betti)
    betti[0] = 1
    wh = None
    if not pres.differential:
        wh = {d: k for d, k in free_lie_dims([d for _, d in gens], 12).items() if k}
    return SpaceModel(f"{a.name}v{b.name}", pres, expected_betti=betti, expected_whitehead=wh)


def _all_generators(m: SpaceModel) -> set:
    if m.presentation is not None:
        return {g for g, _ in m.presentation.generators}
    return set().union(*(_all_generators(f) for f in m.factors))


def _renamed(m: SpaceModel, taken: set) -> SpaceModel:
    """A copy of m whose generator names avoid ``taken`` (primes are appended)."""
    if m.presentation is None:
        parts, seen = [], set(taken)
        for f in m.factors:
            g = _renamed(f, seen)
            seen |= _all_generators(g)
            parts.append(g)
        return SpaceModel(m.name, factors=tuple(parts), expected_betti=m.expected_betti,
                          expected_whitehead=m.expected_whitehead)
    p = m.presentation
    rename: Dict[str, str] = {}
    for g, _ in p.generators:
        new = g
        while new in taken or new in rename.values():
            new += "'"
        rename[g] = new
    if all(k == v for k, v in rename.items()):
        return m
    pres = FreeLiePresentation([(rename[g], d) for g, d in p.generators],
                               {rename[g]: {_rename_word(w, rename): c for w, c in v.items()}
                                for g, v in p.differential.items()}, name=p.name)
    return SpaceModel(m.name, pres, expected_betti=m.expected_betti, expected_whitehead=m.expected_whitehead)


def _rename_word(word: str, rename: Dict[str, str]) -> str:
    from .lie import format_lie_word, parse_lie_word

    def go(t):
        return rename.get(t, t) if isinstance(t, str) else (go(t[0]), go(t[1]))

    return format_lie_word(go(parse_lie_word(word)))


def catalog() -> Dict[str, SpaceModel]:
    """The standard test spaces: S2..S5, S2xS2, S2vS2, CP2."""
    out = {f"S{n}": sphere_model(n) for n in range(2, 6)}
    out["S2xS2"] = product_model(sphere_model(2), sphere_model(2))
    out["S2vS2"] = wedge_model(sphere_model(2), sphere_model(2))
    out["CP2"] = cpn_model(2)
    return out


def model_by_name(name: str, arg: Optional[int] = None) -> SpaceModel:
    """'sphere' n, 'cp' n, 'point', or a catalog name such as 'S2xS2'."""
    key = name.lower()
    if key == "sphere":
        if arg is None:
            raise ModelError("sphere needs a dimension")
        return sphere_model(arg)
    if key in ("cp", "cpn"):
        if arg is None:
            raise ModelError("cp needs a dimension")
        return cpn_model(arg)
    if key in ("point", "pt"):
        return point_model()
    for k, m in catalog().items():
        if k.lower() == key:
            return m
    raise ModelError(f"unknown model {name!r}")


# -- files ----------------------------------------------------------------------


def model_record(m: SpaceModel) -> dict:
    rec = {"kind": "space-model", "name": m.name, "betti": serialize.table_out(m.expected_betti)}
    if m.expected_whitehead is not None:
        rec["whitehead"] = serialize.table_out(m.expected_whitehead)
    if m.presentation is not None:
        rec["lie"] = serialize.presentation_out(m.presentation)
    else:
        rec["product"] = [model_record(f) for f in m.factors]
    return rec


def model_from_record(rec) -> SpaceModel:
    if not isinstance(rec, dict) or rec.get("kind") != "space-model":
        raise ParseError("expected a 'space-model' record")
    betti = serialize.table_in(rec.get("betti", {}))
    wh = serialize.table_in(rec["whitehead"]) if rec.get("whitehead") is not None else None
    name = rec.get("name", "")
    if "lie" in rec:
        return SpaceModel(name, serialize.presentation_in(rec["lie"]), expected_betti=betti, expected_whitehead=wh)
    if "product" in rec:
        parts = tuple(model_from_record(r) for r in rec["product"])
        return SpaceModel(name, factors=parts, expected_betti=betti, expected_whitehead=wh)
    raise ParseError("space-model needs a 'lie' presentation or a 'product' list")


def save_model(m: SpaceModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize.dumps(model_record(m)) + "\n")


def load_model(path, check_to: Optional[int] = 6) -> SpaceModel:
    """Read a model file; its declared tables are checked through degree ``check_to``."""
    with open(path, encoding="utf-8") as fh:
        m = model_from_record(serialize.loads(fh.read()))
    if check_to is not None:
        rep = m.validate(check_to)
        if not rep.ok:
            raise InvariantViolation(f"model {m.name} fails check {rep.violations[0]}")
    return m
