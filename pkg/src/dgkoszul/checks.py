"""Structural property suites: d² = 0, coassociativity, Jacobi, PBW counts,
Künneth dimensions and the shift / connective-cover identities.

``structural_report`` dispatches on the kind of object; ``run_suite`` builds
the catalog and checks everything it constructs.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional

from .barcobar import barcobar_unit, cobar
from .coalgebra import Comodule, DGCoalgebra, validate_coalgebra, validate_comodule
from .graded import (
    AlgebraModule, ChainComplex, ChainMap, DegreeWindow, DGAlgebra, connective_cover, homology, is_quasi_iso, shift,
    tensor, validate_algebra, validate_module,
)
from .lie import DGLieAlgebra, uea, validate_lie
from .models import SpaceModel, catalog
from .report import Report


def d_squared(c: ChainComplex, name: str = "") -> Report:
    rep = Report(f"complex {name or c.name}")
    bad = c.d_squared_violations(limit=1)
    n = sum(len(c.basis.get(k, ())) for k in c.basis if k - 1 in c.window)
    rep.checks["d-squared"] = n
    if bad:
        rep.violations.append(f"d-squared: d(d({bad[0]!r})) != 0")
    return rep


def shift_identities(c: ChainComplex, k: int = 3) -> Report:
    """shift by k then -k is the identity; homology moves by k."""
    rep = Report(f"shift {c.name}")
    back = shift(shift(c, k), -k)
    rep.record("shift-roundtrip", back.basis == c.basis, "labels differ after shifting back")
    same = all(back.diff(x) == c.diff(x) for x in c.labels())
    rep.record("shift-roundtrip", same, "differential differs after shifting back")
    inner = DegreeWindow(c.window.lo + 1, c.window.hi - 1) if c.window.hi - c.window.lo >= 2 else None
    if inner is not None:
        h = homology(c, inner).dims()
        hs = homology(shift(c, k), DegreeWindow(inner.lo + k, inner.hi + k)).dims()
        rep.record("shift-homology", all(hs[n + k] == h[n] for n in h), f"{h} vs {hs}")
    return rep


def cover_identities(c: ChainComplex, k: int) -> Report:
    """H_n(c<k>) = H_n(c) for n >= k, zero below, and the inclusion is a quasi-iso from k on."""
    rep = Report(f"cover {c.name}<{k}>")
    cov, inc = connective_cover(c, k)
    top = c.window.hi - 1
    if top < k:
        return rep
    w = DegreeWindow(k, top)
    h = homology(c, w).dims()
    hc = homology(cov, w).dims()
    rep.record("cover-homology", h == hc, f"{h} vs {hc}")
    rep.record("cover-bounded", all(n >= k for n in cov.basis), "basis below k")
    bad = inc.violations()
    rep.record("cover-chain-map", not bad, f"{bad[:1]}")
    qi = is_quasi_iso(inc, w)
    rep.record("cover-quasi-iso", all(qi.values()), f"{qi}")
    return rep


def kunneth(a: ChainComplex, b: ChainComplex, w: DegreeWindow) -> Report:
    """dim H_n(a⊗b) = Σ dim H_p(a) dim H_{n-p}(b)."""
    rep = Report(f"künneth {a.name}⊗{b.name}")
    t = tensor(a, b, DegreeWindow(w.lo, w.hi + 1))
    h = homology(t, w).dims()
    ha = homology(a, DegreeWindow(min(a.basis, default=0), max(a.basis, default=0))).dims()
    hb = homology(b, DegreeWindow(min(b.basis, default=0), max(b.basis, default=0))).dims()
    want = {n: sum(ha.get(p, 0) * hb.get(n - p, 0) for p in ha) for n in w}
    rep.record("künneth", h == want, f"{h} vs {want}")
    return rep


def pbw_dims(lie_dims: Dict[int, int], hi: int) -> Dict[int, int]:
    """Π_{d odd} (1+t^d)^{ℓ_d} Π_{d even} (1-t^d)^{-ℓ_d} up to t^hi."""
    series = [1] + [0] * hi
    for d, k in sorted(lie_dims.items()):
        if d < 1 or d > hi:
            continue
        for _ in range(k):
            if d % 2:
                for n in range(hi, d - 1, -1):
                    series[n] += series[n - d]
            else:
                for n in range(d, hi + 1):
                    series[n] += series[n - d]
    return dict(enumerate(series))


def pbw_counts(l: DGLieAlgebra, u: DGAlgebra, hi: int) -> Report:
    rep = Report(f"PBW {l.name}")
    want = pbw_dims({n: len(xs) for n, xs in l.complex.basis.items()}, hi)
    got = {n: u.complex.dim(n) for n in range(hi + 1)}
    rep.record("pbw-count", got == want, f"{got} vs {want}")
    return rep


def structural_report(obj, budget: Optional[int] = None, w: Optional[DegreeWindow] = None) -> Report:
    """The structural checks that apply to ``obj``."""
    if isinstance(obj, DGCoalgebra):
        rep = validate_coalgebra(obj, w)
        return rep.merge(d_squared(obj.complex))
    if isinstance(obj, DGLieAlgebra):
        return validate_lie(obj, budget, w)
    if isinstance(obj, Comodule):
        return validate_comodule(obj, w).merge(d_squared(obj.complex))
    if isinstance(obj, AlgebraModule):
        return validate_module(obj, budget, w).merge(d_squared(obj.complex))
    if isinstance(obj, DGAlgebra):
        return validate_algebra(obj, budget, w).merge(d_squared(obj.complex))
    if isinstance(obj, ChainMap):
        rep = Report(f"chain map {obj.name}")
        bad = obj.violations()
        rep.record("chain-map", not bad, f"{bad[:1]}")
        return rep
    if isinstance(obj, ChainComplex):
        return d_squared(obj)
    raise TypeError(f"no structural checks for {type(obj).__name__}")


def model_suite(m: SpaceModel, hi: int = 8, budget: Optional[int] = 4000) -> List[Report]:
    """Everything built from one catalog model through degree hi."""
    reps = [m.validate(hi)]
    l = m.lie_model(hi)
    reps.append(validate_lie(l, None, DegreeWindow(0, hi)))
    u = uea(l, DegreeWindow(0, hi))
    reps.append(pbw_counts(l, u, hi))
    reps.append(structural_report(u, budget))
    c = m.coalgebra_model(hi + 1)
    reps.append(structural_report(c))
    reps.append(shift_identities(c.complex))
    reps.append(cover_identities(c.complex, 2))
    reps.append(kunneth(c.complex, c.complex, DegreeWindow(0, min(hi, 6))))
    omega = cobar(c, DegreeWindow(0, hi))
    reps.append(d_squared(omega.complex))
    f, bo = barcobar_unit(c, DegreeWindow(0, min(hi, 6)))
    reps.append(structural_report(bo))
    reps.append(structural_report(f))
    return reps


def run_suite(hi: int = 6, names: Optional[Iterable[str]] = None) -> List[Report]:
    reps: List[Report] = []
    for name, m in catalog().items():
        if names is not None and name not in names:
            continue
        reps.extend(model_suite(m, hi))
    return reps
