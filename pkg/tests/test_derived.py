import random

import pytest

from builders import random_comodule
from dgkoszul.barcobar import cobar
from dgkoszul.coalgebra import (
    coalgebra_as_comodule, product_sphere_homology_coalgebra, sphere_homology_coalgebra, trivial_comodule,
)
from dgkoszul.derived import (
    FilteredComplex, coext, coext_e2_product, coext_ss, coext_via_ext, cohomological, cotor, derived_cotensor, ext,
    hyper_ext_ss, ss_from_filtration,
)
from dgkoszul.errors import FiltrationError, HypothesisViolated, Mismatch, NotTwoReduced
from dgkoszul.graded import ChainComplex, DegreeWindow, homology, trivial_module, unit_complex
from dgkoszul.lie import uea
from dgkoszul.models import catalog
from dgkoszul.twisted import extension


def _two_term(levels):
    cx = ChainComplex({1: ["x"], 0: ["y"]}, {"x": {"y": 1}}, DegreeWindow(-1, 2), name="xy")
    return FilteredComplex(cx, levels.__getitem__)


def test_filtration_spectral_sequence_kills_pair_on_first_page():
    ss = ss_from_filtration(_two_term({"x": 1, "y": 0}))
    assert ss.table(0) == {(1, 0): 1, (0, 0): 1}
    assert not any(ss.e_infinity().values())
    assert ss.reconciles() and not ss.page_consistency()
    assert not any(ss.abutment.values())


def test_filtration_same_level_dies_on_page_zero():
    ss = ss_from_filtration(_two_term({"x": 0, "y": 0}))
    assert not any(ss.table(1).values())


def test_filtration_must_be_preserved():
    with pytest.raises(FiltrationError):
        _two_term({"x": 0, "y": 1})


def test_cohomological_reindexing():
    assert cohomological({-2: 1, -1: 0, 0: 1}) == {0: 1, 1: 0, 2: 1}


@pytest.mark.parametrize("c", [sphere_homology_coalgebra(2), product_sphere_homology_coalgebra(2, 3)],
                         ids=["S2", "S2xS3"])
def test_ext_routes_agree(c):
    omega = cobar(c, 8)
    q = trivial_module(omega)
    w = DegreeWindow(-6, 0)
    free = extension(omega.t, trivial_comodule(c), DegreeWindow(0, 8))
    one = {k: int(k == 0) for k in w}
    assert ext(omega, free, q, w, route="semifree").dims() == ext(omega, free, q, w, route="bar").dims() == one
    # ΩC ⊗_t C resolves ℚ, so both routes recover C
    v = extension(omega.t, coalgebra_as_comodule(c), DegreeWindow(0, 8))
    semi = ext(omega, v, q, w, route="semifree").dims()
    assert semi == ext(omega, v, q, w, route="bar").dims() == ext(omega, q, q, w, route="bar").dims()
    assert cohomological(semi) == {k: len(c.complex.basis.get(k, ())) for k in range(7)}


def test_ext_semifree_route_needs_twisted_extension():
    omega = cobar(sphere_homology_coalgebra(3), 4)
    q = trivial_module(omega)
    with pytest.raises(Mismatch):
        ext(omega, q, q, DegreeWindow(-2, 0), route="semifree")
    with pytest.raises(ValueError):
        ext(omega, q, q, DegreeWindow(-2, 0), route="nope")


def test_hyper_ext_spectral_sequence():
    m = catalog()["S3"]
    u = uea(m.lie_model(8), DegreeWindow(0, 8))
    q = trivial_module(u)
    ss = hyper_ext_ss(u, q, q, DegreeWindow(-6, 0))
    assert ss.reconciles()
    assert cohomological(ss.abutment) == {0: 1, 1: 0, 2: 0, 3: 1, 4: 0, 5: 0, 6: 0}


def test_cotor_of_sphere_coalgebra():
    c = sphere_homology_coalgebra(4)
    q = trivial_comodule(c)
    assert cotor(c, q, q, DegreeWindow(0, 9)).dims() == {k: int(k % 3 == 0) for k in range(10)}


def test_cotor_needs_two_reduced():
    c = sphere_homology_coalgebra(1)
    q = trivial_comodule(c)
    with pytest.raises(NotTwoReduced):
        cotor(c, q, q, 2)


def test_derived_cotensor_computes_cotor():
    c = product_sphere_homology_coalgebra(2, 2)
    q = trivial_comodule(c)
    dc = derived_cotensor(q, q, DegreeWindow(0, 5))
    assert homology(dc.complex, DegreeWindow(0, 4)).dims() == cotor(c, q, q, DegreeWindow(0, 4)).dims()


def test_coext_of_trivial_comodules():
    c = sphere_homology_coalgebra(2)
    q = trivial_comodule(c)
    w = DegreeWindow(-2, 4)
    a = coext(c, q, q, w).dims()
    assert a == {k: int(k >= 0) for k in w}
    assert a == coext_via_ext(c, q, q, w).dims()


def test_coext_routes_agree_on_random_comodules():
    rng = random.Random(11)
    c = product_sphere_homology_coalgebra(2, 2)
    w = DegreeWindow(-3, 2)
    for i in range(6):
        n, m = random_comodule(rng, c, f"n{i}", 2), random_comodule(rng, c, f"m{i}", 2)
        h = coext(c, n, m, w).dims()
        assert h == coext_via_ext(c, n, m, w).dims()
        ss = coext_ss(c, n, m, w)
        assert ss.reconciles() and ss.antidiagonal_sums() == {k: h[k] for k in ss.degrees}


def test_coext_e2_for_trivial_source():
    c = sphere_homology_coalgebra(2)
    n = trivial_comodule(c, unit_complex("v", 1))
    m = trivial_comodule(c)
    w = DegreeWindow(-3, 2)
    e2 = {k: v for k, v in coext_ss(c, n, m, w).table(2).items() if v}
    assert e2 == coext_e2_product(n, m, c, w)


def test_coext_needs_bounded_source():
    c = sphere_homology_coalgebra(2)
    open_top = ChainComplex({0: ["v"]}, {}, DegreeWindow(0, 3), exact_above=False, name="v")
    with pytest.raises(HypothesisViolated):
        coext(c, trivial_comodule(c, open_top), trivial_comodule(c), DegreeWindow(-1, 1))
