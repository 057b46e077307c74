import random

import pytest
from hypothesis import given, settings, strategies as st

from builders import random_comodule, random_complex
from dgkoszul.coalgebra import (
    DGCoalgebra, coalgebra_as_comodule, coalgebra_tensor, cofree_comodule, coinvariants, comodule_hom_complex,
    comodule_sum, cotensor, product_sphere_homology_coalgebra, sphere_homology_coalgebra, trivial_coalgebra,
    trivial_comodule, validate_coalgebra, validate_comodule,
)
from dgkoszul.errors import NotCoaugmented, NotCocommutative
from dgkoszul.graded import ChainComplex, DegreeWindow, homology
from dgkoszul.models import catalog

S2 = sphere_homology_coalgebra(2)
S2S2 = product_sphere_homology_coalgebra(2, 2)
CS2 = catalog()["S2"].coalgebra_model(6)


def test_small_coalgebras_validate():
    for c in (trivial_coalgebra(), S2, S2S2, sphere_homology_coalgebra(3), CS2):
        assert validate_coalgebra(c).ok, c.name


def test_flags():
    assert S2.two_reduced and not sphere_homology_coalgebra(1).two_reduced
    assert S2S2.cocommutative


def test_broken_counit_is_reported():
    cx = ChainComplex({0: ["1"], 2: ["a"]}, {})
    broken = DGCoalgebra(cx, {"a": {("a", "1"): 1, ("1", "a"): 2}}, "1", name="broken")
    rep = validate_coalgebra(broken)
    assert not rep.ok
    assert any(v.startswith("counit") for v in rep.violations)


def test_coaugmentation_must_be_degree_zero():
    with pytest.raises(NotCoaugmented):
        DGCoalgebra(ChainComplex({1: ["x"]}, {}), {}, "x")


def test_tensor_coalgebra_is_the_product():
    t = coalgebra_tensor(S2, S2)
    assert validate_coalgebra(t).ok
    assert homology(t.complex).dims() == {0: 1, 1: 0, 2: 2, 3: 0, 4: 1}


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_random_comodules_validate(seed):
    rng = random.Random(seed)
    for c in (S2, CS2):
        m = random_comodule(rng, c, "m", 3)
        assert validate_comodule(m).ok


def test_coinvariants_of_cofree_recover_the_generators():
    v = ChainComplex({0: ["v"], 1: ["w"]}, {})
    m = cofree_comodule(S2S2, v)
    inv = coinvariants(m)
    assert homology(inv.complex).dims() == {0: 1, 1: 1, 2: 0, 3: 0, 4: 0, 5: 0}


def test_cotensor_with_the_coalgebra_is_identity():
    c = coalgebra_as_comodule(S2S2)
    v = ChainComplex({0: ["v"], 3: ["w"]}, {})
    m = cofree_comodule(S2S2, v)
    mc, ker = cotensor(c, m)
    assert validate_comodule(mc).ok
    assert {n: mc.complex.dim(n) for n in range(8)} == {n: m.complex.dim(n) for n in range(8)}


def test_cotensor_needs_cocommutative():
    c2 = DGCoalgebra(S2.complex, S2.delta, "1", cocommutative=False)
    with pytest.raises(NotCocommutative):
        cotensor(trivial_comodule(c2), trivial_comodule(c2))


def test_colinear_maps_from_trivial_into_cofree():
    # {Q, C⊗V} ≅ V: colinear maps from the trivial comodule pick out 1⊗v
    v = ChainComplex({0: ["v"], 2: ["w"]}, {})
    m = cofree_comodule(S2, v)
    h = comodule_hom_complex(trivial_comodule(S2), m, DegreeWindow(-1, 5))
    assert {n: h.complex.dim(n) for n in range(-1, 6)} == {-1: 0, 0: 1, 1: 0, 2: 1, 3: 0, 4: 0, 5: 0}


def test_sum_of_comodules():
    a = trivial_comodule(S2, ChainComplex({0: ["p"]}, {}))
    b = coalgebra_as_comodule(S2)
    s = comodule_sum([a, b], name="s")
    assert validate_comodule(s).ok
    assert s.complex.dims() == {0: 2, 1: 0, 2: 1}
