import pytest

from dgkoszul.barcobar import (
    TwistingChain, bar, bar_twisting_chain, barcobar_unit, cobar, coalgebra_map_violations, iterated_reduced,
    twist_from_algebra_map, twist_to_algebra_map, twisting_chain_check, trivial_algebra, unit_retraction,
)
from dgkoszul.coalgebra import product_sphere_homology_coalgebra, sphere_homology_coalgebra, validate_coalgebra
from dgkoszul.errors import IncompleteDegree, NotAnAlgebraMap, NotTwoReduced
from dgkoszul.graded import DegreeWindow, homology, is_quasi_iso, validate_algebra
from dgkoszul.lie import abelian_lie, uea
from dgkoszul.models import catalog


@pytest.mark.parametrize("n", [2, 3, 4])
def test_loop_homology_of_spheres(n):
    omega = cobar(sphere_homology_coalgebra(n), 9)
    h = homology(omega.complex, DegreeWindow(0, 8)).dims()
    assert h == {k: int(k % (n - 1) == 0) for k in range(9)}


def test_loop_homology_of_product():
    omega = cobar(product_sphere_homology_coalgebra(2, 2), 7)
    assert homology(omega.complex, DegreeWindow(0, 6)).dims() == {k: k + 1 for k in range(7)}
    assert validate_algebra(omega).ok


def test_cobar_preconditions():
    with pytest.raises(NotTwoReduced):
        cobar(sphere_homology_coalgebra(1), 3)
    c = catalog()["S2"].coalgebra_model(4)
    with pytest.raises(IncompleteDegree):
        cobar(c, 6)


def test_universal_twisting_chain():
    c = product_sphere_homology_coalgebra(2, 3)
    omega = cobar(c, 6)
    assert twisting_chain_check(omega.t).ok
    f = twist_to_algebra_map(omega.t, 6)
    for w in omega.complex.labels():
        assert f.image(w) == {w: 1}
    tau = twist_from_algebra_map(f)
    assert all(tau(x) == omega.t(x) for x in c.complex.labels())


def test_scaled_twist_is_not_twisting():
    c = product_sphere_homology_coalgebra(2, 2)
    omega = cobar(c, 4)
    tau = TwistingChain(c, omega, lambda x: {("t", x): 2})
    rep = twisting_chain_check(tau)
    assert not rep.ok
    with pytest.raises(NotAnAlgebraMap):
        twist_to_algebra_map(tau, 4)


def test_bar_of_trivial_algebra():
    b = bar(trivial_algebra(), 3)
    assert b.complex.dims() == {0: 1, 1: 0, 2: 0, 3: 0}


def test_bar_of_polynomial_algebra_is_exterior():
    u = uea(abelian_lie([("x", 2)]), 9)
    b = bar(u, 9)
    assert validate_coalgebra(b).ok
    assert homology(b.complex, DegreeWindow(0, 8)).dims() == {k: int(k in (0, 3)) for k in range(9)}
    assert twisting_chain_check(bar_twisting_chain(b, u)).ok


def test_iterated_coproduct():
    c = product_sphere_homology_coalgebra(2, 2)
    assert iterated_reduced(c, "ab", 2) == {("a", "b"): 1, ("b", "a"): 1}
    assert iterated_reduced(c, "ab", 3) == {}


@pytest.mark.parametrize("c", [product_sphere_homology_coalgebra(2, 2), sphere_homology_coalgebra(3)],
                         ids=["S2xS2", "S3"])
def test_barcobar_unit_on_formal_coalgebras(c):
    f, bo = barcobar_unit(c, 7)
    assert not f.violations()
    assert not coalgebra_map_violations(f, c, bo)
    qi = is_quasi_iso(f, DegreeWindow(0, 6))
    assert sorted(qi) == list(range(7)) and all(qi.values())
    p = unit_retraction(c, bo, f.source)
    for x in f.source.labels():
        assert p.apply(f.image(x)) == {x: 1}
