import random

import pytest

from builders import random_comodule
from dgkoszul.barcobar import cobar
from dgkoszul.coalgebra import (
    ComoduleMap, product_sphere_homology_coalgebra, sphere_homology_coalgebra, trivial_comodule, validate_comodule,
)
from dgkoszul.errors import Mismatch, NotTwoReduced
from dgkoszul.graded import DegreeWindow, homology, is_quasi_iso, validate_module
from dgkoszul.models import catalog
from dgkoszul.twisted import (
    koszul_comodule, koszul_counit_homotopy, koszul_module, koszul_unit, t_equivalence, two_sided_cobar,
)


@pytest.mark.parametrize("c", [sphere_homology_coalgebra(2), product_sphere_homology_coalgebra(2, 2),
                               catalog()["CP2"].coalgebra_model(8)], ids=["S2", "S2xS2", "CP2"])
def test_counit_contraction(c):
    ext, _, rep = koszul_counit_homotopy(c, 7)
    assert rep.ok and rep.checks["homotopy"] > 0
    assert homology(ext.complex, DegreeWindow(0, 6)).dims() == {k: int(k == 0) for k in range(7)}


def test_counit_needs_two_reduced():
    with pytest.raises(NotTwoReduced):
        koszul_counit_homotopy(sphere_homology_coalgebra(1), 3)


def test_koszul_module_is_a_module():
    c = product_sphere_homology_coalgebra(2, 3)
    n = trivial_comodule(c)
    tn = koszul_module(n, 6)
    assert validate_module(tn).ok
    # t^!ℚ = ΩC, whose homology is the loop homology
    assert homology(tn.complex, DegreeWindow(0, 5)).dims() == homology(
        cobar(c, 6).complex, DegreeWindow(0, 5)).dims()


def test_koszul_unit_is_quasi_iso():
    rng = random.Random(3)
    c = catalog()["S3"].coalgebra_model(8)
    for i in range(5):
        n = random_comodule(rng, c, f"u{i}_", 3)
        eta, ttn = koszul_unit(n, DegreeWindow(0, 4))
        assert validate_comodule(ttn).ok
        assert not eta.violations() and not eta.colinearity_violations()
        qi = is_quasi_iso(eta, DegreeWindow(0, 3))
        assert qi and all(qi.values())


def test_koszul_comodule_of_cobar_is_cofree_resolution():
    c = sphere_homology_coalgebra(3)
    omega = cobar(c, 8)
    tm = koszul_comodule(koszul_module(trivial_comodule(c), 8, omega=omega), omega, DegreeWindow(0, 7))
    assert validate_comodule(tm).ok
    assert homology(tm.complex, DegreeWindow(0, 6)).dims() == {k: int(k == 0) for k in range(7)}


def test_identity_is_t_equivalence():
    rng = random.Random(5)
    c = product_sphere_homology_coalgebra(2, 2)
    for i in range(4):
        m = random_comodule(rng, c, f"i{i}_", 3)
        f = ComoduleMap(m, m, {x: {x: 1} for x in m.complex.labels()})
        te = t_equivalence(f, DegreeWindow(0, 4))
        assert list(te) == list(range(5)) and all(te.values())


def test_zero_map_from_non_acyclic_is_not_t_equivalence():
    c = sphere_homology_coalgebra(2)
    m = trivial_comodule(c)
    z = trivial_comodule(c)
    f = ComoduleMap(m, z, {x: {} for x in m.complex.labels()})
    assert not all(t_equivalence(f, DegreeWindow(0, 3)).values())


def test_two_sided_cobar_of_trivial_comodules():
    c = product_sphere_homology_coalgebra(2, 2)
    q = trivial_comodule(c)
    cx = two_sided_cobar(q, c, q, DegreeWindow(0, 6))
    assert homology(cx, DegreeWindow(0, 5)).dims() == {k: k + 1 for k in range(6)}


def test_two_sided_cobar_mismatch():
    c, d = sphere_homology_coalgebra(2), sphere_homology_coalgebra(3)
    with pytest.raises(Mismatch):
        two_sided_cobar(trivial_comodule(c), d, trivial_comodule(d), 3)
