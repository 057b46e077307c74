import pytest

from dgkoszul.barcobar import cobar
from dgkoszul.coalgebra import validate_coalgebra
from dgkoszul.errors import InvariantViolation, NotReduced, ParseError
from dgkoszul.graded import DegreeWindow, homology, is_quasi_iso
from dgkoszul.simplicial import (
    aw_coalgebra, normalized_chains, parse_facets, point, product, shuffle_map, sphere_quotient, standard_simplex,
)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_standard_simplex_is_contractible(n):
    x = standard_simplex(n)
    assert x.validate().ok
    assert homology(normalized_chains(x), DegreeWindow(0, n)).dims() == {k: int(k == 0) for k in range(n + 1)}
    if n:
        with pytest.raises(NotReduced):
            aw_coalgebra(x)
    else:
        assert validate_coalgebra(aw_coalgebra(x)).ok


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sphere_quotient(n):
    x = sphere_quotient(n)
    assert x.is_reduced(n)
    h = homology(normalized_chains(x), DegreeWindow(0, n)).dims()
    assert h == {k: int(k in (0, n)) for k in range(n + 1)}


def test_sphere_quotient_needs_positive_dimension():
    with pytest.raises(InvariantViolation):
        sphere_quotient(0)


def test_aw_coalgebra_of_torus_like_product():
    x = product(sphere_quotient(2), sphere_quotient(2))
    assert x.validate().ok
    c = aw_coalgebra(x)
    assert validate_coalgebra(c).ok
    assert homology(c.complex, DegreeWindow(0, 4)).dims() == {0: 1, 1: 0, 2: 2, 3: 0, 4: 1}
    # H(Ω(S2×S2)) = H(ΩS2)⊗H(ΩS2): dimension k+1 in degree k
    om = cobar(c, 5)
    assert homology(om.complex, DegreeWindow(0, 4)).dims() == {k: k + 1 for k in range(5)}


def test_shuffle_map_is_quasi_iso():
    a, b = standard_simplex(1), sphere_quotient(2)
    f = shuffle_map(a, b, DegreeWindow(0, 3))
    assert not f.violations()
    qi = is_quasi_iso(f, DegreeWindow(0, 2))
    assert qi and all(qi.values())


def test_point():
    assert point().is_reduced(5)
    assert normalized_chains(point()).dims() == {0: 1}


def test_parse_facets():
    x = parse_facets("""
        # the circle as one vertex and one edge
        v 0 :
        e 1 : v v
        s 2 : e e v@0,0
    """)
    assert x.simplices == {0: ["v"], 1: ["e"], 2: ["s"]}
    assert x.face(2, ("s", (0, 1, 2))) == ("v", (0, 0))


@pytest.mark.parametrize("text,err", [
    ("v 0 :\ne 1 : v", InvariantViolation),
    ("v 0 :\ne 1 : v w", InvariantViolation),
    ("v zero :", ParseError),
    ("v :", ParseError),
    ("v 0 :\ne 1 : v v\ns 2 : e e v@0,x", ParseError),
    ("v 0 :\nv 0 :", InvariantViolation),
])
def test_parse_facets_errors(text, err):
    with pytest.raises(err):
        parse_facets(text)
