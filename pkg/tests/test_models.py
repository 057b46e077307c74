import json

import pytest

from dgkoszul.errors import InvariantViolation, ModelError, ParseError
from dgkoszul.graded import DegreeWindow, homology
from dgkoszul.models import (
    catalog, cpn_model, load_model, model_by_name, model_from_record, model_record, point_model, product_model,
    save_model, sphere_model, wedge_model,
)


@pytest.mark.parametrize("name", sorted(catalog()))
def test_catalog_models_match_declared_tables(name):
    assert catalog()[name].validate(7).ok


def test_simply_connected_only():
    with pytest.raises(ModelError):
        sphere_model(1)
    with pytest.raises(ModelError):
        cpn_model(0)


def test_cp3():
    m = cpn_model(3)
    assert m.validate(7).ok
    assert m.whitehead_dims(7) == {k: int(k in (1, 6)) for k in range(1, 8)}


def test_point_is_unit_for_products():
    s3 = sphere_model(3)
    assert product_model(point_model(), s3) is s3
    assert wedge_model(s3, point_model()) is s3


def test_product_renames_shared_generators():
    m = product_model(sphere_model(3), sphere_model(3))
    assert m.validate(7).ok
    assert m.expected_betti == {0: 1, 3: 2, 6: 1}
    assert len(set(g for g, _ in m.factors[0].presentation.generators)
               | set(g for g, _ in m.factors[1].presentation.generators)) == 2


def test_wedge_of_spheres_has_free_loop_homology():
    m = wedge_model(sphere_model(2), sphere_model(3))
    assert m.validate(6).ok
    # H(Ω(S2 ∨ S3)) = T(x1, x2)
    l = m.lie_model(7)
    from dgkoszul.lie import uea
    u = uea(l, DegreeWindow(0, 6))
    fib = [1, 1]
    for _ in range(5):
        fib.append(fib[-1] + fib[-2])
    assert homology(u.complex, DegreeWindow(0, 5)).dims() == {k: fib[k] for k in range(6)}


def test_wedge_of_products_is_refused():
    with pytest.raises(ModelError):
        wedge_model(catalog()["S2xS2"], sphere_model(2))


def test_model_by_name():
    assert model_by_name("sphere", 4) == sphere_model(4)
    assert model_by_name("cp", 2) == cpn_model(2)
    assert model_by_name("s2xs2") == catalog()["S2xS2"]
    assert model_by_name("point").generator_degrees() == []
    for bad in [("sphere", None), ("nowhere", None)]:
        with pytest.raises(ModelError):
            model_by_name(*bad)


@pytest.mark.parametrize("name", ["S2", "CP2", "S2xS2", "S2vS2"])
def test_save_and_load(tmp_path, name):
    m = catalog()[name]
    p = tmp_path / f"{name}.json"
    save_model(m, p)
    assert load_model(p) == m
    assert model_from_record(json.loads(p.read_text())) == m


def test_load_checks_declared_tables(tmp_path):
    rec = model_record(sphere_model(3))
    rec["betti"] = {"0": 1, "2": 1}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(rec))
    with pytest.raises(InvariantViolation):
        load_model(p)
    assert load_model(p, check_to=None).expected_betti == {0: 1, 2: 1}


@pytest.mark.parametrize("rec", [{"kind": "chain-complex"}, {"kind": "space-model", "name": "x"}, [1, 2]])
def test_bad_model_records(rec):
    with pytest.raises(ParseError):
        model_from_record(rec)
