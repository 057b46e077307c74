"""JSON records shared by model files and CLI output.

Every record is a JSON object with a "kind" field.  Rationals are written as
strings "p/q", or "p" when q = 1 (plain JSON integers are also read).
Degree-keyed tables use string keys, since JSON objects only have string keys.

Labels are JSON strings or integers; a structured label (a tuple) is written as
a JSON array of labels and read back as a tuple, so built objects round-trip.
Basis entries are {"label", "degree"} objects and every structure constant is
an {"inputs", "output", "coefficient"} object.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, Mapping

from .coalgebra import Comodule, DGCoalgebra, validate_coalgebra, validate_comodule
from .errors import ParseError
from .graded import ChainComplex, DegreeWindow, DGAlgebra
from .lie import FreeLiePresentation
from .linalg import format_rational, parse_rational


def rational_out(x) -> str:
    return format_rational(Fraction(x))


def rational_in(x) -> Fraction:
    if isinstance(x, bool):
        raise ParseError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise ParseError(f"not a rational: {x!r}")


def table_out(t: Mapping[int, int]) -> Dict[str, int]:
    return {str(k): v for k, v in sorted(t.items())}


def table_in(t) -> Dict[int, int]:
    if not isinstance(t, dict):
        raise ParseError("a degree table must be a JSON object")
    try:
        return {int(k): int(v) for k, v in t.items()}
    except (TypeError, ValueError) as e:
        raise ParseError(f"bad degree table entry: {e}") from None


def _expect(rec, kind):
    if not isinstance(rec, dict) or rec.get("kind") != kind:
        got = rec.get("kind") if isinstance(rec, dict) else type(rec).__name__
        raise ParseError(f"expected a {kind!r} record, got {got!r}")


def presentation_out(p: FreeLiePresentation) -> dict:
    return {
        "kind": "lie-presentation",
        "name": p.name,
        "generators": [[g, d] for g, d in p.generators],
        "differential": {g: {w: rational_out(c) for w, c in v.items()} for g, v in p.differential.items()},
    }


def presentation_in(rec) -> FreeLiePresentation:
    _expect(rec, "lie-presentation")
    try:
        gens = [(g, d) for g, d in rec["generators"]]
    except (KeyError, TypeError, ValueError):
        raise ParseError("lie-presentation needs a list of [name, degree] generators") from None
    diff = {}
    for g, v in rec.get("differential", {}).items():
        if not isinstance(v, dict):
            raise ParseError(f"differential of {g!r} must be an object")
        diff[g] = {w: rational_in(c) for w, c in v.items()}
    return FreeLiePresentation(gens, diff, name=rec.get("name", ""))


def label_out(x):
    if isinstance(x, tuple):
        return [label_out(y) for y in x]
    if isinstance(x, (str, int)) and not isinstance(x, bool):
        return x
    raise ParseError(f"label {x!r} has no record form")


def label_in(x):
    if isinstance(x, list):
        return tuple(label_in(y) for y in x)
    if isinstance(x, (str, int)) and not isinstance(x, bool):
        return x
    raise ParseError(f"bad label {x!r}")


def _constant(inputs, output, k) -> dict:
    return {"inputs": [label_out(x) for x in inputs], "output": label_out(output), "coefficient": rational_out(k)}


def _constants(entries, arity: int):
    if not isinstance(entries, list):
        raise ParseError("structure constants must be a list")
    for e in entries:
        try:
            ins, out, k = e["inputs"], e["output"], e["coefficient"]
        except (KeyError, TypeError):
            raise ParseError(f"bad structure constant {e!r}") from None
        if not isinstance(ins, list) or len(ins) != arity:
            raise ParseError(f"structure constant {e!r} needs {arity} inputs")
        yield tuple(label_in(x) for x in ins), label_in(out), rational_in(k)


def complex_out(c: ChainComplex) -> dict:
    return {
        "kind": "chain-complex",
        "name": c.name,
        "window": [c.window.lo, c.window.hi],
        "exact_below": c.exact_below,
        "exact_above": c.exact_above,
        "basis": [{"label": label_out(x), "degree": n} for n in sorted(c.basis) for x in c.basis[n]],
        "differential": [_constant([x], y, k) for n in sorted(c.basis) for x in c.basis[n]
                         for y, k in c.diff(x).items()],
    }


def complex_in(rec) -> ChainComplex:
    _expect(rec, "chain-complex")
    basis: Dict[int, list] = {}
    entries = rec.get("basis", [])
    if not isinstance(entries, list):
        raise ParseError("basis must be a list of {label, degree} entries")
    for e in entries:
        try:
            x, n = label_in(e["label"]), e["degree"]
        except (KeyError, TypeError):
            raise ParseError(f"bad basis entry {e!r}") from None
        if not isinstance(n, int) or isinstance(n, bool):
            raise ParseError(f"bad degree {n!r}")
        basis.setdefault(n, []).append(x)
    diff: Dict = {}
    for (x,), y, k in _constants(rec.get("differential", []), 1):
        diff.setdefault(x, {})[y] = diff.get(x, {}).get(y, 0) + k
    w = rec.get("window")
    window = None
    if w is not None:
        try:
            window = DegreeWindow(int(w[0]), int(w[1]))
        except (TypeError, ValueError, IndexError):
            raise ParseError(f"bad window {w!r}") from None
    return ChainComplex(basis, diff, window, exact_below=bool(rec.get("exact_below", True)),
                        exact_above=bool(rec.get("exact_above", True)), name=rec.get("name", ""))


def algebra_out(a: DGAlgebra) -> dict:
    """The product table on pairs of non-unit basis elements that lands inside the window."""
    cx = a.complex
    labels = [x for x in cx.labels() if x != a.unit]
    prods = []
    for x in labels:
        for y in labels:
            if cx.degree(x) + cx.degree(y) in cx.window:
                prods.extend(_constant([x, y], z, k) for z, k in a.mul(x, y).items())
    rec = {"kind": "dg-algebra", "name": a.name, "complex": complex_out(cx), "unit": label_out(a.unit),
           "product": prods}
    if a.augmentation is not None:
        rec["augmentation"] = [{"label": label_out(x), "coefficient": rational_out(k)}
                               for x, k in a.augmentation.items() if k]
    return rec


def algebra_in(rec) -> DGAlgebra:
    _expect(rec, "dg-algebra")
    cx = complex_in(rec.get("complex"))
    table: Dict = {}
    for (x, y), z, k in _constants(rec.get("product", []), 2):
        table.setdefault((x, y), {})[z] = table.get((x, y), {}).get(z, 0) + k
    aug = None
    if "augmentation" in rec:
        try:
            aug = {label_in(e["label"]): rational_in(e["coefficient"]) for e in rec["augmentation"]}
        except (KeyError, TypeError):
            raise ParseError("augmentation entries need a label and a coefficient") from None
    return DGAlgebra(cx, label_in(rec.get("unit")), table, aug, name=rec.get("name", ""))


def _pairs_out(x, pairs) -> list:
    return [_constant([x], (a, b), k) for (a, b), k in pairs.items()]


def _pairs_in(entries) -> Dict:
    table: Dict = {}
    for (x,), out, k in _constants(entries, 1):
        if not isinstance(out, tuple) or len(out) != 2:
            raise ParseError(f"a coproduct or coaction term needs a pair output, got {out!r}")
        row = table.setdefault(x, {})
        row[out] = row.get(out, 0) + k
    return table


def coalgebra_out(c: DGCoalgebra) -> dict:
    """Every coproduct term, primitive ones included; output labels are [left, right] pairs."""
    cx = c.complex
    return {
        "kind": "dg-coalgebra",
        "name": c.name,
        "complex": complex_out(cx),
        "coaugmentation": label_out(c.coaug),
        "counit": [{"label": label_out(x), "coefficient": rational_out(k)} for x, k in c.counit.items() if k],
        "cocommutative": c.cocommutative,
        "two_reduced": c.two_reduced,
        "coproduct": [e for x in cx.labels() for e in _pairs_out(x, c.delta(x))],
    }


def coalgebra_in(rec, check: bool = True) -> DGCoalgebra:
    """Read a dg-coalgebra record; its declared flags are checked, never inferred."""
    _expect(rec, "dg-coalgebra")
    for flag in ("cocommutative", "two_reduced"):
        if not isinstance(rec.get(flag), bool):
            raise ParseError(f"dg-coalgebra needs an explicit boolean {flag!r} field")
    cx = complex_in(rec.get("complex"))
    table = _pairs_in(rec.get("coproduct", []))
    counit = None
    if "counit" in rec:
        try:
            counit = {label_in(e["label"]): rational_in(e["coefficient"]) for e in rec["counit"]}
        except (KeyError, TypeError):
            raise ParseError("counit entries need a label and a coefficient") from None
    c = DGCoalgebra(cx, lambda x: table.get(x, {}), label_in(rec.get("coaugmentation")), counit,
                    cocommutative=rec["cocommutative"], two_reduced=rec["two_reduced"], name=rec.get("name", ""))
    if check:
        validate_coalgebra(c).raise_if_failed()
    return c


def comodule_out(m: Comodule) -> dict:
    cx = m.complex
    return {"kind": "comodule", "name": m.name, "coalgebra": m.coalgebra.name, "complex": complex_out(cx),
            "coaction": [e for x in cx.labels() for e in _pairs_out(x, m.rho(x))]}


def comodule_in(rec, c: DGCoalgebra, check: bool = True) -> Comodule:
    """Read a comodule record over the given coalgebra."""
    _expect(rec, "comodule")
    cx = complex_in(rec.get("complex"))
    table = _pairs_in(rec.get("coaction", []))
    m = Comodule(c, cx, lambda x: table.get(x, {}), name=rec.get("name", ""))
    if check:
        validate_comodule(m).raise_if_failed()
    return m


def dumps(rec) -> str:
    return json.dumps(rec, indent=2, sort_keys=True, ensure_ascii=False)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed JSON: {e}") from None
