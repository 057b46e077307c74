"""Command line: dgkoszul <command> [options].

Exit status 0 on success, 1 on a domain error (the module error message is
printed verbatim), 2 on a usage error.

DGKOSZUL_THREADS may hold a positive thread count.  It is validated, but the
arithmetic is pure-Python rationals, so every computation runs on one thread.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

from . import serialize
from .barcobar import bar, cobar
from .coalgebra import Comodule, DGCoalgebra, coalgebra_as_comodule, trivial_comodule
from .derived import cohomological, coext, coext_ss, cotor, ext, hyper_ext_ss
from .errors import DGError
from .graded import DegreeWindow, Homology, homology, trivial_module
from .lie import uea
from .models import SpaceModel, load_model, model_by_name, model_record


class _GivenCoalgebra:
    """A dg-coalgebra read from a file, standing in for a space model."""

    def __init__(self, c: DGCoalgebra):
        self.c = c
        self.name = c.name

    def coalgebra_model(self, hi: int) -> DGCoalgebra:
        return self.c

    def lie_model(self, hi: int):
        raise DGError("usage: --coalgebra: this command needs a space-model file, not a dg-coalgebra record")


def _model(args) -> SpaceModel:
    path = getattr(args, "coalgebra", None) or getattr(args, "input", None)
    if path:
        with open(path, encoding="utf-8") as fh:
            rec = serialize.loads(fh.read())
        if isinstance(rec, dict) and rec.get("kind") == "dg-coalgebra":
            return _GivenCoalgebra(serialize.coalgebra_in(rec))
        return load_model(path)
    if getattr(args, "model", None):
        name, *rest = args.model
        return model_by_name(name, int(rest[0]) if rest else None)
    raise DGError("usage: give --model NAME [N] or --coalgebra FILE")


def _comodule(kind: str, c: DGCoalgebra) -> Comodule:
    if kind == "triv":
        return trivial_comodule(c)
    if kind == "coalgebra":
        return coalgebra_as_comodule(_finite(c))
    raise DGError(f"usage: --left/--right: unknown comodule {kind!r}")


def _finite(c: DGCoalgebra) -> DGCoalgebra:
    if not c.complex.exact_above:
        raise DGError(f"usage: --left/--right coalgebra: {c.name} is unbounded, so this needs a finite coalgebra")
    return c


# -- rendering -------------------------------------------------------------------


def _dims_table(title: str, h: Homology, note: str = "") -> str:
    lines = [title, "degree  dim  status"]
    for n in sorted(h):
        g = h[n]
        lines.append(f"{n:>6}  {g.dim:>3}  {'complete' if g.trusted else 'untrusted edge'}")
    if note:
        lines.append(note)
    return "\n".join(lines)


def _dims_record(command: str, h: Homology, extra: Optional[dict] = None) -> dict:
    rec = {
        "kind": "dims",
        "command": command,
        "dims": serialize.table_out({n: g.dim for n, g in h.items()}),
        "complete": [n for n in sorted(h) if h[n].trusted],
    }
    if extra:
        rec.update(extra)
    return rec


def _emit(args, text: str, record: dict) -> None:
    out = serialize.dumps(record) if args.format == "record" else text
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _window(args) -> DegreeWindow:
    if args.max_degree < 0:
        raise DGError("usage: --max-degree must be non-negative")
    return DegreeWindow(0, args.max_degree)


# -- commands -----------------------------------------------------------------------


def cmd_homology(args):
    if not args.input:
        raise DGError("usage: homology needs --input FILE holding a chain-complex record")
    with open(args.input, encoding="utf-8") as fh:
        rec = serialize.loads(fh.read())
    if isinstance(rec, dict) and rec.get("kind") == "dg-algebra":
        c = serialize.algebra_in(rec).complex
    else:
        c = serialize.complex_in(rec)
    lo = min(c.basis, default=0)
    w = DegreeWindow(lo, max(args.max_degree, lo))
    h = homology(c, w)
    _emit(args, _dims_table(f"H({c.name or 'input'})", h), _dims_record("homology", h))


def cmd_cobar(args):
    m = _model(args)
    w = _window(args)
    c = m.coalgebra_model(w.hi + 2)
    omega = cobar(c, DegreeWindow(0, w.hi + 1))
    h = homology(omega.complex, w)
    _emit(args, _dims_table(f"H(Ω C_{m.name})", h), _dims_record("cobar", h, {"model": m.name}))


def cmd_bar(args):
    m = _model(args)
    w = _window(args)
    u = uea(m.lie_model(w.hi + 1), DegreeWindow(0, w.hi + 1))
    b = bar(u, DegreeWindow(0, w.hi + 1))
    h = homology(b.complex, w)
    _emit(args, _dims_table(f"H(B U Λ_{m.name})", h), _dims_record("bar", h, {"model": m.name}))


def cmd_cotor(args):
    m = _model(args)
    w = _window(args)
    c = m.coalgebra_model(w.hi + 2)
    left, right = _comodule(args.left, c), _comodule(args.right, c)
    h = cotor(c, left, right, w)
    _emit(args, _dims_table(f"Cotor^C_{m.name}({args.left}, {args.right})", h),
          _dims_record("cotor", h, {"model": m.name, "left": args.left, "right": args.right}))


def cmd_ext(args):
    m = _model(args)
    hi = args.max_degree
    u = uea(m.lie_model(hi + 2), DegreeWindow(0, hi + 2))
    q = trivial_module(u)
    h = ext(u, q, q, DegreeWindow(-hi, 0))
    note = "cohomological: " + ", ".join(f"Ext^{k}={d}" for k, d in cohomological(h).items())
    _emit(args, _dims_table(f"Ext_U(Λ_{m.name})(Q, Q), homological degrees", h, note),
          _dims_record("ext", h, {"model": m.name, "cohomological": serialize.table_out(cohomological(h))}))


def _coext_window(args, n: Comodule) -> DegreeWindow:
    top = max(n.complex.basis, default=0)
    return DegreeWindow(-top, args.max_degree)


def cmd_coext(args):
    m = _model(args)
    c = m.coalgebra_model(_finite_top(args) + 2)
    n, mm = _comodule(args.left, c), _comodule(args.right, c)
    w = _coext_window(args, n)
    h = coext(c, n, mm, w)
    note = "Coext^k is H_{-k}"
    _emit(args, _dims_table(f"Coext^C_{m.name}({args.left}, {args.right}), homological degrees", h, note),
          _dims_record("coext", h, {"model": m.name, "left": args.left, "right": args.right}))


def _finite_top(args) -> int:
    return args.max_degree + 4


def cmd_ss(args):
    m = _model(args)
    if args.which == "hyperext":
        hi = args.max_degree
        u = uea(m.lie_model(hi + 2), DegreeWindow(0, hi + 2))
        q = trivial_module(u)
        ss = hyper_ext_ss(u, q, q, DegreeWindow(-hi, 0))
    else:
        c = m.coalgebra_model(_finite_top(args) + 2)
        n, mm = _comodule(args.left, c), _comodule(args.right, c)
        ss = coext_ss(c, n, mm, _coext_window(args, n))
    pages = sorted(ss.pages)
    shown = [r for r in pages[1:3] if r < ss.last]
    text = "\n\n".join([ss.render(r) for r in shown] + [ss.render()])
    sums = ss.antidiagonal_sums()
    text += "\n\ntotal degree  E∞ sum  abutment\n" + "\n".join(
        f"{n:>12}  {sums[n]:>6}  {ss.abutment[n]:>8}" for n in ss.degrees)
    text += "\n" + "\n".join(ss.notes)
    rec = {
        "kind": "spectral-sequence",
        "convention": ss.convention,
        "pages": [{"r": r, "p": p, "q": q, "dim": d} for r in pages for (p, q), d in sorted(ss.table(r).items())],
        "ranks": [{"r": r, "p": ss.bidegree(l, n)[0], "q": ss.bidegree(l, n)[1], "rank": k}
                  for r in sorted(ss.ranks) for (l, n), k in sorted(ss.ranks[r].items()) if k],
        "abutment": serialize.table_out(ss.abutment),
        "reconciles": ss.reconciles(),
        "notes": ss.notes,
    }
    _emit(args, text, rec)


def cmd_model(args):
    name, *rest = args.name
    m = model_by_name(name, int(rest[0]) if rest else None)
    hi = args.max_degree
    rep = m.validate(hi)
    c = m.coalgebra_model(hi + 1)
    betti = homology(c.complex, DegreeWindow(0, hi)).dims()
    wh = m.whitehead_dims(hi)
    lines = [f"model {m.name}"]
    if m.presentation is not None:
        lines.append("Λ generators: " + ", ".join(f"{g} (degree {d})" for g, d in m.presentation.generators))
        for g, v in m.presentation.differential.items():
            lines.append(f"  d{g} = " + " + ".join(f"{serialize.rational_out(k)}·{w}" for w, k in v.items()))
    else:
        lines.append("Λ = direct sum of " + ", ".join(f.name for f in m.factors))
    lines.append("C_X dims:   " + " ".join(f"{n}:{c.complex.dim(n)}" for n in range(hi + 1)))
    lines.append("Betti:      " + " ".join(f"{n}:{d}" for n, d in betti.items()))
    lines.append("Whitehead (Lie degree n = rational π_{n+1}): " + " ".join(f"{n}:{d}" for n, d in wh.items()))
    lines.append(str(rep))
    rec = model_record(m)
    rec["computed_betti"] = serialize.table_out(betti)
    rec["computed_whitehead"] = serialize.table_out(wh)
    _emit(args, "\n".join(lines), rec)
    if not rep.ok:
        raise DGError(f"invariant-violation: {rep.violations[0]}")


def cmd_check(args):
    from .checks import run_suite

    reps = run_suite(args.max_degree)
    bad = [r for r in reps if not r.ok]
    text = "\n".join(str(r) for r in reps) + f"\n{len(reps) - len(bad)}/{len(reps)} suites pass"
    rec = {"kind": "check", "suites": [{"subject": r.subject, "checks": sum(r.checks.values()),
                                        "violations": r.violations} for r in reps]}
    _emit(args, text, rec)
    return 1 if bad else 0


# -- parser ---------------------------------------------------------------------------


THREADS_VAR = "DGKOSZUL_THREADS"
COMODULES = ("triv", "coalgebra")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", type=int, default=8, help="window [0, D]")
    common.add_argument("--format", choices=("table", "record"), default="table")
    common.add_argument("--output", help="write to FILE instead of stdout")
    common.add_argument("--input", help="input file")

    src = argparse.ArgumentParser(add_help=False)
    src.add_argument("--model", nargs="+", metavar="NAME", help="catalog model: sphere N, cp N, point, S2xS2, S2vS2, CP2")
    src.add_argument("--coalgebra", help="space-model or dg-coalgebra record file")

    sides = argparse.ArgumentParser(add_help=False)
    sides.add_argument("--left", default="triv", choices=COMODULES, help="left comodule")
    sides.add_argument("--right", default="triv", choices=COMODULES, help="right comodule")

    p = argparse.ArgumentParser(prog="dgkoszul", description="Koszul duality computations over the rationals.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("homology", parents=[common], help="homology of a chain-complex or dg-algebra record").set_defaults(fn=cmd_homology)
    sub.add_parser("cobar", parents=[common, src], help="H(ΩC_X)").set_defaults(fn=cmd_cobar)
    sub.add_parser("bar", parents=[common, src], help="H(B U Λ_X)").set_defaults(fn=cmd_bar)
    sub.add_parser("cotor", parents=[common, src, sides], help="Cotor^C_X(left, right)").set_defaults(fn=cmd_cotor)
    sub.add_parser("ext", parents=[common, src], help="Ext over U Λ_X of Q by Q").set_defaults(fn=cmd_ext)
    sub.add_parser("coext", parents=[common, src, sides], help="Coext^C_X(left, right)").set_defaults(fn=cmd_coext)
    ss = sub.add_parser("ss", parents=[common, src, sides], help="spectral sequences")
    ss.add_argument("which", choices=("hyperext", "coext"))
    ss.set_defaults(fn=cmd_ss)
    mp = sub.add_parser("model", parents=[common], help="print a catalog model and its tables")
    mp.add_argument("name", nargs="+", help="sphere N | cp N | point | S2xS2 | S2vS2 | CP2")
    mp.set_defaults(fn=cmd_model)
    sub.add_parser("check", parents=[common], help="run the structural property suite").set_defaults(fn=cmd_check)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on usage errors
    threads = os.environ.get(THREADS_VAR)
    if threads is not None and not (threads.strip().isdigit() and int(threads) > 0):
        parser.error(f"{THREADS_VAR} must be a positive integer, got {threads!r}")
    try:
        status = args.fn(args)
    except DGError as e:
        msg = str(e)
        if msg.startswith("error: usage:"):
            parser.error(msg[len("error: usage: "):])
        print(msg, file=sys.stderr)
        return 1
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
