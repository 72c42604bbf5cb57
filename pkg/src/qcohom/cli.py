"""qcohom command line.

    qcohom group --theory T [--n N | --p P --q Q] --i I [--j J] [--l L | --s S]
    qcohom ring show|mul|basis --theory T ...
    qcohom table sing|I|MW|CW ...
    qcohom verify all|cellular|rings|cw|realization|mw
    qcohom realize-check --n N
  flags: --format md|csv|json  --field reals|complexes|fq:<q>|file:<path>
         --symbolic-only  --window J (weights j <= i + J, default 4)

Exit codes: 0 ok, 1 usage error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from .abelian import FinAbGroup, cohomology
from .catalog import (
    DimensionError,
    Theory,
    check_hom_iso_window,
    ibar_symbolic,
    milnor_symbolic,
    milnor_witt_projective,
    milnor_witt_quadric,
    presentation_for,
    projective_I,
    quadric_I_field,
    realization,
    ring_chow,
    ring_chow_mod2,
    ring_singular_integral,
    ring_singular_mod2,
)
from .cellular import quadric_complex
from .coefficients import OPAQUE, DatumError, SymbolicGroupExpr, builtin_datum
from .presented_ring import DegreeVector, PresentationError, Window, WindowError, check_hom, check_iso, module_basis

GRAMMAR = __doc__.split("\n\n")[1]
FORMATS = ("md", "csv", "json")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class QuerySpec:
    theory: Theory
    n: int | None = None
    p: int | None = None
    q: int | None = None
    i: int | None = None
    j: int | None = None
    twist: int = 0
    field: str = "reals"
    fmt: str = "json"
    window: int = 4

    NEEDS = {
        Theory.SingZ: ("p", "q", "i"),
        Theory.SingMod2: ("p", "q", "i"),
        Theory.SingQ: ("p", "q", "i"),
        Theory.Chow: ("n", "i"),
        Theory.ChMod2: ("n", "i"),
        Theory.Milnor: ("n", "i"),
        Theory.Ibar: ("n", "i"),
        Theory.I: ("i",),
        Theory.MW: ("i",),
        Theory.CW: ("n", "i"),
    }

    def validate(self) -> "QuerySpec":
        missing = [k for k in self.NEEDS[self.theory] if getattr(self, k) is None]
        if self.theory in (Theory.I, Theory.MW) and self.n is None and self.p is None:
            missing.append("n (or p for projective space)")
        if missing:
            raise UsageError(f"theory {self.theory.value} needs --" + ", --".join(missing))
        if self.theory in (Theory.SingZ, Theory.SingMod2, Theory.SingQ) and not 0 <= self.p <= self.q:
            raise UsageError("need 0 <= p <= q")
        if self.j is None:
            self.j = self.i
        if self.j - self.i > self.window:
            raise UsageError(f"weight j={self.j} outside the window j <= i + {self.window}")
        self.twist %= 2
        return self


# -- rendering ------------------------------------------------------------------

def group_record(g) -> dict:
    if g is OPAQUE:
        return {"opaque": True}
    return g.to_dict()


def group_from_record(rec: dict):
    return OPAQUE if rec.get("opaque") else FinAbGroup.from_dict(rec)


def render_group(g, plus: str = "⊕") -> str:
    if g is OPAQUE:
        return "opaque"
    if g.is_zero():
        return "0"
    return f" {plus} ".join("Z" if o == 0 else f"Z/{o}" for o in g.orders)


def render_table(header: list[str], rows: list[list[str]], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([dict(zip(header, r)) for r in rows], ensure_ascii=False)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows([[c.replace("⊕", "+") for c in r] for r in rows])
        return buf.getvalue().rstrip("\n")
    out = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    out += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(out)


# -- group queries --------------------------------------------------------------

def symbolic_for(qs: QuerySpec) -> SymbolicGroupExpr | None:
    t, i, j, l = qs.theory, qs.i, qs.j, qs.twist
    if t is Theory.I:
        return quadric_I_field(qs.n, i, j, l) if qs.n is not None else projective_I(qs.p, i, j, l)
    if t is Theory.MW:
        return milnor_witt_quadric(qs.n, i, j, l) if qs.n is not None else milnor_witt_projective(qs.p, i, j, l)
    if t is Theory.Milnor:
        return milnor_symbolic(qs.n, i, j)
    if t is Theory.Ibar:
        return ibar_symbolic(qs.n, i, j)
    return None


def concrete_for(qs: QuerySpec):
    t = qs.theory
    if t is Theory.SingZ:
        return cohomology(quadric_complex(qs.p, qs.q, qs.twist), qs.i)
    if t is Theory.SingMod2:
        return cohomology(quadric_complex(qs.p, qs.q, 0), qs.i, "Z/2")
    if t is Theory.SingQ:
        return cohomology(quadric_complex(qs.p, qs.q, qs.twist), qs.i, "Q")
    if t is Theory.Chow:
        return module_basis(ring_chow(qs.n), DegreeVector(qs.i, qs.i, 0))[0] if 0 <= qs.i <= 2 * qs.n + 2 else FinAbGroup()
    if t is Theory.ChMod2:
        return module_basis(ring_chow_mod2(qs.n), DegreeVector(qs.i, qs.i, 0))[0] if 0 <= qs.i <= 2 * qs.n + 2 else FinAbGroup()
    if t is Theory.CW:
        from .chow_witt import chow_witt_group

        return chow_witt_group(qs.n, qs.twist, qs.i, builtin_datum(qs.field))
    return builtin_datum(qs.field).evaluate_or_opaque(symbolic_for(qs))


def cmd_group(args) -> int:
    qs = QuerySpec(Theory(args.theory), args.n, args.p, args.q, args.i, args.j,
                   args.l if args.l is not None else (args.s or 0), args.field, args.format or "json",
                   args.window).validate()
    sym = symbolic_for(qs)
    if args.symbolic_only:
        if sym is None:
            raise UsageError(f"theory {qs.theory.value} has no symbolic form")
        print(str(sym))
        return 0
    g = concrete_for(qs)
    if qs.fmt == "json":
        rec = group_record(g)
        if g is OPAQUE:
            rec["symbolic"] = str(sym)
        print(json.dumps(rec, separators=(",", ":")))
    else:
        header = ["theory", "twist", "symbolic", "group"]
        row = [qs.theory.value, str(qs.twist), str(sym) if sym is not None else "", render_group(g)]
        print(render_table(header, [row], qs.fmt))
    return 0


# -- rings ----------------------------------------------------------------------

def _presentation(args):
    t = Theory(args.theory)
    datum = builtin_datum(args.field) if t in (Theory.I, Theory.Milnor) else None
    try:
        return presentation_for(t, n=args.n, p=args.p, q=args.q, datum=datum)
    except TypeError:
        raise UsageError(f"missing dimensions for theory {t.value}") from None


def _degree(args, pres) -> DegreeVector:
    if args.i is None:
        raise UsageError("ring basis needs --i")
    t = Theory(args.theory)
    twist = args.l if args.l is not None else (args.s or 0)
    if t in (Theory.SingZ, Theory.SingMod2, Theory.SingQ):
        return DegreeVector(args.i, 0, twist)
    return DegreeVector(args.i, args.i if args.j is None else args.j, twist if t is Theory.I else 0)


def cmd_ring(args) -> int:
    pres = _presentation(args)
    if args.action == "show":
        print(pres.describe())
        return 0
    if args.action == "basis":
        d = _degree(args, pres)
        win = Window(pres.window.max_i, min(pres.window.max_j, d.i + args.window) if pres.window.max_j else 0)
        g, labels = module_basis(pres, d, win)
        if (args.format or "md") == "json":
            print(json.dumps({"degree": [d.i, d.j, d.t], "group": g.to_dict(), "basis": labels}, separators=(",", ":")))
        else:
            print(render_table(["degree", "group", "basis"], [[str(d), render_group(g), ", ".join(labels)]],
                               args.format or "md"))
        return 0
    if not args.a or not args.b:
        raise UsageError("ring mul needs --a and --b")
    a, b = pres.element(args.a), pres.element(args.b)
    print(str(a * b) if not (a * b).is_zero() else "0")
    return 0


# -- tables ---------------------------------------------------------------------

def _cell(g, labels: list[str]) -> str:
    if g.is_zero():
        return "0"
    return " ⊕ ".join(f"{'Z' if o == 0 else f'Z/{o}'} {lab}" for o, lab in zip(g.orders, labels))


def table_sing(p: int, q: int) -> tuple[list[str], list[list[str]]]:
    """Integral, twisted and mod-2 cohomology of Q_{p,q} with generator names."""
    R, R2 = ring_singular_integral(p, q), ring_singular_mod2(p, q)
    header = ["coefficients"] + [str(i) for i in range(p + q + 1)]
    rows = []
    for name, pres, t, oracle in (("Z", R, 0, "Z"), ("Z(1)", R, 1, "Z"), ("Z/2", R2, 0, "Z/2")):
        row = [name]
        for i in range(p + q + 1):
            g, labels = module_basis(pres, DegreeVector(i, 0, t))
            if g != cohomology(quadric_complex(p, q, t), i, oracle):
                raise PresentationError(f"ring and cellular cohomology disagree at i={i}")
            row.append(_cell(g, labels))
        rows.append(row)
    return header, rows


def _evaluated(expr, datum, symbolic_only: bool) -> str:
    if symbolic_only or datum is None:
        return str(expr)
    g = datum.evaluate_or_opaque(expr)
    return f"{expr} = {render_group(g)}" if g is not OPAQUE else str(expr)


def table_expr(kind: str, n: int, datum, window: int, symbolic_only: bool):
    header = ["l", "j-i"] + [str(i) for i in range(n + 1)]
    rows = []
    fn = quadric_I_field if kind == "I" else milnor_witt_quadric
    for l in (0, 1):
        for k in range(window + 1):
            rows.append([str(l), str(k)] + [_evaluated(fn(n, i, i + k, l), datum, symbolic_only) for i in range(n + 1)])
    return header, rows


def table_cw(n: int, datum):
    from .chow_witt import chow_witt_group

    header = ["l"] + [str(i) for i in range(n + 1)]
    rows = [[str(l)] + [render_group(chow_witt_group(n, l, i, datum)) for i in range(n + 1)] for l in (0, 1)]
    return header, rows


def cmd_table(args) -> int:
    fmt = args.format or "md"
    if args.kind == "sing":
        if args.p is None or args.q is None:
            raise UsageError("table sing needs --p and --q")
        if not 0 <= args.p <= args.q:
            raise UsageError("need 0 <= p <= q")
        header, rows = table_sing(args.p, args.q)
        title = f"Q_{{{args.p},{args.q}}}"
    else:
        if args.n is None:
            raise UsageError(f"table {args.kind} needs --n")
        datum = None if args.symbolic_only else builtin_datum(args.field)
        if args.kind == "CW":
            if datum is None:
                raise UsageError("table CW has no symbolic form")
            header, rows = table_cw(args.n, datum)
        else:
            header, rows = table_expr(args.kind, args.n, datum, args.window, args.symbolic_only)
        title = f"Q_{args.n}" + ("" if datum is None else f" over {datum.field_name}")
    if fmt == "md":
        print(f"{args.kind} cohomology of {title}\n")
    print(render_table(header, rows, fmt))
    return 0


# -- verification ---------------------------------------------------------------

def cmd_verify(args) -> int:
    from .verify import run_suite

    results = run_suite(args.suite)
    fmt = args.format or "md"
    if fmt == "json":
        print(json.dumps([{"check": r.name, "ok": r.ok, "detail": r.detail} for r in results], separators=(",", ":")))
    elif fmt == "csv":
        print(render_table(["check", "ok", "detail"], [[r.name, str(r.ok), r.detail] for r in results], "csv"))
    else:
        for r in results:
            print(r.line())
        failed = sum(not r.ok for r in results)
        print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if all(r.ok for r in results) else 2


def cmd_realize(args) -> int:
    if args.n is None:
        raise UsageError("realize-check needs --n")
    h = realization(args.n, builtin_datum(args.field))
    w = check_hom_iso_window(args.n)
    hom = check_hom(h, w)
    iso = hom and check_iso(h, w)
    print(f"realization Q_{args.n}: homomorphism={'yes' if hom else 'no'} isomorphism={'yes' if iso else 'no'}")
    return 0 if iso else 2


# -- parser ---------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--field", default="reals")
    p.add_argument("--symbolic-only", action="store_true")
    p.add_argument("--window", type=int, default=4, metavar="J")
    for k in ("n", "p", "q", "i", "j", "l", "s"):
        p.add_argument(f"--{k}", type=int)


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="qcohom", add_help=True)
    sub = top.add_subparsers(dest="cmd", parser_class=_Parser)
    theories = [t.value for t in Theory]
    g = sub.add_parser("group")
    _common(g)
    g.add_argument("--theory", required=True, choices=theories)
    r = sub.add_parser("ring")
    r.add_argument("action", choices=("show", "mul", "basis"))
    _common(r)
    r.add_argument("--theory", required=True, choices=theories)
    r.add_argument("--a")
    r.add_argument("--b")
    t = sub.add_parser("table")
    t.add_argument("kind", choices=("sing", "I", "MW", "CW"))
    _common(t)
    v = sub.add_parser("verify")
    v.add_argument("suite", choices=("all", "cellular", "rings", "cw", "realization", "mw"))
    _common(v)
    rc = sub.add_parser("realize-check")
    _common(rc)
    return top


COMMANDS = {"group": cmd_group, "ring": cmd_ring, "table": cmd_table, "verify": cmd_verify, "realize-check": cmd_realize}


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.cmd is None:
            raise UsageError("missing subcommand")
        return COMMANDS[args.cmd](args)
    except UsageError as e:
        print(f"qcohom: {e}\n\nusage:\n{GRAMMAR}", file=sys.stderr)
        return 1
    except (DatumError, DimensionError, WindowError, PresentationError, ValueError) as e:
        print(f"qcohom: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
