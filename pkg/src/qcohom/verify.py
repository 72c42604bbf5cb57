"""Verification suites shared by the CLI and the acceptance tests.

Each suite returns a list of CheckResult in a fixed order, so reports are
reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import FinAbGroup, cohomology
from .catalog import (
    SelfCheckError,
    _mw_split,
    _mw_table,
    check_hom_iso_window,
    milnor_witt_quadric,
    projective_I,
    projective_I_symbolic,
    quadric_I_field,
    quadric_I_symbolic,
    realization,
    ring_I_projective,
    ring_I_total,
    ring_singular_integral,
    ring_singular_mod2,
)
from .cellular import QuadricSpec, expected_reduction_kind, quadric_complex, reduction_kinds
from .coefficients import OPAQUE, builtin_datum, finite_field, reals, witt_oracle
from .presented_ring import DegreeVector as D
from .presented_ring import check_hom, check_iso, module_basis

SUITES = ("cellular", "rings", "realization", "mw", "cw")


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def _summarize(name: str, bad: list[str], total: int) -> CheckResult:
    if bad:
        shown = "; ".join(bad[:5]) + (" ..." if len(bad) > 5 else "")
        return CheckResult(name, False, f"{len(bad)}/{total} cases differ: {shown}")
    return CheckResult(name, True, f"{total} cases")


# -- singular cohomology --------------------------------------------------------

def singular_ring_vs_cellular(pmax: int = 6) -> CheckResult:
    bad, total = [], 0
    for p in range(1, pmax + 1):
        for q in range(p, pmax + 1):
            R, R2 = ring_singular_integral(p, q), ring_singular_mod2(p, q)
            for i in range(p + q + 1):
                for s in (0, 1):
                    total += 1
                    if module_basis(R, D(i, 0, s))[0] != cohomology(quadric_complex(p, q, s), i):
                        bad.append(f"Z({s}) p={p} q={q} i={i}")
                total += 1
                if module_basis(R2, D(i, 0, 0))[0] != cohomology(quadric_complex(p, q, 0), i, "Z/2"):
                    bad.append(f"Z/2 p={p} q={q} i={i}")
    return _summarize("singular ring = cellular cohomology", bad, total)


def singular_square_relations(pmax: int = 6) -> CheckResult:
    bad, total = [], 0
    for p in range(1, pmax + 1):
        for q in range(p, pmax + 1):
            total += 1
            special = p == q and p % 2 == 0
            R = ring_singular_integral(p, q)
            a, b = R.gen("alpha"), R.gen("beta")
            if p == q:
                holds = (b * b - a * b).is_zero(), (b * b).is_zero()
            else:
                holds = False, (b * b).is_zero()
            if holds != (special, not special):
                bad.append(f"beta^2 at p={p} q={q}")
            R2 = ring_singular_mod2(p, q)
            x, z = R2.gen("xi"), R2.gen("zeta")
            if p == q:
                holds = (z * z - x ** p * z).is_zero(), (z * z).is_zero()
            else:
                holds = False, (z * z).is_zero()
            if holds != (special, not special):
                bad.append(f"zeta^2 at p={p} q={q}")
    return _summarize("square relations of beta and zeta", bad, total)


def reduction_classification(pmax: int = 6) -> CheckResult:
    bad, total = [], 0
    for p in range(1, pmax + 1):
        for q in range(p, pmax + 1):
            spec = QuadricSpec(p, q)
            for s in (0, 1):
                for i in range(p + q + 1):
                    total += 1
                    src = cohomology(spec.complex(s), i)
                    want = expected_reduction_kind(src, p, q, s, i)
                    got = reduction_kinds(spec, s, i)
                    ok = {
                        "surjective": "surjective" in got,
                        "injective": "injective" in got,
                        "iso": "iso" in got,
                        "zero": src.is_zero(),
                    }.get(want, False)
                    if not ok:
                        bad.append(f"p={p} q={q} s={s} i={i}: expected {want}, got {sorted(got)}")
    return _summarize("mod-2 reduction classification", bad, total)


def poincare_and_euler(pmax: int = 6) -> CheckResult:
    bad, total = [], 0
    for p in range(1, pmax + 1):
        for q in range(p, pmax + 1):
            n, w = p + q, (p + q) % 2
            for s in (0, 1):
                ranks = [cohomology(quadric_complex(p, q, s), i, "Q").free_rank for i in range(n + 1)]
                dual = [cohomology(quadric_complex(p, q, s + w), n - i, "Q").free_rank for i in range(n + 1)]
                c = quadric_complex(p, q, s)
                chi = sum((-1) ** k * r for k, r in enumerate(c.ranks))
                total += 1
                if ranks != dual or chi != sum((-1) ** i * r for i, r in enumerate(ranks)):
                    bad.append(f"p={p} q={q} s={s}")
    return _summarize("Poincare rank symmetry and Euler characteristic", bad, total)


def cellular_suite() -> list[CheckResult]:
    return [singular_ring_vs_cellular(), singular_square_relations(), reduction_classification(), poincare_and_euler()]


# -- I-cohomology ---------------------------------------------------------------

FIELDS_FOR_CROSSCHECK = ("reals", "complexes", "fq:3", "fq:5")


def quadric_crosscheck(nrange=range(3, 11), fields=FIELDS_FOR_CROSSCHECK, extra: int = 3) -> CheckResult:
    bad, total = [], 0
    for name in fields:
        F = builtin_datum(name)
        for n in nrange:
            R = ring_I_total(n, F)
            for l in (0, 1):
                for i in range(n + 1):
                    for j in range(i, i + extra + 1):
                        total += 1
                        a = F.evaluate(quadric_I_field(n, i, j, l))
                        b = F.evaluate(quadric_I_symbolic(n, i, j, l).over_field())
                        c = module_basis(R, D(i, j, l))[0]
                        if not a == b == c:
                            bad.append(f"{name} n={n} i={i} j={j} l={l}: {a} / {b} / {c}")
    return _summarize("I-cohomology of Q_n: case list = additive theorem = ring", bad, total)


def projective_crosscheck(prange=range(1, 9), fields=FIELDS_FOR_CROSSCHECK, extra: int = 3) -> CheckResult:
    bad, total = [], 0
    for name in fields:
        F = builtin_datum(name)
        for p in prange:
            R = ring_I_projective(p, F)
            for l in (0, 1):
                for i in range(p + 1):
                    for j in range(i, i + extra + 1):
                        total += 1
                        a = F.evaluate(projective_I(p, i, j, l))
                        b = F.evaluate(projective_I_symbolic(p, i, j, l).over_field())
                        c = module_basis(R, D(i, j, l))[0]
                        if not a == b == c:
                            bad.append(f"{name} p={p} i={i} j={j} l={l}: {a} / {b} / {c}")
    return _summarize("I-cohomology of P^p: field case = ring", bad, total)


def quadric_ring_relations(nrange=range(3, 9), fields=("reals", "fq:3")) -> CheckResult:
    """Listed relations vanish and the additive generators survive, in every field."""
    bad, total = [], 0
    for name in fields:
        F = builtin_datum(name)
        for n in nrange:
            R = ring_I_total(n, F)
            p = n // 2
            xi, al, be = R.gen("xi"), R.gen("alpha"), R.gen("beta")
            rels = [xi ** (p + 1)]
            if n % 2:
                rels += [xi * al, al * al, be * be]
            elif p % 2 == 0:
                rels += [xi * al + xi * be, al * al + be * be, al * be]
            else:
                rels += [xi * al + xi * be, al * al, be * be]
            for k, r in enumerate(rels):
                total += 1
                if not r.is_zero():
                    bad.append(f"{name} n={n} relation #{k} = {r}")
            nonzero = [("alpha", al), ("beta", be), ("xi^p", xi ** p)]
            nonzero += [(f"xi^{k}*beta", xi ** k * be) for k in range(1, p + 1 if n % 2 else p)]
            if n % 2:
                nonzero.append(("alpha*beta", al * be))
            elif p % 2 == 0:
                nonzero.append(("beta^2", be * be))
            else:
                nonzero.append(("alpha*beta", al * be))
            for label_, e in nonzero:
                total += 1
                if e.is_zero():
                    bad.append(f"{name} n={n} {label_} vanishes")
    return _summarize("I-ring relations and surviving generators", bad, total)


def witt_oracle_check(qs=(3, 5, 7, 11, 13)) -> CheckResult:
    from .coefficients import CoefficientLabel

    bad = []
    for q in qs:
        got = witt_oracle(q, 4)
        want = finite_field(q).lookup(CoefficientLabel("W", 0))
        if got != want:
            bad.append(f"q={q}: oracle {got}, datum {want}")
    return _summarize("Witt groups of finite fields by counting forms", bad, len(qs))


def rings_suite() -> list[CheckResult]:
    return [quadric_crosscheck(), projective_crosscheck(), quadric_ring_relations(), witt_oracle_check()]


# -- realization ----------------------------------------------------------------

def realization_check(n: int) -> CheckResult:
    h = realization(n, reals())
    w = check_hom_iso_window(n)
    hom = check_hom(h, w)
    iso = hom and check_iso(h, w)
    detail = "homomorphism and isomorphism" if iso else ("homomorphism, not bijective" if hom else "not a homomorphism")
    return CheckResult(f"real realization for Q_{n}", iso, detail)


def realization_suite(nrange=range(3, 11)) -> list[CheckResult]:
    return [realization_check(n) for n in nrange]


# -- Milnor-Witt ----------------------------------------------------------------

def _opaque_expected(expr) -> bool:
    return any(lab.family in ("KM", "2KM", "KMW") and lab.index >= 1 for lab in expr.summands)


def mw_suite(nrange=range(3, 11)) -> list[CheckResult]:
    bad, bad3, badR, total = [], [], [], 0
    F3, R = finite_field(3), reals()
    for n in nrange:
        for i in range(-1, n + 2):
            for l in (0, 1):
                for j in (i, i + 1, i + 2):
                    total += 1
                    try:
                        milnor_witt_quadric(n, i, j, l)
                    except SelfCheckError:
                        bad.append(f"n={n} i={i} j={j} l={l}")
                        continue
                    expr = _mw_table(n, i, j, l)
                    if not _mw_split(n, i, j, l).equivalent(expr):
                        bad.append(f"n={n} i={i} j={j} l={l}")
                    if F3.evaluate_or_opaque(expr) is OPAQUE:
                        bad3.append(f"n={n} i={i} j={j} l={l}")
                    if (R.evaluate_or_opaque(expr) is OPAQUE) != _opaque_expected(expr):
                        badR.append(f"n={n} i={i} j={j} l={l}: {expr}")
    return [
        _summarize("Milnor-Witt: splitting = case table", bad, total),
        _summarize("Milnor-Witt over F_3 is concrete", bad3, total),
        _summarize("Milnor-Witt over R is opaque exactly at positive Milnor weight", badR, total),
    ]


# -- Chow-Witt ------------------------------------------------------------------

def cw_suite(nrange=range(3, 9)) -> list[CheckResult]:
    from . import chow_witt as cw

    out = []
    bad_list, bad_delta, bad_tau, bad_ring, total = [], [], [], [], 0
    for n in nrange:
        R = cw.ker_partial(n, 0)
        for l in (0, 1):
            total += 1
            K = cw.ker_partial(n, l)
            diff = cw.same_lattices(K, cw.ker_partial_from_list(n, l))
            if diff:
                bad_list.append(f"n={n} l={l} degrees {diff}")
            if cw.same_lattices(K, cw.ker_partial(n, l, delta=1)):
                bad_delta.append(f"n={n} l={l}")
            if cw.same_lattices(cw.module_closure(K, R), K):
                bad_ring.append(f"n={n} l={l}")
        if not cw.cw_tau_check(n):
            bad_tau.append(f"n={n}")
    out.append(_summarize("ker d equals the closed-form generator lists", bad_list, total))
    out.append(_summarize("ker d does not depend on delta", bad_delta, total))
    out.append(_summarize("ker d is a subring / module over it", bad_ring, total))
    out.append(_summarize("ker d equals the tau-graded subring", bad_tau, len(nrange)))

    bad_gw, bad_rank, bad_mw, cnt = [], [], [], 0
    GW = {"reals": FinAbGroup(2), "fq:3": FinAbGroup(1, (2,))}
    for n in nrange:
        for name, want in GW.items():
            F = builtin_datum(name)
            got = cw.chow_witt_group(n, 0, 0, F)
            if got != want:
                bad_gw.append(f"{name} n={n}: {got}")
            for l in (0, 1):
                for i in range(n + 1):
                    cnt += 1
                    c = cw.chow_witt(n, l, i, F)
                    if c.group.free_rank != c.I_group.free_rank + c.ker_rank - c.common.free_rank:
                        bad_rank.append(f"{name} n={n} l={l} i={i}")
                    mw = F.evaluate(milnor_witt_quadric(n, i, i, l))
                    if mw != c.group:
                        bad_mw.append(f"{name} n={n} l={l} i={i}: {c.group} vs {mw}")
    out.append(_summarize("CW^0 is GW of the field", bad_gw, 2 * len(nrange)))
    out.append(_summarize("rank identity for the fibre product", bad_rank, cnt))
    out.append(_summarize("CW^i agrees with Milnor-Witt cohomology in weight i", bad_mw, cnt))
    return out


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        return [r for s in SUITES for r in run_suite(s)]
    return {
        "cellular": cellular_suite,
        "rings": rings_suite,
        "realization": realization_suite,
        "mw": mw_suite,
        "cw": cw_suite,
    }[name]()
