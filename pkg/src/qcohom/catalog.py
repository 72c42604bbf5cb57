"""Closed-form tables and ring presentations for projective spaces and split quadrics.

Additive tables come in two flavours: a symbolic one over a general base S,
written as formal sums of H^k(S, coefficient) terms, and the specialization
to a field where only k = 0 survives.  Ring presentations are built for
every theory so the two can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .coefficients import (
    CoefficientDatum,
    CoefficientLabel,
    SymbolicGroupExpr,
    coefficient_ring_presentation,
    label,
)
from .presented_ring import (
    COLLAPSE_TWIST,
    FORGET_WEIGHT,
    IDENTITY,
    TO_CLASSICAL,
    DegreeTransform,
    DegreeVector,
    GradedAlgebraPresentation,
    GradedRingHom,
    Generator,
    PresentationError,
    Window,
    diagonal_subring,
)

D = DegreeVector


class Theory(str, Enum):
    SingZ = "SingZ"
    SingMod2 = "SingMod2"
    SingQ = "SingQ"
    Chow = "Chow"
    ChMod2 = "ChMod2"
    Milnor = "Milnor"
    I = "I"  # noqa: E741
    Ibar = "Ibar"
    MW = "MW"
    CW = "CW"


class DimensionError(ValueError):
    pass


def _need_quadric(n: int) -> None:
    if n < 3:
        raise DimensionError(f"quadric dimension must be at least 3, got {n}")


def split_dims(n: int) -> tuple[int, int]:
    """(p, q) with n = p + q, q = p or p + 1; q is also the codimension of the blow-up centre."""
    p = n // 2
    return p, n - p


def window_for(n: int, extra_weight: int = 4) -> Window:
    return Window(2 * n + 2, 2 * n + 2 + extra_weight)


# -- index sets and additive tables -------------------------------------------

@dataclass(frozen=True)
class IndexSets:
    T: frozenset[int]
    U: frozenset[int]


def index_sets(n: int) -> IndexSets:
    _need_quadric(n)
    lo = range(1, n // 2 + 1)
    hi = range((n + 1) // 2 + 1, n + 1)
    T = {m for m in lo if m % 2 == 0} | {m for m in hi if m % 2 == 1}
    U = {m for m in lo if m % 2 == 1} | {m for m in hi if m % 2 == 0}
    return IndexSets(frozenset(T), frozenset(U))


@dataclass(frozen=True, order=True)
class BaseTerm:
    """H^k(S, lab) for the base scheme S."""

    k: int
    lab: CoefficientLabel

    def __str__(self) -> str:
        return f"H^{self.k}(S, {str(self.lab).replace('(F)', '')})"


@dataclass(frozen=True)
class SymbolicBaseExpr:
    terms: tuple[BaseTerm, ...] = ()

    def __add__(self, o: "SymbolicBaseExpr") -> "SymbolicBaseExpr":
        return SymbolicBaseExpr(tuple(sorted(self.terms + o.terms)))

    def over_field(self) -> SymbolicGroupExpr:
        """H^k(Spec F, X) is X for k = 0 and vanishes otherwise."""
        return SymbolicGroupExpr.of(*(t.lab for t in self.terms if t.k == 0))

    def __str__(self) -> str:
        return " + ".join(map(str, self.terms)) if self.terms else "0"


def _term(i: int, j: int, m: int, fam: str, mult: int = 1) -> SymbolicBaseExpr:
    lab = label(fam, j - m)
    if lab is None or i - m < 0:
        return SymbolicBaseExpr()
    return SymbolicBaseExpr((BaseTerm(i - m, lab),) * mult)


def quadric_I_symbolic(n: int, i: int, j: int, l: int) -> SymbolicBaseExpr:
    """H^i(Q_n, I^j, O(l)) over a general base, as formal sums."""
    _need_quadric(n)
    l %= 2
    p = n // 2
    sets = index_sets(n)
    idx = sets.T if l == 0 else sets.U
    out = SymbolicBaseExpr()
    for m in sorted(idx):
        out = out + _term(i, j, m, "Ibar")
    even = n % 2 == 0
    if l == 0:
        out = out + _term(i, j, 0, "I")
        if even and p % 2 == 0:
            out = out + _term(i, j, n, "I")
        elif even:
            out = out + _term(i, j, p, "I", 2) + _term(i, j, n, "I")
        elif p % 2 == 0:
            out = out + _term(i, j, p + 1, "I")
        else:
            out = out + _term(i, j, p, "I")
    else:
        if even and p % 2 == 0:
            out = out + _term(i, j, p, "I", 2)
        elif even:
            pass
        elif p % 2 == 0:
            out = out + _term(i, j, p, "I") + _term(i, j, n, "I")
        else:
            out = out + _term(i, j, p + 1, "I") + _term(i, j, n, "I")
    return out


def quadric_I_field(n: int, i: int, j: int, l: int) -> SymbolicGroupExpr:
    """H^i(Q_n, I^j, O(l)) over a field, by the case lists."""
    _need_quadric(n)
    l %= 2
    p = n // 2
    same = (l - i) % 2 == 0
    bar = SymbolicGroupExpr.of(label("Ibar", j - i))
    full = SymbolicGroupExpr.of(label("I", j - i))
    if n % 2:
        if 1 <= i <= p and same:
            return bar
        if p + 2 <= i <= n and not same:
            return bar
        if i in (p, p + 1) and not same:
            return full
        if i in (0, n) and same:
            return full
    else:
        if 1 <= i <= p and same:
            return bar
        if p + 1 <= i <= n and not same:
            return bar
        if i == p and not same:
            return full + full
        if i in (0, n) and same:
            return full
    return SymbolicGroupExpr()


def projective_I_symbolic(p: int, i: int, j: int, l: int) -> SymbolicBaseExpr:
    """H^i(P^p, I^j, O(l)) over a general base."""
    if p < 1:
        raise DimensionError("p must be positive")
    l %= 2
    out = SymbolicBaseExpr()
    for m in range(1, p + 1):
        if m % 2 == l:
            out = out + _term(i, j, m, "Ibar")
    if l == 0:
        out = out + _term(i, j, 0, "I")
    if (l + p + 1) % 2 == 0:
        out = out + _term(i, j, p, "I")
    return out


def projective_I(p: int, i: int, j: int, l: int) -> SymbolicGroupExpr:
    """H^i(P^p, I^j, O(l)) over a field."""
    if p < 1:
        raise DimensionError("p must be positive")
    l %= 2
    if 1 <= i <= p and (l - i) % 2 == 0:
        return SymbolicGroupExpr.of(label("Ibar", j - i))
    if i == 0 and l == 0:
        return SymbolicGroupExpr.of(label("I", j))
    if i == p and (l + p + 1) % 2 == 0:
        return SymbolicGroupExpr.of(label("I", j - i))
    return SymbolicGroupExpr()


def milnor_witt_projective(n: int, i: int, j: int, l: int) -> SymbolicGroupExpr:
    """H^i(P^n, K^MW_j, O(l)) over a field."""
    l %= 2
    if not 0 <= i <= n:
        return SymbolicGroupExpr()
    same = (l - i) % 2 == 0
    if (i == 0 and same) or (i == n and not same):
        return SymbolicGroupExpr.of(label("KMW", j - i))
    if i != 0 and same:
        return SymbolicGroupExpr.of(label("KM", j - i))
    if i != n and not same:
        return SymbolicGroupExpr.of(label("2KM", j - i))
    return SymbolicGroupExpr()


def _mw_split(n: int, i: int, j: int, l: int) -> SymbolicGroupExpr:
    p, q = split_dims(n)
    return milnor_witt_projective(p, i - q, j - q, l + 1 - q) + milnor_witt_projective(p, i, j, l)


def _mw_table(n: int, i: int, j: int, l: int) -> SymbolicGroupExpr:
    l %= 2
    p = n // 2
    same = (l - i) % 2 == 0
    kmw = SymbolicGroupExpr.of(label("KMW", j - i))
    km = SymbolicGroupExpr.of(label("KM", j - i))
    km2 = SymbolicGroupExpr.of(label("2KM", j - i))
    if not 0 <= i <= n:
        return SymbolicGroupExpr()
    if n % 2 == 0:
        if i in (0, n) and same:
            return kmw
        if i == p:
            return kmw + kmw if not same else km + km2
        if (0 < i < p and same) or (p < i <= n and not same):
            return km
        if (0 <= i < p and not same) or (p < i < n and same):
            return km2
    else:
        if (i in (0, n) and same) or (i in (p, p + 1) and not same):
            return kmw
        if (0 < i <= p and same) or (p + 1 < i <= n and not same):
            return km
        if (0 <= i < p and not same) or (p + 1 <= i < n and same):
            return km2
    raise SelfCheckError(f"no Milnor-Witt case for n={n} i={i} l={l}")


class SelfCheckError(AssertionError):
    pass


def milnor_witt_quadric(n: int, i: int, j: int, l: int) -> SymbolicGroupExpr:
    """H^i(Q_n, K^MW_j, O(l)), computed by the splitting and by the case table."""
    _need_quadric(n)
    a, b = _mw_split(n, i, j, l), _mw_table(n, i, j, l)
    if not a.equivalent(b):
        raise SelfCheckError(f"Milnor-Witt paths disagree at n={n} i={i} j={j} l={l}: {a} vs {b}")
    return b


def rank_chow(n: int, i: int) -> int:
    """Rank of CH^i(Q_n)."""
    if not 0 <= i <= n:
        return 0
    return 2 if n % 2 == 0 and i == n // 2 else 1


def milnor_symbolic(n: int, i: int, j: int) -> SymbolicGroupExpr:
    """H^i(Q_n, K^M_j): a free K^M_*-module on the Chow basis."""
    return SymbolicGroupExpr.of(label("KM", j - i), mult=rank_chow(n, i))


def ibar_symbolic(n: int, i: int, j: int) -> SymbolicGroupExpr:
    """H^i(Q_n, Ibar^j): free over H(F, Ibar) on the mod-2 Chow basis."""
    return SymbolicGroupExpr.of(label("Ibar", j - i), mult=rank_chow(n, i))


# -- ring presentations -------------------------------------------------------

def _g(name, i, j=0, t=0, cap=None, rule=()):
    return Generator(name, D(i, j, t), cap, tuple(rule))


@lru_cache(maxsize=None)
def ring_singular_integral(p: int, q: int) -> GradedAlgebraPresentation:
    """H^*(Q_{p,q}, Z + Z(1)); the twist component records the coefficient system."""
    if not 1 <= p <= q:
        raise DimensionError("need 1 <= p <= q")
    rels = ["2*xi", f"xi^{p + 1}", "xi*alpha", "alpha^2"]
    rels.append("beta^2 - alpha*beta" if p == q and p % 2 == 0 else "beta^2")
    gens = [_g("xi", 1, 0, 1), _g("alpha", p, 0, p + 1), _g("beta", q, 0, q + 1)]
    return GradedAlgebraPresentation(f"H(Q_{p},{q}; Z)", gens, rels, window=Window(2 * (p + q) + 2, 0))


@lru_cache(maxsize=None)
def ring_singular_mod2(p: int, q: int) -> GradedAlgebraPresentation:
    if not 1 <= p <= q:
        raise DimensionError("need 1 <= p <= q")
    rels = ["2", f"xi^{p + 1}", "zeta^2 + xi^%d*zeta" % p if p == q and p % 2 == 0 else "zeta^2"]
    gens = [_g("xi", 1), _g("zeta", q)]
    return GradedAlgebraPresentation(f"H(Q_{p},{q}; Z/2)", gens, rels, sign_rule="none",
                                     window=Window(2 * (p + q) + 2, 0))


@lru_cache(maxsize=None)
def ring_singular_rational(p: int, q: int) -> GradedAlgebraPresentation:
    if not 1 <= p <= q:
        raise DimensionError("need 1 <= p <= q")
    gens = [_g("alpha", p, 0, p + 1), _g("beta", q, 0, q + 1)]
    return GradedAlgebraPresentation(f"H(Q_{p},{q}; Q)", gens, ["alpha^2", "beta^2"], rational=True,
                                     window=Window(2 * (p + q) + 2, 0))


def _chow_parts(n: int) -> tuple[int, list[str]]:
    _need_quadric(n)
    p = n // 2
    if n % 2 == 0:
        rels = [f"x^{p + 1} - 2*x*y", f"y^2 - x^{p}*y" if p % 2 == 0 else "y^2"]
        return p, rels
    return p + 1, [f"x^{p + 1} - 2*y", "y^2"]


@lru_cache(maxsize=None)
def ring_chow(n: int) -> GradedAlgebraPresentation:
    dy, rels = _chow_parts(n)
    gens = [_g("x", 1, 1), _g("y", dy, dy)]
    return GradedAlgebraPresentation(f"CH(Q_{n})", gens, rels, sign_rule="none", window=window_for(n))


@lru_cache(maxsize=None)
def ring_chow_mod2(n: int) -> GradedAlgebraPresentation:
    dy, rels = _chow_parts(n)
    gens = [_g("x", 1, 1), _g("y", dy, dy)]
    return GradedAlgebraPresentation(f"Ch(Q_{n})", gens, ["2"] + rels, sign_rule="none", window=window_for(n))


@lru_cache(maxsize=None)
def ring_ch_tau(n: int) -> GradedAlgebraPresentation:
    """CH(Q_n)[tau]/(tau^2 - 1); tau records the twist."""
    dy, rels = _chow_parts(n)
    gens = [_g("x", 1, 1), _g("y", dy, dy), _g("tau", 0, 0, 1, cap=1, rule=(1, 0))]
    return GradedAlgebraPresentation(f"CH(Q_{n})[tau]", gens, rels, sign_rule="none", window=window_for(n))


def ring_milnor(n: int, datum: CoefficientDatum | None = None) -> GradedAlgebraPresentation:
    """H(Q_n, K^M) = K^M_*(F) tensor CH(Q_n).

    Without a datum only K^M_0 = Z is modelled, which is the diagonal part.
    Finite fields add a weight-one generator e with (q-1)e = e^2 = 0.
    """
    dy, rels = _chow_parts(n)
    gens = [_g("x", 1, 1), _g("y", dy, dy)]
    if datum is not None:
        if datum.kind != "fq":
            raise PresentationError(f"K^M_*({datum.field_name}) has no finite presentation")
        gens.insert(0, _g("e", 0, 1))
        rels = rels + [f"{datum.q - 1}*e", "e^2"]
    name = f"H(Q_{n}, K^M)" + (f" over {datum.field_name}" if datum else "")
    return GradedAlgebraPresentation(name, gens, rels, sign_rule="none", window=window_for(n))


@lru_cache(maxsize=None)
def ring_Ibar(n: int) -> GradedAlgebraPresentation:
    _need_quadric(n)
    p = n // 2
    q = n - p
    b2 = f"beta^2 - xi^{p}*beta" if n % 2 == 0 and p % 2 == 0 else "beta^2"
    gens = [_g("xi", 1, 1), _g("beta", q, q)]
    return GradedAlgebraPresentation(f"H(Q_{n}, Ibar)", gens, ["2", f"xi^{p + 1}", b2], sign_rule="none",
                                     window=window_for(n))


def _coefficient_part(datum: CoefficientDatum):
    cr = coefficient_ring_presentation(datum)
    gens = [_g(name, *deg, cap=cap, rule=rule) for name, deg, cap, rule in cr.generators]
    return gens, list(cr.relations), list(cr.ideal)


def ring_I_total(n: int, datum: CoefficientDatum) -> GradedAlgebraPresentation:
    """H(Q_n, I, O + O(1)) over the field of ``datum``, with weights j >= 0."""
    _need_quadric(n)
    p = n // 2
    q = n - p
    cgens, crels, ideal = _coefficient_part(datum)
    gens = cgens + [_g("xi", 1, 1, 1), _g("alpha", p, p, p - 1), _g("beta", q, q, q - 1)]
    rels = crels + [f"({g})*xi" for g in ideal] + [f"xi^{p + 1}"]
    if n % 2 == 0 and p % 2 == 0:
        rels += ["xi*alpha + xi*beta", "alpha^2 + beta^2", "alpha*beta"]
    elif n % 2 == 0:
        rels += ["xi*alpha + xi*beta", "alpha^2", "beta^2"]
    else:
        rels += ["xi*alpha", "alpha^2", "beta^2"]
    return GradedAlgebraPresentation(f"H(Q_{n}, I) over {datum.field_name}", gens, rels, window=window_for(n))


def ring_I_diagonal(n: int, datum: CoefficientDatum) -> GradedAlgebraPresentation:
    return diagonal_subring(ring_I_total(n, datum), f"H(Q_{n}, I^i) over {datum.field_name}")


def ring_I_projective(p: int, datum: CoefficientDatum) -> GradedAlgebraPresentation:
    if p < 1:
        raise DimensionError("p must be positive")
    cgens, crels, ideal = _coefficient_part(datum)
    gens = cgens + [_g("xi", 1, 1, 1), _g("alpha", p, p, p + 1)]
    rels = crels + [f"({g})*xi" for g in ideal] + [f"xi^{p + 1}", "xi*alpha", "alpha^2"]
    return GradedAlgebraPresentation(f"H(P^{p}, I) over {datum.field_name}", gens, rels, window=window_for(p))


# -- homomorphisms ------------------------------------------------------------

def _coefficient_images(src: GradedAlgebraPresentation) -> dict[str, int]:
    # the reduction W -> Ibar^0 = Z/2 is the rank mod 2; d = <u> has rank one
    return {g.name: 1 for g in src.generators if g.degree.i == 0 and g.degree.j == 0}


def red_I_to_Ibar(n: int, datum: CoefficientDatum) -> GradedRingHom:
    """Reduction H(Q_n, I^i, O(l)) -> H(Q_n, Ibar^i) on the diagonal."""
    p = n // 2
    src = ring_I_diagonal(n, datum)
    tgt = ring_Ibar(n)
    imgs: dict = _coefficient_images(src)
    imgs.update({"xi": "xi", "alpha": f"xi^{p}" if n % 2 else f"xi^{p} - beta", "beta": "beta"})
    return GradedRingHom(src, tgt, COLLAPSE_TWIST, imgs, "reduction I -> Ibar")


def mod2_singular(p: int, q: int) -> GradedRingHom:
    src, tgt = ring_singular_integral(p, q), ring_singular_mod2(p, q)
    return GradedRingHom(src, tgt, COLLAPSE_TWIST, {"xi": "xi", "alpha": f"xi^{p}", "beta": "zeta"},
                         "mod-2 reduction")


def realization(n: int, datum: CoefficientDatum) -> GradedRingHom:
    """Real realization on the diagonal, landing in H(Q_{p,q}; Z + Z(1))."""
    if datum.kind != "reals":
        raise PresentationError("real realization needs the reals as base field")
    p, q = split_dims(n)
    src = ring_I_diagonal(n, datum)
    tgt = ring_singular_integral(p, q)
    imgs = {"xi": "xi", "alpha": "alpha - beta" if n % 2 == 0 else "alpha", "beta": "beta"}
    return GradedRingHom(src, tgt, FORGET_WEIGHT, imgs, "real realization")


def check_hom_iso_window(n: int) -> Window:
    """Diagonal window used when comparing with the real points."""
    return Window(2 * n + 2, 2 * n + 2)


def ibar_vs_ch(n: int, delta: int = 0) -> GradedRingHom:
    """Ch(Q_n) -> H(Q_n, Ibar) on the diagonal."""
    if delta not in (0, 1):
        raise ValueError("delta is 0 or 1")
    p = n // 2
    src, tgt = ring_chow_mod2(n), ring_Ibar(n)
    y = f"beta + xi^{p}" if (n % 2 == 0 and delta) else "beta"
    return GradedRingHom(src, tgt, IDENTITY, {"x": "xi", "y": y}, f"Ch -> Ibar (delta={delta})")


def chow_mod2(n: int) -> GradedRingHom:
    return GradedRingHom(ring_chow(n), ring_chow_mod2(n), IDENTITY, {"x": "x", "y": "y"}, "CH -> Ch")


def ibar_to_mod2_singular(n: int) -> GradedRingHom:
    """H(Q_n, Ibar) -> H(Q_{p,q}; Z/2), xi -> xi and beta -> zeta."""
    p, q = split_dims(n)
    return GradedRingHom(ring_Ibar(n), ring_singular_mod2(p, q), TO_CLASSICAL, {"xi": "xi", "beta": "zeta"},
                         "Ibar -> mod-2 singular")


def presentation_for(theory: Theory | str, *, n: int | None = None, p: int | None = None, q: int | None = None,
                     datum: CoefficientDatum | None = None) -> GradedAlgebraPresentation:
    t = Theory(theory)
    if t is Theory.SingZ:
        return ring_singular_integral(p, q)
    if t is Theory.SingMod2:
        return ring_singular_mod2(p, q)
    if t is Theory.SingQ:
        return ring_singular_rational(p, q)
    if t is Theory.Chow:
        return ring_chow(n)
    if t is Theory.ChMod2:
        return ring_chow_mod2(n)
    if t is Theory.Milnor:
        return ring_milnor(n, datum if datum is not None and datum.kind == "fq" else None)
    if t is Theory.Ibar:
        return ring_Ibar(n)
    if t is Theory.I:
        if n is None:
            return ring_I_projective(p, datum)
        return ring_I_total(n, datum)
    raise PresentationError(f"no ring presentation for theory {t.value}")


__all__ = [name for name in dir() if not name.startswith("_")] + ["DegreeTransform"]
