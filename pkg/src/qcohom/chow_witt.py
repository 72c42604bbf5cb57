"""Chow-Witt groups of split quadrics as fibre products.

CW^i(Q_n, O(l)) = H^i(Q_n, I^i, O(l)) x_{Ch^i} ker(d), where ker(d) is the
preimage in CH^i of the image of the reduction H^i(I^i, O(l)) -> Ch^i.  The
boundary map itself is never formed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .abelian import FinAbGroup, GroupHom, Rows, fiber_product, hermite_basis, left_kernel
from .catalog import (
    chow_mod2,
    ibar_vs_ch,
    red_I_to_Ibar,
    ring_ch_tau,
    ring_chow,
    split_dims,
)
from .coefficients import CoefficientDatum, reals
from .presented_ring import DegreeVector, GradedAlgebraPresentation, PresentationError, RingElement

D = DegreeVector


class CompatibilityError(AssertionError):
    pass


# -- small F_2 helpers ----------------------------------------------------------

def _f2_echelon(rows: Rows, n: int) -> Rows:
    rows = [[x % 2 for x in r] for r in rows]
    out: Rows = []
    for c in range(n):
        piv = next((r for r in rows if r[c] and all(not r[k] for k in range(c))), None)
        if piv is None:
            continue
        rows.remove(piv)
        rows = [[(a + b) % 2 for a, b in zip(r, piv)] if r[c] else r for r in rows]
        out = [[(a + b) % 2 for a, b in zip(r, piv)] if r[c] else r for r in out]
        out.append(piv)
    return sorted(out, reverse=True)


def _f2_solve(M: Rows, v: list[int]) -> list[int]:
    """c with c*M = v over F_2, M square and invertible."""
    k = len(M)
    # solve M^T c^T = v^T
    A = [[M[r][c] % 2 for r in range(k)] + [v[c] % 2] for c in range(k)]
    row = 0
    for col in range(k):
        piv = next((r for r in range(row, k) if A[r][col]), None)
        if piv is None:
            raise CompatibilityError("transport map is not invertible mod 2")
        A[row], A[piv] = A[piv], A[row]
        for r in range(k):
            if r != row and A[r][col]:
                A[r] = [(a + b) % 2 for a, b in zip(A[r], A[row])]
        row += 1
    return [A[r][k] for r in range(k)]


# -- pieces ---------------------------------------------------------------------

def _group_coords_mod2(e: RingElement) -> list[int]:
    return [x % 2 for x in e.group_coords()]


@lru_cache(maxsize=None)
def _rings(n: int, datum_key: str, delta: int):
    datum = _DATA[datum_key]
    red, vs, mod2 = red_I_to_Ibar(n, datum), ibar_vs_ch(n, delta), chow_mod2(n)
    return {"I": red.source, "red": red, "vs": vs, "CH": mod2.source, "Ch": vs.source, "mod2": mod2}


_DATA: dict[str, CoefficientDatum] = {}


def _key(datum: CoefficientDatum) -> str:
    _DATA.setdefault(datum.field_name, datum)
    return datum.field_name


def _transport_matrix(n: int, i: int, datum_key: str, delta: int) -> Rows:
    """Rows: images in Ibar^i coordinates of the Ch^i generators."""
    R = _rings(n, datum_key, delta)
    vs, Ch = R["vs"], R["Ch"]
    pc = Ch.piece(D(i, i, 0))
    rows = []
    for g in pc.sub.gens:
        elem = RingElement.from_poly(Ch, D(i, i, 0), {pc.monomials[k]: c for k, c in enumerate(g) if c})
        rows.append(_group_coords_mod2(vs(elem)))
    return rows


def _to_ch(n: int, i: int, datum_key: str, delta: int, ibar_coords: list[int]) -> list[int]:
    M = _transport_matrix(n, i, datum_key, delta)
    if not M:
        return []
    return _f2_solve(M, ibar_coords)


def _gen_elements(pres: GradedAlgebraPresentation, d: DegreeVector) -> list[RingElement]:
    pc = pres.piece(d)
    return [RingElement.from_poly(pres, d, {pc.monomials[k]: c for k, c in enumerate(g) if c}) for g in pc.sub.gens]


def _i_piece_images(n: int, l: int, i: int, datum_key: str, delta: int) -> tuple[FinAbGroup, Rows]:
    """The (i,i,l) I-group and the Ch^i coordinates of its generators."""
    R = _rings(n, datum_key, delta)
    d = D(i, i, l)
    group = R["I"].piece(d).group
    imgs = [_to_ch(n, i, datum_key, delta, _group_coords_mod2(R["red"](e))) for e in _gen_elements(R["I"], d)]
    return group, imgs


@dataclass(frozen=True)
class F2Subspace:
    """Subspace of (Z/2)^dim given by an echelon basis."""

    dim: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, dim: int, rows: Rows) -> "F2Subspace":
        return cls(dim, tuple(tuple(r) for r in _f2_echelon(rows, dim) if any(r)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: list[int]) -> bool:
        return len(_f2_echelon([list(b) for b in self.basis] + [list(v)], self.dim)) == len(self.basis)


def reduction_image(n: int, l: int, i: int, datum: CoefficientDatum | None = None, delta: int = 0) -> F2Subspace:
    """Image of H^i(Q_n, I^i, O(l)) in Ch^i, in the invariant-factor coordinates of Ch^i."""
    datum = datum or reals()
    k = _key(datum)
    dim = _rings(n, k, delta)["Ch"].piece(D(i, i, 0)).group.ngens
    _, imgs = _i_piece_images(n, l % 2, i, k, delta)
    return F2Subspace.span(dim, imgs)


def _check_no_two_torsion(CH: GradedAlgebraPresentation, n: int) -> None:
    for i in range(n + 1):
        if CH.piece(D(i, i, 0)).group.torsion:
            raise PresentationError(f"CH^{i}(Q_{n}) has torsion; the fibre product description does not apply")


def _mod2_matrix(n: int, i: int, datum_key: str, delta: int) -> Rows:
    R = _rings(n, datum_key, delta)
    return [_group_coords_mod2(R["mod2"](e)) for e in _gen_elements(R["CH"], D(i, i, 0))]


@dataclass
class KerPartialPresentation:
    """ker(d) for O(l) as one lattice per degree, in the free coordinates of CH^i."""

    n: int
    twist: int
    ambient: GradedAlgebraPresentation
    lattices: dict[int, Rows] = field(default_factory=dict)

    def generators(self, i: int) -> list[RingElement]:
        gens = _gen_elements(self.ambient, D(i, i, 0))
        out = []
        for row in self.lattices[i]:
            e = self.ambient.zero(D(i, i, 0))
            for c, g in zip(row, gens):
                e = e + c * g
            out.append(e)
        return out

    def contains(self, e: RingElement) -> bool:
        i = e.degree.i
        if e.degree != D(i, i, 0):
            return False
        return lattice_contains(self.lattices.get(i, []), list(e.group_coords()))

    def describe(self) -> str:
        lines = [f"ker d for Q_{self.n}, O({self.twist})"]
        for i in sorted(self.lattices):
            lines.append(f"  degree {i}: <" + ", ".join(map(str, self.generators(i))) + ">")
        return "\n".join(lines)


def lattice_contains(hnf: Rows, v: list[int]) -> bool:
    from .abelian import hnf_reduce

    return not any(hnf_reduce(v, hnf)) if hnf else not any(v)


def ker_partial(n: int, l: int, datum: CoefficientDatum | None = None, delta: int = 0) -> KerPartialPresentation:
    datum = datum or reals()
    k = _key(datum)
    R = _rings(n, k, delta)
    CH = R["CH"]
    _check_no_two_torsion(CH, n)
    out = KerPartialPresentation(n, l % 2, CH)
    for i in range(n + 1):
        r = CH.piece(D(i, i, 0)).group.ngens
        M = _mod2_matrix(n, i, k, delta)
        img = reduction_image(n, l, i, datum, delta)
        kdim = img.dim
        if kdim == 0:
            out.lattices[i] = hermite_basis([[int(a == b) for b in range(r)] for a in range(r)], r)
            continue
        stacked = M + [list(b) for b in img.basis] + [[2 * int(a == b) for b in range(kdim)] for a in range(kdim)]
        lat = [v[:r] for v in left_kernel(stacked, kdim)]
        out.lattices[i] = hermite_basis(lat, r)
    return out


# -- the explicit lists ---------------------------------------------------------

def _span_products(CH: GradedAlgebraPresentation, gens: list[RingElement], i: int, include_unit: bool) -> Rows:
    """HNF of the Z-span of all products of ``gens`` landing in degree i."""
    d = D(i, i, 0)
    vecs = []
    if i == 0 and include_unit:
        vecs.append(list(CH.element(1).group_coords()))
    degs = [g.degree.i for g in gens]

    def rec(k, rem, acc):
        if rem == 0 and acc is not None:
            vecs.append(list(acc.group_coords()))
            return
        if k == len(gens) or rem < 0:
            return
        rec(k + 1, rem, acc)
        e, prod_ = 1, acc
        while degs[k] * e <= rem:
            prod_ = gens[k] if prod_ is None else prod_ * gens[k]
            rec(k + 1, rem - degs[k] * e, prod_)
            e += 1

    rec(0, i, None)
    r = CH.piece(d).group.ngens
    return hermite_basis(vecs, r) if vecs else []


def _sum_lattices(r: int, *parts: Rows) -> Rows:
    rows = [row for p in parts for row in p]
    return hermite_basis(rows, r) if rows else []


def ker_partial_from_list(n: int, l: int) -> KerPartialPresentation:
    """ker(d) as generated by the closed-form lists: subrings for O, modules for O(1)."""
    p = n // 2
    CH = ring_chow(n)
    x, y = CH.gen("x"), CH.gen("y")
    E = lambda s: CH.element(s)  # noqa: E731
    even, peven = n % 2 == 0, p % 2 == 0
    out = KerPartialPresentation(n, l % 2, CH)
    if l % 2 == 0:
        if even and peven:
            gens = [2 * x, 2 * y, x * y, x * x, y * y]
        elif even:
            gens = [2 * x, x * x, E(f"x^{p}"), y]
        elif peven:
            gens = [2 * x, x * x, y]
        else:
            gens = [2 * x, 2 * y, x * y, x * x, E(f"x^{p}")]
        for i in range(n + 1):
            out.lattices[i] = _span_products(CH, gens, i, include_unit=True)
        return out
    if even and peven:
        inner, with_y = [x * x, x * y], True
    elif even:
        inner, with_y = [x * x, E(f"x^{p}"), y], False
    elif peven:
        inner, with_y = [x * x, y, E(f"x^{p - 1}*y")], False
    else:
        inner, with_y = [x * x, E(f"x^{p}"), x * y, E(f"x^{p - 1}*y")], True
    for i in range(n + 1):
        r = CH.piece(D(i, i, 0)).group.ngens
        parts = []
        if i >= 1:
            sub = _span_products(CH, inner, i - 1, include_unit=True)
            xg = [list((x * g).group_coords()) for g in _lattice_elements(CH, i - 1, sub)]
            parts.append(xg)
        if with_y and i == y.degree.i:
            parts.append([list(y.group_coords())])
        parts.append([[2 * int(a == b) for b in range(r)] for a in range(r)])
        out.lattices[i] = _sum_lattices(r, *parts)
    return out


def module_closure(base: KerPartialPresentation, over: KerPartialPresentation) -> KerPartialPresentation:
    """Smallest submodule over the ring ``over`` containing ``base``."""
    CH = base.ambient
    out = KerPartialPresentation(base.n, base.twist, CH, {i: list(v) for i, v in base.lattices.items()})
    changed = True
    while changed:
        changed = False
        for i in range(base.n + 1):
            for a in range(1, i + 1):
                gens_r = over.generators(a) if over.lattices.get(a) else []
                gens_m = out.generators(i - a) if out.lattices.get(i - a) else []
                new = [list((u * v).group_coords()) for u in gens_r for v in gens_m]
                r = CH.piece(D(i, i, 0)).group.ngens
                merged = _sum_lattices(r, out.lattices.get(i, []), new)
                if merged != out.lattices.get(i, []):
                    out.lattices[i] = merged
                    changed = True
    return out


def _lattice_elements(CH: GradedAlgebraPresentation, i: int, hnf: Rows) -> list[RingElement]:
    gens = _gen_elements(CH, D(i, i, 0))
    out = []
    for row in hnf:
        e = CH.zero(D(i, i, 0))
        for c, g in zip(row, gens):
            e = e + c * g
        out.append(e)
    return out


def same_lattices(a: KerPartialPresentation, b: KerPartialPresentation) -> list[int]:
    """Degrees where the two descriptions differ."""
    return [i for i in range(a.n + 1) if a.lattices.get(i, []) != b.lattices.get(i, [])]


def cw_tau_lattices(n: int) -> dict[tuple[int, int], Rows]:
    """Per (degree, twist): lattice generated by 2tau, 2x, 2y, x tau, x^p tau^(p+1), y tau^(q+1), in CH coordinates."""
    p, _ = split_dims(n)
    T = ring_ch_tau(n)
    CH = ring_chow(n)
    dy = CH.gen("y").degree.i
    gens = [T.element(s) for s in ("2*tau", "2*x", "2*y", "x*tau", f"x^{p}*tau^{(p + 1) % 2}", f"y*tau^{(dy + 1) % 2}")]
    out: dict[tuple[int, int], Rows] = {}
    for t in (0, 1):
        for i in range(n + 1):
            vecs = []
            if i == 0 and t == 0:
                vecs.append(T.element(1))
            vecs += _products_in(T, gens, D(i, i, t))
            r = CH.piece(D(i, i, 0)).group.ngens
            rows = [_tau_to_ch(CH, e) for e in vecs]
            out[(i, t)] = hermite_basis(rows, r) if rows else []
    return out


def _products_in(T: GradedAlgebraPresentation, gens: list[RingElement], d: DegreeVector, cap0: int = 2) -> list[RingElement]:
    """All products of ``gens`` of degree d; degree-0 generators used at most ``cap0`` times."""
    res = []

    def rec(k, acc, deg):
        if deg.i > d.i:
            return
        if k == len(gens):
            if acc is not None and deg == d:
                res.append(acc)
            return
        g = gens[k]
        top = cap0 if g.degree.i == 0 else (d.i - deg.i) // g.degree.i
        cur, cdeg = acc, deg
        rec(k + 1, cur, cdeg)
        for _ in range(top):
            cur = g if cur is None else cur * g
            cdeg = cdeg + g.degree
            rec(k + 1, cur, cdeg)

    rec(0, None, D(0, 0, 0))
    return res


def _tau_to_ch(CH: GradedAlgebraPresentation, e: RingElement) -> list[int]:
    # drop tau: every monomial of the piece has the same tau exponent
    poly = {m[:2]: c for m, c in e.poly().items()}
    return list(RingElement.from_poly(CH, D(e.degree.i, e.degree.i, 0), poly).group_coords())


def cw_tau_check(n: int, datum: CoefficientDatum | None = None) -> bool:
    tau = cw_tau_lattices(n)
    kers = {t: ker_partial(n, t, datum) for t in (0, 1)}
    return all(tau[(i, t)] == kers[t].lattices[i] for t in (0, 1) for i in range(n + 1))


# -- Chow-Witt groups and elements -----------------------------------------------

@dataclass(frozen=True)
class ChowWittGroup:
    group: FinAbGroup
    to_I: GroupHom
    to_ker: GroupHom
    I_group: FinAbGroup
    ker_rank: int
    common: FinAbGroup


def chow_witt(n: int, l: int, i: int, datum: CoefficientDatum | None = None, delta: int = 0) -> ChowWittGroup:
    datum = datum or reals()
    k = _key(datum)
    R = _rings(n, k, delta)
    ch_group = R["Ch"].piece(D(i, i, 0)).group
    A, a_imgs = _i_piece_images(n, l % 2, i, k, delta) if 0 <= i <= n else (FinAbGroup(), [])
    if not 0 <= i <= n:
        z = FinAbGroup()
        return ChowWittGroup(z, GroupHom(z, z), GroupHom(z, z), z, 0, z)
    f = GroupHom.from_images(A, ch_group, [ch_group.reduce(v) for v in a_imgs])
    ker = ker_partial(n, l, datum, delta)
    lat = ker.lattices[i]
    M = _mod2_matrix(n, i, k, delta)
    B = FinAbGroup(len(lat))
    g_imgs = []
    for row in lat:
        v = [0] * ch_group.ngens
        for c, m in zip(row, M):
            v = [a + c * b for a, b in zip(v, m)]
        g_imgs.append(ch_group.reduce(v))
    g = GroupHom.from_images(B, ch_group, g_imgs)
    P, pa, pb = fiber_product(f, g)
    from .abelian import hom_image

    common = hom_image(f)
    return ChowWittGroup(P, pa, pb, A, len(lat), common)


def chow_witt_group(n: int, l: int, i: int, datum: CoefficientDatum | None = None, delta: int = 0) -> FinAbGroup:
    return chow_witt(n, l, i, datum, delta).group


@dataclass(frozen=True)
class ChowWittElement:
    n: int
    I_part: RingElement
    CH_part: RingElement
    datum_key: str

    def __post_init__(self):
        i, l = self.I_part.degree.i, self.I_part.degree.t
        if self.I_part.degree != D(i, i, l) or self.CH_part.degree != D(i, i, 0):
            raise CompatibilityError("parts live in different degrees")
        R = _rings(self.n, self.datum_key, 0)
        left = R["red"](self.I_part)
        right = R["vs"](R["mod2"](self.CH_part))
        if left.coords != right.coords:
            raise CompatibilityError(f"reductions differ: {left} vs {right}")

    @property
    def degree(self) -> tuple[int, int]:
        return self.I_part.degree.i, self.I_part.degree.t

    def __str__(self) -> str:
        return f"({self.I_part}, {self.CH_part})"


def cw_element(n: int, I_part: str | RingElement, CH_part: str | RingElement, l: int = 0,
               datum: CoefficientDatum | None = None) -> ChowWittElement:
    datum = datum or reals()
    k = _key(datum)
    R = _rings(n, k, 0)
    if isinstance(CH_part, str):
        CH_part = R["CH"].element(CH_part) if CH_part.strip() not in ("0", "") else None
    if isinstance(I_part, str):
        I_part = R["I"].element(I_part) if I_part.strip() not in ("0", "") else None
    if I_part is None and CH_part is None:
        raise ValueError("give at least one nonzero part")
    if I_part is None:
        i = CH_part.degree.i
        I_part = R["I"].zero(D(i, i, l))
    if CH_part is None:
        i = I_part.degree.i
        CH_part = R["CH"].zero(D(i, i, 0))
    return ChowWittElement(n, I_part, CH_part, k)


def cw_multiply(a: ChowWittElement, b: ChowWittElement) -> ChowWittElement:
    if a.n != b.n or a.datum_key != b.datum_key:
        raise ValueError("elements of different rings")
    return ChowWittElement(a.n, a.I_part * b.I_part, a.CH_part * b.CH_part, a.datum_key)


def cw_unit(n: int, datum: CoefficientDatum | None = None) -> ChowWittElement:
    return cw_element(n, "1", "1", 0, datum)
