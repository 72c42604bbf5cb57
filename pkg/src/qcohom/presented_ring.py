"""Finitely presented graded-commutative algebras over Z, computed degree by degree.

Each graded piece is the free abelian group on the monomials of that degree
modulo the lattice spanned by (monomial) * (relation).  Canonical forms come
from the Hermite basis of that lattice; groups from its Smith form.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .abelian import (
    FinAbGroup,
    GroupHom,
    Rows,
    Subquotient,
    hermite_basis,
    hnf_reduce,
    is_iso,
    presented,
    rank_rational,
)

Monomial = tuple[int, ...]
Poly = dict[Monomial, int]


class WindowError(ValueError):
    pass


class PresentationError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class DegreeVector:
    i: int
    j: int = 0
    t: int = 0

    def __post_init__(self):
        object.__setattr__(self, "t", self.t % 2)

    def __add__(self, o: "DegreeVector") -> "DegreeVector":
        return DegreeVector(self.i + o.i, self.j + o.j, self.t + o.t)

    def __sub__(self, o: "DegreeVector") -> "DegreeVector":
        return DegreeVector(self.i - o.i, self.j - o.j, self.t - o.t)

    def scale(self, k: int) -> "DegreeVector":
        return DegreeVector(self.i * k, self.j * k, self.t * k)

    def __str__(self) -> str:
        return f"({self.i},{self.j},{self.t})"


ZERO_DEGREE = DegreeVector(0, 0, 0)


@dataclass(frozen=True)
class Window:
    """Degrees with 0 <= i <= max_i and 0 <= j <= max_j."""

    max_i: int
    max_j: int

    def contains(self, d: DegreeVector) -> bool:
        return 0 <= d.i <= self.max_i and 0 <= d.j <= self.max_j

    def degrees(self) -> Iterable[DegreeVector]:
        for i in range(self.max_i + 1):
            for j in range(self.max_j + 1):
                for t in (0, 1):
                    yield DegreeVector(i, j, t)


@dataclass(frozen=True)
class Generator:
    name: str
    degree: DegreeVector
    cap: int | None = None
    # g^(cap+1) = sum_k rule[k] g^k
    rule: tuple[int, ...] = ()


SIGN_RULES = ("cohomological", "none")


def _cache_dir() -> str | None:
    return os.environ.get("QCOHOM_CACHE_DIR") or None


@dataclass
class _Piece:
    degree: DegreeVector
    monomials: list[Monomial]
    index: dict[Monomial, int]
    hnf: Rows
    sub: Subquotient | None
    group: FinAbGroup


class GradedAlgebraPresentation:
    """Generators, relations and a sign rule.

    ``relations`` may be polynomial strings in the generator names or dicts
    from exponent tuples to coefficients.  ``rational`` presentations report
    ranks only.
    """

    def __init__(
        self,
        name: str,
        generators: Sequence[Generator],
        relations: Sequence[Union[str, Mapping[Monomial, int]]] = (),
        sign_rule: str = "cohomological",
        rational: bool = False,
        window: Window | None = None,
        notes: str = "",
    ):
        if sign_rule not in SIGN_RULES:
            raise PresentationError(f"unknown sign rule {sign_rule!r}")
        self.name = name
        self.generators = tuple(generators)
        self.names = tuple(g.name for g in self.generators)
        if len(set(self.names)) != len(self.names):
            raise PresentationError("duplicate generator names")
        self.sign_rule = sign_rule
        self.rational = rational
        self.notes = notes
        for g in self.generators:
            d = g.degree
            if d.i < 0 or d.j < 0:
                raise PresentationError(f"generator {g.name} has negative degree")
            if d.i == 0 and d.j == 0:
                if g.cap is None or len(g.rule) != g.cap + 1:
                    raise PresentationError("degree-0 subring not finite under declared caps")
        self._parity = tuple(
            (g.degree.i % 2) if sign_rule == "cohomological" else 0 for g in self.generators
        )
        self.window = window or Window(16, 16)
        self._pieces: dict[DegreeVector, _Piece] = {}
        self.relation_texts: list[str] = []
        rels: list[tuple[DegreeVector, Poly]] = []
        for r in relations:
            poly = self.parse(r) if isinstance(r, str) else self._normalize(r)
            if not poly:
                continue
            rels.append((self._homogeneous_degree(poly, r), poly))
            self.relation_texts.append(r if isinstance(r, str) else self.format_poly(poly))
        self.explicit_relations = list(rels)
        # odd generators square to 2-torsion under the Koszul rule
        for k, g in enumerate(self.generators):
            if self._parity[k]:
                m = [0] * len(self.generators)
                m[k] = 2
                rels.append((g.degree.scale(2), {tuple(m): 2}))
        self.relations = rels

    # -- monomial arithmetic --------------------------------------------------

    def monomial_degree(self, m: Monomial) -> DegreeVector:
        i = j = t = 0
        for e, g in zip(m, self.generators):
            if e:
                i += e * g.degree.i
                j += e * g.degree.j
                t += e * g.degree.t
        return DegreeVector(i, j, t)

    def _reorder_sign(self, a: Monomial, b: Monomial) -> int:
        # moving each generator of b leftwards past the later generators of a
        par = self._parity
        s = 0
        acc = 0  # parity-weighted count of a's generators to the right of position l
        for l in range(len(a) - 1, -1, -1):
            if par[l] and b[l]:
                s += b[l] * acc
            if par[l]:
                acc += a[l]
        return -1 if s % 2 else 1

    def _reduce_caps(self, m: Monomial, c: int, out: Poly) -> None:
        for k, g in enumerate(self.generators):
            if g.cap is not None and m[k] > g.cap:
                base = list(m)
                base[k] = m[k] - g.cap - 1
                for p, co in enumerate(g.rule):
                    if co:
                        nm = list(base)
                        nm[k] += p
                        self._reduce_caps(tuple(nm), c * co, out)
                return
        out[m] = out.get(m, 0) + c

    def mono_mul(self, a: Monomial, b: Monomial) -> Poly:
        s = self._reorder_sign(a, b)
        out: Poly = {}
        self._reduce_caps(tuple(x + y for x, y in zip(a, b)), s, out)
        return {m: c for m, c in out.items() if c}

    def poly_mul(self, p: Poly, q: Poly) -> Poly:
        out: Poly = {}
        for a, ca in p.items():
            for b, cb in q.items():
                for m, c in self.mono_mul(a, b).items():
                    out[m] = out.get(m, 0) + ca * cb * c
        return {m: c for m, c in out.items() if c}

    def _normalize(self, poly: Mapping[Monomial, int]) -> Poly:
        out: Poly = {}
        for m, c in poly.items():
            if len(m) != len(self.generators):
                raise PresentationError("monomial length mismatch")
            self._reduce_caps(tuple(m), c, out)
        return {m: c for m, c in out.items() if c}

    def _homogeneous_degree(self, poly: Poly, src) -> DegreeVector:
        degs = {self.monomial_degree(m) for m in poly}
        if len(degs) != 1:
            raise PresentationError(f"relation {src!r} is not homogeneous")
        return degs.pop()

    def unit(self) -> Monomial:
        return (0,) * len(self.generators)

    def gen_monomial(self, name: str) -> Monomial:
        m = [0] * len(self.generators)
        m[self.names.index(name)] = 1
        return tuple(m)

    # -- parsing and printing -------------------------------------------------

    def parse(self, text: str) -> Poly:
        import sympy
        from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

        syms = {n: sympy.Symbol(n, commutative=False) for n in self.names}
        try:
            expr = parse_expr(text, local_dict=syms, transformations=standard_transformations + (convert_xor,))
        except Exception as e:  # sympy raises a zoo of types here
            raise PresentationError(f"cannot parse {text!r}: {e}") from None
        expr = sympy.expand(expr)
        out: Poly = {}
        for term in sympy.Add.make_args(expr):
            if term == 0:
                continue
            comm, nc = term.args_cnc()
            coeff = sympy.Mul(*comm)
            if not coeff.is_Integer:
                raise PresentationError(f"non-integer or unknown factor in {text!r}: {coeff}")
            poly: Poly = {self.unit(): int(coeff)}
            for f in nc:
                base, e = f.as_base_exp()
                if str(base) not in self.names or not e.is_Integer or e < 0:
                    raise PresentationError(f"unknown factor {f} in {text!r}")
                poly = self.poly_mul(poly, {self._power(str(base), int(e)): 1})
            for m, c in poly.items():
                out[m] = out.get(m, 0) + c
        return {m: c for m, c in out.items() if c}

    def _power(self, name: str, e: int) -> Monomial:
        m = [0] * len(self.generators)
        m[self.names.index(name)] = e
        return tuple(m)

    def format_monomial(self, m: Monomial) -> str:
        parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(self.names, m) if e]
        return "*".join(parts) if parts else "1"

    def format_poly(self, poly: Mapping[Monomial, int]) -> str:
        if not poly:
            return "0"
        out = ""
        for m in sorted(poly, key=self._order_key):
            c = poly[m]
            mono = self.format_monomial(m)
            mag = abs(c)
            body = mono if mag == 1 and mono != "1" else (str(mag) if mono == "1" else f"{mag}*{mono}")
            out += (" - " if c < 0 else " + ") + body if out else (("-" if c < 0 else "") + body)
        return out

    # -- graded pieces ----------------------------------------------------------

    def _order_key(self, m: Monomial):
        # pure powers first so that they are the ones the Hermite form eliminates
        nvars = sum(1 for e, g in zip(m, self.generators) if e and g.degree.i > 0)
        coeff = sum(e for e, g in zip(m, self.generators) if g.degree.i == 0)
        return (nvars, -coeff, tuple(-e for e in m))

    def monomials(self, d: DegreeVector) -> list[Monomial]:
        if d.i < 0 or d.j < 0:
            return []
        gens = self.generators
        out: list[Monomial] = []

        def rec(k, ri, rj, acc):
            if k == len(gens):
                if ri == 0 and rj == 0:
                    out.append(tuple(acc))
                return
            g = gens[k].degree
            if g.i == 0 and g.j == 0:
                top = gens[k].cap
            else:
                top = min(ri // g.i if g.i else 10 ** 9, rj // g.j if g.j else 10 ** 9)
            for e in range(top + 1):
                acc.append(e)
                rec(k + 1, ri - e * g.i, rj - e * g.j, acc)
                acc.pop()

        rec(0, d.i, d.j, [])
        out = [m for m in out if self.monomial_degree(m).t == d.t]
        return sorted(out, key=self._order_key)

    def piece(self, d: DegreeVector) -> _Piece:
        pc = self._pieces.get(d)
        if pc is not None:
            return pc
        monos = self.monomials(d)
        index = {m: k for k, m in enumerate(monos)}
        n = len(monos)
        rows: Rows = []
        for rd, rel in self.relations:
            for m in self.monomials(d - rd):
                prod_ = self.poly_mul({m: 1}, rel)
                if prod_:
                    v = [0] * n
                    for mm, c in prod_.items():
                        v[index[mm]] += c
                    if any(v):
                        rows.append(v)
        hnf = hermite_basis(rows, n)
        if self.rational:
            sub = None
            group = FinAbGroup(n - rank_rational(hnf, n) if hnf else n)
        else:
            sub = presented(n, hnf)
            group = sub.group
        pc = _Piece(d, monos, index, hnf, sub, group)
        self._pieces.setdefault(d, pc)
        return self._pieces[d]

    def fingerprint(self) -> str:
        spec = {
            "gens": [(g.name, (g.degree.i, g.degree.j, g.degree.t), g.cap, g.rule) for g in self.generators],
            "rels": [sorted((list(m), c) for m, c in r.items()) for _, r in self.relations],
            "sign": self.sign_rule,
            "rational": self.rational,
        }
        return hashlib.sha256(json.dumps(spec, sort_keys=True).encode()).hexdigest()[:20]

    # -- elements ---------------------------------------------------------------

    def element(self, value: Union[str, Mapping[Monomial, int], int], degree: DegreeVector | None = None) -> "RingElement":
        if isinstance(value, int):
            poly = {self.unit(): value} if value else {}
        elif isinstance(value, str):
            poly = self.parse(value)
        else:
            poly = self._normalize(value)
        if poly:
            d = self._homogeneous_degree(poly, value)
            if degree is not None and d != degree:
                raise PresentationError(f"{value!r} has degree {d}, expected {degree}")
        elif degree is None:
            raise PresentationError("the zero element needs an explicit degree")
        else:
            d = degree
        return RingElement.from_poly(self, d, poly)

    def gen(self, name: str) -> "RingElement":
        return self.element({self.gen_monomial(name): 1})

    def zero(self, d: DegreeVector) -> "RingElement":
        return RingElement.from_poly(self, d, {})

    def describe(self) -> str:
        gens = ", ".join(f"{g.name}{g.degree}" for g in self.generators)
        rels = ", ".join(self.relation_texts) or "none"
        flag = " (ranks only)" if self.rational else ""
        return f"{self.name}{flag}\n  generators: {gens}\n  relations: {rels}\n  signs: {self.sign_rule}"


@dataclass(frozen=True, eq=False)
class RingElement:
    pres: GradedAlgebraPresentation
    degree: DegreeVector
    coords: tuple[int, ...]

    @classmethod
    def from_poly(cls, pres: GradedAlgebraPresentation, d: DegreeVector, poly: Mapping[Monomial, int]) -> "RingElement":
        pc = pres.piece(d)
        v = [0] * len(pc.monomials)
        for m, c in poly.items():
            v[pc.index[m]] += c
        return cls(pres, d, tuple(hnf_reduce(v, pc.hnf)))

    def poly(self) -> Poly:
        pc = self.pres.piece(self.degree)
        return {pc.monomials[k]: c for k, c in enumerate(self.coords) if c}

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, o: "RingElement"):
        if o.pres is not self.pres or o.degree != self.degree:
            raise PresentationError("elements live in different pieces")

    def __eq__(self, o) -> bool:
        if not isinstance(o, RingElement):
            return NotImplemented
        return o.pres is self.pres and o.degree == self.degree and o.coords == self.coords

    def __hash__(self):
        return hash((id(self.pres), self.degree, self.coords))

    def __add__(self, o: "RingElement") -> "RingElement":
        self._check(o)
        pc = self.pres.piece(self.degree)
        return RingElement(self.pres, self.degree, tuple(hnf_reduce([a + b for a, b in zip(self.coords, o.coords)], pc.hnf)))

    def __neg__(self) -> "RingElement":
        return (-1) * self

    def __sub__(self, o: "RingElement") -> "RingElement":
        return self + (-o)

    def __rmul__(self, k: int) -> "RingElement":
        pc = self.pres.piece(self.degree)
        return RingElement(self.pres, self.degree, tuple(hnf_reduce([k * a for a in self.coords], pc.hnf)))

    def __mul__(self, o):
        if isinstance(o, int):
            return o * self
        return multiply(self, o)

    def __pow__(self, e: int) -> "RingElement":
        out = self.pres.element(1)
        for _ in range(e):
            out = out * self
        return out

    def group_coords(self) -> tuple[int, ...]:
        """Coordinates in the invariant-factor basis of the piece."""
        pc = self.pres.piece(self.degree)
        if pc.sub is None:
            raise PresentationError("rational presentations have no integral coordinates")
        return pc.sub.coords(self.coords)

    def __str__(self) -> str:
        return self.pres.format_poly(self.poly())

    __repr__ = __str__


def module_basis(pres: GradedAlgebraPresentation, d: DegreeVector, window: Window | None = None) -> tuple[FinAbGroup, list[str]]:
    """Group in degree d and labels of the monomials spanning it."""
    window = window or pres.window
    if not window.contains(d):
        raise WindowError(f"degree {d} outside window {window}")
    cdir = _cache_dir()
    path = None
    if cdir:
        path = os.path.join(cdir, f"{pres.fingerprint()}-{d.i}-{d.j}-{d.t}.json")
        if os.path.exists(path):
            with open(path) as fh:
                data = json.load(fh)
            return FinAbGroup.from_dict(data["group"]), data["labels"]
    pc = pres.piece(d)
    labels = basis_labels(pres, d)
    if path:
        os.makedirs(cdir, exist_ok=True)
        tmp = f"{path}.{os.getpid()}.tmp"
        with open(tmp, "w") as fh:
            json.dump({"group": pc.group.to_dict(), "labels": labels}, fh)
        os.replace(tmp, path)
    return pc.group, labels


def basis_labels(pres: GradedAlgebraPresentation, d: DegreeVector) -> list[str]:
    """One label per invariant-factor generator; a single monomial when possible."""
    pc = pres.piece(d)
    if pc.sub is None:
        pivots = {next(c for c, x in enumerate(r) if x) for r in pc.hnf}
        return [pres.format_monomial(m) for k, m in enumerate(pc.monomials) if k not in pivots]
    out = []
    for g in pc.sub.gens:
        red = hnf_reduce(g, pc.hnf)
        out.append(pres.format_poly({pc.monomials[k]: c for k, c in enumerate(red) if c}))
    return out


def multiply(a: RingElement, b: RingElement) -> RingElement:
    if a.pres is not b.pres:
        raise PresentationError("elements of different presentations")
    pres = a.pres
    d = a.degree + b.degree
    if not pres.window.contains(d):
        raise WindowError(f"product degree {d} outside window {pres.window}")
    return RingElement.from_poly(pres, d, pres.poly_mul(a.poly(), b.poly()))


def equals(a: RingElement, b: RingElement) -> bool:
    return a == b


def is_zero(a: RingElement) -> bool:
    return a.is_zero()


# -- homomorphisms ------------------------------------------------------------

@dataclass(frozen=True)
class DegreeTransform:
    """Linear map on (i, j, t); the twist row is read mod 2."""

    matrix: tuple[tuple[int, int, int], tuple[int, int, int], tuple[int, int, int]]
    name: str = ""

    def __call__(self, d: DegreeVector) -> DegreeVector:
        v = (d.i, d.j, d.t)
        r = [sum(a * b for a, b in zip(row, v)) for row in self.matrix]
        return DegreeVector(r[0], r[1], r[2])


IDENTITY = DegreeTransform(((1, 0, 0), (0, 1, 0), (0, 0, 1)), "identity")
COLLAPSE_TWIST = DegreeTransform(((1, 0, 0), (0, 1, 0), (0, 0, 0)), "collapse twist")
FORGET_WEIGHT = DegreeTransform(((1, 0, 0), (0, 0, 0), (0, 0, 1)), "(i,j,t) -> (i,0,t)")
TO_CLASSICAL = DegreeTransform(((1, 0, 0), (0, 0, 0), (0, 0, 0)), "(i,j,t) -> (i,0,0)")


class GradedRingHom:
    def __init__(
        self,
        source: GradedAlgebraPresentation,
        target: GradedAlgebraPresentation,
        transform: DegreeTransform,
        images: Mapping[str, Union[str, RingElement, int]],
        name: str = "",
    ):
        self.source, self.target, self.transform, self.name = source, target, transform, name
        self.images: dict[str, RingElement] = {}
        for g in source.generators:
            v = images.get(g.name, 0)
            if isinstance(v, RingElement):
                self.images[g.name] = v
            else:
                self.images[g.name] = target.element(v, degree=transform(g.degree) if v in (0, "0") else None)
        self._mono_cache: dict[Monomial, Poly] = {}

    def degrees_ok(self) -> bool:
        return all(self.images[g.name].degree == self.transform(g.degree) for g in self.source.generators)

    def _image_poly(self, m: Monomial) -> Poly:
        hit = self._mono_cache.get(m)
        if hit is not None:
            return hit
        t = self.target
        out: Poly = {t.unit(): 1}
        for g, e in zip(self.source.generators, m):
            gp = self.images[g.name].poly()
            for _ in range(e):
                out = t.poly_mul(out, gp)
        self._mono_cache[m] = out
        return out

    def apply_poly(self, poly: Mapping[Monomial, int], d: DegreeVector) -> RingElement:
        out: Poly = {}
        for m, c in poly.items():
            for mm, cc in self._image_poly(m).items():
                out[mm] = out.get(mm, 0) + c * cc
        return RingElement.from_poly(self.target, self.transform(d), {m: c for m, c in out.items() if c})

    def __call__(self, a: RingElement) -> RingElement:
        if a.pres is not self.source:
            raise PresentationError("element is not in the source")
        return self.apply_poly(a.poly(), a.degree)

    def compose_after(self, first: "GradedRingHom", name: str = "") -> "GradedRingHom":
        """self o first."""
        tr = DegreeTransform(
            tuple(tuple(sum(self.transform.matrix[r][k] * first.transform.matrix[k][c] for k in range(3))
                        for c in range(3)) for r in range(3)),
            f"{self.transform.name} o {first.transform.name}",
        )
        imgs = {n: self(first.images[n]) for n in first.source.names}
        return GradedRingHom(first.source, self.target, tr, imgs, name)

    def piece_map(self, d: DegreeVector) -> GroupHom:
        """Induced map of invariant-factor groups from degree d to transform(d)."""
        ps = self.source.piece(d)
        pt = self.target.piece(self.transform(d))
        if ps.sub is None or pt.sub is None:
            raise PresentationError("piece maps need integral presentations")
        imgs = []
        for g in ps.sub.gens:
            poly = {ps.monomials[k]: c for k, c in enumerate(g) if c}
            imgs.append(pt.sub.coords(self.apply_poly(poly, d).coords))
        return GroupHom.from_images(ps.group, pt.group, imgs)


def _all_relations(pres: GradedAlgebraPresentation) -> list[tuple[DegreeVector, Poly]]:
    out = list(pres.relations)
    for k, g in enumerate(pres.generators):
        if g.cap is not None:
            m = [0] * len(pres.generators)
            m[k] = g.cap + 1
            # the raw power, before cap reduction, minus its declared rewrite
            raw: Poly = {tuple(m): 1}
            for p, c in enumerate(g.rule):
                mm = [0] * len(pres.generators)
                mm[k] = p
                raw[tuple(mm)] = raw.get(tuple(mm), 0) - c
            out.append((g.degree.scale(g.cap + 1), raw))
    return out


def check_hom(h: GradedRingHom, window: Window | None = None) -> bool:
    """Generators land in the right degrees, relations and commutators map to zero."""
    window = window or h.source.window
    if not h.degrees_ok():
        return False
    src, tgt = h.source, h.target
    for d, rel in _all_relations(src):
        if not window.contains(d):
            continue
        # capped powers are evaluated literally, not through the source's rewrite
        out: Poly = {}
        for m, c in rel.items():
            img: Poly = {tgt.unit(): 1}
            for g, e in zip(src.generators, m):
                for _ in range(e):
                    img = tgt.poly_mul(img, h.images[g.name].poly())
            for mm, cc in img.items():
                out[mm] = out.get(mm, 0) + c * cc
        if not RingElement.from_poly(tgt, h.transform(d), {m: c for m, c in out.items() if c}).is_zero():
            return False
    gens = src.generators
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            d = gens[a].degree + gens[b].degree
            if not window.contains(d):
                continue
            sign = -1 if (src._parity[a] and src._parity[b]) else 1
            x, y = h.images[gens[a].name], h.images[gens[b].name]
            lhs = tgt.poly_mul(x.poly(), y.poly())
            rhs = tgt.poly_mul(y.poly(), x.poly())
            diff = dict(lhs)
            for m, c in rhs.items():
                diff[m] = diff.get(m, 0) - sign * c
            if not RingElement.from_poly(tgt, h.transform(d), {m: c for m, c in diff.items() if c}).is_zero():
                return False
    return True


def check_iso(h: GradedRingHom, window: Window | None = None, target_window: Window | None = None) -> bool:
    """Bijective onto each target degree from the sum of source pieces over it.

    Target degrees in ``target_window`` that no source degree reaches must vanish.
    """
    window = window or h.source.window
    target_window = target_window or window
    fibres: dict[DegreeVector, list[DegreeVector]] = {}
    for d in window.degrees():
        fibres.setdefault(h.transform(d), []).append(d)
    for td, ds in fibres.items():
        pt = h.target.piece(td)
        pieces = [h.source.piece(d) for d in ds]
        pieces = [(d, pc) for d, pc in zip(ds, pieces) if not pc.group.is_zero()]
        if not pieces and pt.group.is_zero():
            continue
        if not _sum_map_is_iso(h, pieces, pt):
            return False
    for td in target_window.degrees():
        if td not in fibres and not h.target.piece(td).group.is_zero():
            return False
    return True


def _sum_map_is_iso(h: GradedRingHom, pieces, pt: _Piece) -> bool:
    if len(pieces) == 1:
        return is_iso(h.piece_map(pieces[0][0]))
    offsets, rels, total = [], [], 0
    for _, pc in pieces:
        offsets.append(total)
        total += len(pc.monomials)
    for (_, pc), off in zip(pieces, offsets):
        for r in pc.hnf:
            rels.append([0] * off + list(r) + [0] * (total - off - len(r)))
    sq = presented(total, rels)
    imgs = []
    for g in sq.gens:
        acc = [0] * len(pt.monomials)
        for (d, pc), off in zip(pieces, offsets):
            part = g[off:off + len(pc.monomials)]
            poly = {pc.monomials[k]: c for k, c in enumerate(part) if c}
            if poly:
                acc = [a + b for a, b in zip(acc, h.apply_poly(poly, d).coords)]
        imgs.append(pt.sub.coords(hnf_reduce(acc, pt.hnf)))
    return is_iso(GroupHom.from_images(sq.group, pt.group, imgs))


def diagonal_subring(pres: GradedAlgebraPresentation, name: str | None = None) -> GradedAlgebraPresentation:
    """Generators and relations living in degrees with i = j.

    Valid as a presentation of the diagonal part whenever every generator off
    the diagonal has j > i, so no diagonal monomial can involve it.
    """
    keep = [k for k, g in enumerate(pres.generators) if g.degree.i == g.degree.j]
    for k, g in enumerate(pres.generators):
        if k not in keep and g.degree.j < g.degree.i:
            raise PresentationError("generator below the diagonal; diagonal part is not a subring presentation")
    gens = [pres.generators[k] for k in keep]
    rels = []
    for d, r in pres.explicit_relations:
        if d.i != d.j:
            continue
        if any(any(m[k] for k in range(len(m)) if k not in keep) for m in r):
            continue
        rels.append({tuple(m[k] for k in keep): c for m, c in r.items()})
    return GradedAlgebraPresentation(
        name or f"{pres.name} (diagonal)", gens, rels, pres.sign_rule, pres.rational, pres.window, pres.notes
    )
