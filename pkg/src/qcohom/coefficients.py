"""Coefficient groups of a base field: Witt, fundamental-ideal powers, Milnor and Milnor-Witt K-theory.

A ``CoefficientDatum`` assigns a group to each label.  Groups that are not
finitely generated (K^M_1 of the reals, say) are recorded as ``OPAQUE`` and
evaluation then stays symbolic.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Callable, Union

import numpy as np

from .abelian import ZERO, FinAbGroup, GroupHom, IntMatrix, Z, Z2, hom_cokernel, presented

FAMILIES = ("W", "I", "Ibar", "GW", "KM", "2KM", "KMW")


class DatumError(ValueError):
    pass


class OpaqueError(DatumError):
    """Evaluation hit a group that is not finitely generated."""


class OpaqueGroup:
    """Marker for a group that is not finitely generated."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "OPAQUE"

    __str__ = __repr__


OPAQUE = OpaqueGroup()
GroupValue = Union[FinAbGroup, OpaqueGroup]


@dataclass(frozen=True, order=True)
class CoefficientLabel:
    family: str
    index: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown coefficient family {self.family!r}")
        f, j = self.family, self.index
        if f in ("W", "GW"):
            j = 0
        elif f == "I" and j < 0:
            j = 0
        elif f == "KMW" and j < 0:
            f, j = "W", 0
        elif f == "KMW" and j == 0:
            f = "GW"
        object.__setattr__(self, "family", f)
        object.__setattr__(self, "index", j)

    @property
    def canonical(self) -> "CoefficientLabel":
        if self.family == "I" and self.index == 0:
            return CoefficientLabel("W")
        return self

    def is_zero(self) -> bool:
        """Labels that vanish over every field."""
        return self.family in ("Ibar", "KM", "2KM") and self.index < 0

    def __str__(self) -> str:
        f, j = self.family, self.index
        return {
            "W": "W(F)",
            "GW": "GW(F)",
            "I": f"I^{j}(F)",
            "Ibar": f"Ibar^{j}(F)",
            "KM": f"K^M_{j}(F)",
            "2KM": f"2K^M_{j}(F)",
            "KMW": f"K^MW_{j}(F)",
        }[f]


_LABEL_RE = re.compile(r"^(W|GW|I|Ibar|Ī|KM|2KM|KMW)(?:[\^_](-?\d+))?(?:\(F\))?$")


def parse_label(text: str) -> CoefficientLabel:
    t = text.strip().replace("twoKM", "2KM").replace("K^MW", "KMW").replace("2K^M", "2KM").replace("K^M", "KM")
    m = _LABEL_RE.match(t)
    if not m:
        raise DatumError(f"cannot parse coefficient label {text!r}")
    fam = "Ibar" if m.group(1) == "Ī" else m.group(1)
    return CoefficientLabel(fam, int(m.group(2) or 0))


def label(family: str, j: int) -> CoefficientLabel | None:
    """Normalized label, or None when it vanishes identically."""
    lab = CoefficientLabel(family, j)
    return None if lab.is_zero() else lab


@dataclass(frozen=True)
class SymbolicGroupExpr:
    """Direct sum of coefficient groups, kept as a sorted tuple of labels."""

    summands: tuple[CoefficientLabel, ...] = ()

    @classmethod
    def of(cls, *labels: CoefficientLabel | None, mult: int = 1) -> "SymbolicGroupExpr":
        labs = [lab for lab in labels if lab is not None and not lab.is_zero()] * mult
        return cls(tuple(sorted(labs)))

    def __add__(self, other: "SymbolicGroupExpr") -> "SymbolicGroupExpr":
        return SymbolicGroupExpr(tuple(sorted(self.summands + other.summands)))

    def canonical(self) -> tuple[CoefficientLabel, ...]:
        return tuple(sorted(lab.canonical for lab in self.summands))

    def equivalent(self, other: "SymbolicGroupExpr") -> bool:
        return self.canonical() == other.canonical()

    def is_zero(self) -> bool:
        return not self.summands

    def __str__(self) -> str:
        if not self.summands:
            return "0"
        labs = sorted(self.summands, key=lambda lab: (FAMILIES.index(lab.family), lab.index))
        return " ⊕ ".join(map(str, labs))


# -- data ---------------------------------------------------------------------

@dataclass
class CoefficientDatum:
    """Groups of a base field by label.

    Every family is assumed constant for index >= ``stable_from``.
    ``inclusions[j]`` is the map I^{j+1} -> I^j for 0 <= j < stable_from.
    """

    field_name: str
    groups: dict[CoefficientLabel, GroupValue]
    stable_from: int = 1
    inclusions: dict[int, GroupHom] = field(default_factory=dict)
    q: int | None = None
    kind: str = "custom"

    def __post_init__(self):
        self.check()

    def lookup(self, lab: CoefficientLabel) -> GroupValue:
        lab = lab.canonical
        if lab.is_zero():
            return ZERO
        if lab.family in ("I", "Ibar", "KM", "2KM", "KMW") and lab.index > self.stable_from:
            lab = CoefficientLabel(lab.family, self.stable_from)
        if lab not in self.groups:
            raise DatumError(f"{self.field_name}: no value for {lab}")
        return self.groups[lab]

    def evaluate_or_opaque(self, expr: SymbolicGroupExpr) -> GroupValue:
        out = ZERO
        for lab in expr.summands:
            g = self.lookup(lab)
            if g is OPAQUE:
                return OPAQUE
            out = out + g
        return out

    def evaluate(self, expr: SymbolicGroupExpr) -> FinAbGroup:
        for lab in expr.summands:
            if self.lookup(lab) is OPAQUE:
                raise OpaqueError(f"{lab} is not finitely generated for this field ({self.field_name})")
        return self.evaluate_or_opaque(expr)  # type: ignore[return-value]

    def check(self) -> None:
        """Ī^j must be the cokernel of I^{j+1} -> I^j wherever both are known."""
        for j, inc in self.inclusions.items():
            src = self.lookup(CoefficientLabel("I", j + 1))
            tgt = self.lookup(CoefficientLabel("I", j))
            if inc.source != src or inc.target != tgt:
                raise DatumError(f"{self.field_name}: inclusion I^{j + 1} -> I^{j} has wrong groups")
            bar = self.lookup(CoefficientLabel("Ibar", j))
            if bar is not OPAQUE and hom_cokernel(inc) != bar:
                raise DatumError(
                    f"{self.field_name}: Ibar^{j} = {bar} but I^{j}/I^{j + 1} = {hom_cokernel(inc)}"
                )

    def to_json(self) -> dict:
        return {
            "field": self.field_name,
            "stable_from": self.stable_from,
            "groups": {_label_key(k): ("opaque" if v is OPAQUE else v.to_dict()) for k, v in self.groups.items()},
            "inclusions": {str(j): h.matrix.tolist() for j, h in self.inclusions.items()},
        }


def _label_key(lab: CoefficientLabel) -> str:
    return lab.family if lab.family in ("W", "GW") else f"{lab.family}^{lab.index}"


def _g(free: int = 0, *tors: int) -> FinAbGroup:
    return FinAbGroup.from_orders(free, tors)


def _table(stable: int, values: dict[str, Callable[[int], GroupValue]]) -> dict[CoefficientLabel, GroupValue]:
    out: dict[CoefficientLabel, GroupValue] = {}
    for fam, fn in values.items():
        if fam in ("W", "GW"):
            out[CoefficientLabel(fam)] = fn(0)
        else:
            for j in range(1, stable + 1):
                out[CoefficientLabel(fam, j)] = fn(j)
            if fam == "Ibar":
                out[CoefficientLabel(fam, 0)] = fn(0)
    # K^M_0 = 2K^M_0 = Z for every field
    out[CoefficientLabel("KM", 0)] = Z
    out[CoefficientLabel("2KM", 0)] = Z
    return out


def reals() -> CoefficientDatum:
    groups = _table(1, {
        "W": lambda j: Z,
        "GW": lambda j: _g(2),
        "I": lambda j: Z,
        "Ibar": lambda j: Z2,
        "KM": lambda j: OPAQUE,
        "2KM": lambda j: OPAQUE,
        "KMW": lambda j: OPAQUE,
    })
    inc = {0: GroupHom(Z, Z, IntMatrix.from_rows([[2]])), 1: GroupHom(Z, Z, IntMatrix.from_rows([[2]]))}
    return CoefficientDatum("reals", groups, 1, inc, kind="reals")


def complexes() -> CoefficientDatum:
    groups = _table(1, {
        "W": lambda j: Z2,
        "GW": lambda j: Z,
        "I": lambda j: ZERO,
        "Ibar": lambda j: Z2 if j == 0 else ZERO,
        "KM": lambda j: OPAQUE,
        "2KM": lambda j: OPAQUE,
        "KMW": lambda j: OPAQUE,
    })
    inc = {0: GroupHom(ZERO, Z2), 1: GroupHom(ZERO, ZERO)}
    return CoefficientDatum("complexes", groups, 1, inc, kind="complexes")


def finite_field(q: int) -> CoefficientDatum:
    if q < 3 or q % 2 == 0 or not _is_prime_power(q):
        raise DatumError(f"fq:{q} is not an odd prime power")
    W = _g(0, 4) if q % 4 == 3 else _g(0, 2, 2)
    groups = _table(2, {
        "W": lambda j: W,
        "GW": lambda j: _g(1, 2),
        "I": lambda j: Z2 if j == 1 else ZERO,
        "Ibar": lambda j: Z2 if j <= 1 else ZERO,
        "KM": lambda j: _g(0, q - 1) if j == 1 else ZERO,
        "2KM": lambda j: _g(0, (q - 1) // 2) if j == 1 else ZERO,
        "KMW": lambda j: _g(0, q - 1) if j == 1 else ZERO,
    })
    # generator of I(F) is <1> - <u>; in W it is 2 (q = 3 mod 4) or <1> + <u>
    img = [[2]] if q % 4 == 3 else [[1], [1]]
    inc = {
        0: GroupHom(Z2, W, IntMatrix.from_rows(img, 1)),
        1: GroupHom(ZERO, Z2),
        2: GroupHom(ZERO, ZERO),
    }
    return CoefficientDatum(f"fq:{q}", groups, 2, inc, q=q, kind="fq")


def _is_prime_power(q: int) -> bool:
    p = next((d for d in range(2, q + 1) if q % d == 0), q)
    while q % p == 0:
        q //= p
    return q == 1


def from_json(obj: dict) -> CoefficientDatum:
    try:
        groups: dict[CoefficientLabel, GroupValue] = {}
        for key, val in obj["groups"].items():
            groups[parse_label(key).canonical] = OPAQUE if val == "opaque" else FinAbGroup.from_dict(val)
        stable = int(obj.get("stable_from", 1))
        groups.setdefault(CoefficientLabel("KM", 0), Z)
        groups.setdefault(CoefficientLabel("2KM", 0), Z)
        datum = CoefficientDatum(str(obj.get("field", "custom")), groups, stable, {}, kind="custom")
        inc = {}
        for j, mat in obj.get("inclusions", {}).items():
            j = int(j)
            src = datum.lookup(CoefficientLabel("I", j + 1))
            tgt = datum.lookup(CoefficientLabel("I", j))
            inc[j] = GroupHom(src, tgt, IntMatrix.from_rows(mat, src.ngens))
        datum.inclusions = inc
        datum.check()
        return datum
    except (KeyError, TypeError) as e:
        raise DatumError(f"malformed coefficient datum: {e}") from e


def builtin_datum(name: str) -> CoefficientDatum:
    """Parse ``reals``, ``complexes``, ``fq:<q>`` or ``file:<path>``."""
    if name == "reals":
        return reals()
    if name == "complexes":
        return complexes()
    if name.startswith("fq:"):
        try:
            q = int(name[3:])
        except ValueError:
            raise DatumError(f"bad field {name!r}") from None
        return finite_field(q)
    if name.startswith("file:"):
        with open(name[5:]) as fh:
            return from_json(json.load(fh))
    raise DatumError(f"unknown field {name!r}")


def evaluate(expr: SymbolicGroupExpr, datum: CoefficientDatum) -> FinAbGroup:
    return datum.evaluate(expr)


# -- brute-force Witt group of a finite field --------------------------------

class _GF:
    """Tiny finite field F_q with elements encoded as 0..q-1 (base-p digits)."""

    def __init__(self, q: int):
        p = next(d for d in range(2, q + 1) if q % d == 0)
        k = 0
        while p ** k < q:
            k += 1
        self.p, self.k, self.q = p, k, q
        self.modulus = self._irreducible() if k > 1 else None
        self.mul = [[self._mul(a, b) for b in range(q)] for a in range(q)]
        self.add = [[self._add(a, b) for b in range(q)] for a in range(q)]

    def _digits(self, a):
        return [(a // self.p ** i) % self.p for i in range(self.k)]

    def _num(self, ds):
        return sum(d * self.p ** i for i, d in enumerate(ds))

    def _add(self, a, b):
        return self._num([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _polymul(self, x, y):
        out = [0] * (len(x) + len(y) - 1)
        for i, a in enumerate(x):
            for j, b in enumerate(y):
                out[i + j] = (out[i + j] + a * b) % self.p
        return out

    def _polymod(self, x, m):
        x = list(x)
        while len(x) >= len(m):
            c = x[-1]
            if c:
                off = len(x) - len(m)
                for i, b in enumerate(m):
                    x[off + i] = (x[off + i] - c * b) % self.p
            x.pop()
        return x + [0] * (self.k - len(x))

    def _irreducible(self):
        p, k = self.p, self.k
        for tail in range(p ** k):
            m = [(tail // p ** i) % p for i in range(k)] + [1]
            # irreducible iff no root-free factorization: brute force over all monic divisors
            if all(self._polymod(m, d + [1])[:len(d)] != [0] * len(d) or len(d) == 0
                   for deg in range(1, k // 2 + 1)
                   for d in ([(t // p ** i) % p for i in range(deg)] for t in range(p ** deg))):
                return m
        raise RuntimeError("no irreducible polynomial")

    def _mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        return self._num(self._polymod(self._polymul(self._digits(a), self._digits(b)), self.modulus)[:self.k])


def witt_oracle(q: int, max_rank: int = 4) -> FinAbGroup:
    """W(F_q) from diagonal forms of rank <= max_rank, by direct enumeration.

    Forms are compared through their representation counts
    N(c) = #{x : sum a_i x_i^2 = c}, computed by additive convolution.  Witt
    classes are the isometry classes modulo adding a hyperbolic plane
    <a, -a>, and the group law is the orthogonal sum.
    """
    if q % 2 == 0 or q > 13 or not _is_prime_power(q):
        raise DatumError("witt_oracle supports odd q <= 13")
    F = _GF(q)
    units = list(range(1, q))
    neg = {a: next(b for b in range(q) if F.add[a][b] == 0) for a in range(q)}

    def rank1(a):
        v = np.zeros(q, dtype=np.int64)
        for x in range(q):
            v[F.mul[a][F.mul[x][x]]] += 1
        return v

    def conv(u, v):
        out = np.zeros(q, dtype=np.int64)
        for a in range(q):
            if u[a]:
                for b in range(q):
                    if v[b]:
                        out[F.add[a][b]] += u[a] * v[b]
        return out

    r1 = {a: rank1(a) for a in units}
    counts: dict[tuple, tuple] = {(): tuple([1] + [0] * (q - 1))}
    forms_by_rank: dict[int, list[tuple]] = {0: [()]}
    for k in range(1, max_rank + 1):
        forms_by_rank[k] = []
        for f in combinations_with_replacement(units, k):
            counts[f] = tuple(conv(np.array(counts[f[:-1]]), r1[f[-1]]).tolist())
            forms_by_rank[k].append(f)

    def iso_class(f):
        return (len(f), counts[tuple(sorted(f))])

    classes = sorted({iso_class(f) for f in counts})
    parent = {c: c for c in classes}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for k in range(0, max_rank - 1):
        for f in forms_by_rank[k]:
            for a in units:
                g = tuple(sorted(f + (a, neg[a])))
                x, y = find(iso_class(f)), find(iso_class(g))
                if x != y:
                    parent[max(x, y)] = min(x, y)
    reps: dict[tuple, tuple] = {}
    for k in range(max_rank + 1):
        for f in forms_by_rank[k]:
            reps.setdefault(find(iso_class(f)), f)
    witt = sorted(reps)
    index = {c: i for i, c in enumerate(witt)}

    def add(c1, c2):
        f = reps[c1] + reps[c2]
        if len(f) > max_rank:
            raise DatumError("max_rank too small to close the group law")
        return find(iso_class(tuple(sorted(f))))

    n = len(witt)
    rels = []
    for c1 in witt:
        for c2 in witt:
            r = [0] * n
            r[index[c1]] += 1
            r[index[c2]] += 1
            r[index[add(c1, c2)]] -= 1
            rels.append(r)
    return presented(n, rels).group


# -- presentation of the graded ring of fundamental-ideal powers --------------

@dataclass(frozen=True)
class CoefficientRing:
    """Generators (name, degree (i, j, t), cap, cap rule) and relations of the
    non-negative weight part of the graded W(F)-algebra built from I^j.

    ``ideal`` lists generators of I(F) inside weight 0; multiplying a class by
    them moves it one step down the filtration.
    """

    generators: tuple[tuple[str, tuple[int, int, int], int | None, tuple[int, ...]], ...]
    relations: tuple[str, ...]
    ideal: tuple[str, ...]


def coefficient_ring_presentation(datum: CoefficientDatum) -> CoefficientRing:
    if datum.kind == "reals":
        return CoefficientRing((("h", (0, 1, 0), None, ()),), (), ("2",))
    if datum.kind == "complexes":
        return CoefficientRing((), ("2",), ())
    if datum.kind == "fq":
        if datum.q % 4 == 3:
            return CoefficientRing((("h", (0, 1, 0), None, ()),), ("4", "2*h", "h^2"), ("2",))
        # d = <u> with u a non-square: d^2 = 1
        return CoefficientRing(
            (("d", (0, 0, 0), 1, (1, 0)), ("h", (0, 1, 0), None, ())),
            ("2", "h^2", "d*h - h"),
            ("1 + d",),
        )
    raise DatumError(f"{datum.field_name}: no ring presentation available for a custom datum")
