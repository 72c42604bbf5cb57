"""Cellular cochain models for real projective spaces and split real quadrics.

The split quadric Q_{p,q} is a sphere bundle over RP^p; its cellular
complex with coefficients Z(s) is the RP^p complex in parity s plus a copy
in parity s + q + 1 shifted up by q.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import (
    ChainComplex,
    FinAbGroup,
    GroupHom,
    IntMatrix,
    cohomology,
    hom_cokernel,
    hom_kernel,
    reduction_mod2,
)


def base_complex(n: int, parity: int) -> ChainComplex:
    """C^(n)(parity): Z in degrees 0..n, d_k = 1 + (-1)^(k + parity)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    diffs = tuple(IntMatrix.from_rows([[1 + (-1) ** (k + parity)]]) for k in range(1, n + 1))
    return ChainComplex((1,) * (n + 1), diffs)


def rp_complex(p: int, s: int) -> ChainComplex:
    return base_complex(p, s % 2)


def quadric_complex(p: int, q: int, s: int) -> ChainComplex:
    if not 0 <= p <= q:
        raise ValueError("need 0 <= p <= q")
    return base_complex(p, s % 2) + base_complex(p, (s + q + 1) % 2).shift(q)


@dataclass(frozen=True)
class QuadricSpec:
    p: int
    q: int

    @property
    def dim(self) -> int:
        return self.p + self.q

    def complex(self, s: int) -> ChainComplex:
        return quadric_complex(self.p, self.q, s)


def singular_table(p: int, q: int) -> dict:
    """H^i(Q_{p,q}, Z(s)) for s in {0,1} and H^i(Q_{p,q}, Z/2), 0 <= i <= p + q."""
    out: dict = {"Z": {}, "Z(1)": {}, "Z/2": {}}
    for i in range(p + q + 1):
        out["Z"][i] = cohomology(quadric_complex(p, q, 0), i)
        out["Z(1)"][i] = cohomology(quadric_complex(p, q, 1), i)
        out["Z/2"][i] = cohomology(quadric_complex(p, q, 0), i, "Z/2")
    return out


def reduction_map(spec: QuadricSpec, s: int, i: int) -> GroupHom:
    return reduction_mod2(spec.complex(s), i)


def reduction_kinds(spec: QuadricSpec, s: int, i: int) -> set[str]:
    h = reduction_map(spec, s, i)
    kinds = set()
    if hom_kernel(h).is_zero():
        kinds.add("injective")
    if hom_cokernel(h).is_zero():
        kinds.add("surjective")
    if len(kinds) == 2:
        kinds.add("iso")
    return kinds


def expected_reduction_kind(source: FinAbGroup, p: int, q: int, s: int, i: int) -> str:
    """What the reduction map must be, read off its source group.

    Z -> Z/2 is onto and Z/2 -> Z/2 is bijective.  In the middle degree of
    Q_{p,p} it is onto (Z^2) or one-to-one (Z/2) depending on p + s.
    """
    if p == q and i == p:
        return "surjective" if (p + s) % 2 else "injective"
    if source == FinAbGroup(1):
        return "surjective"
    if source == FinAbGroup(0, (2,)):
        return "iso"
    return "zero" if source.is_zero() else "unexpected"


def euler_characteristic(c: ChainComplex) -> int:
    return sum((-1) ** (c.lo + k) * r for k, r in enumerate(c.ranks))


def group_of(p: int, q: int, s: int, i: int, coeffs: str = "Z") -> FinAbGroup:
    return cohomology(quadric_complex(p, q, s), i, coeffs)
