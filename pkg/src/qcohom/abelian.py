"""Exact integer linear algebra and finitely generated abelian groups.

Everything here works over Python integers, so no entry bound applies.
Vectors are row vectors; a matrix acts on a row vector from the right.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

Rows = list[list[int]]


class ComplexError(ValueError):
    """A differential composite is nonzero or shapes do not chain."""


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ShapeError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows(identity(n), n)

    def tolist(self) -> Rows:
        c = self.cols
        return [list(self.entries[r * c:(r + 1) * c]) for r in range(self.rows)]

    def __getitem__(self, rc: tuple[int, int]) -> int:
        r, c = rc
        return self.entries[r * self.cols + c]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(transpose(self.tolist(), self.cols), self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        return IntMatrix.from_rows(matmul(self.tolist(), other.tolist(), other.cols), other.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)


# -- list-of-rows helpers ---------------------------------------------------

def identity(n: int) -> Rows:
    return [[int(r == c) for c in range(n)] for r in range(n)]


def transpose(a: Rows, ncols: int) -> Rows:
    return [[row[c] for row in a] for c in range(ncols)]


def matmul(a: Rows, b: Rows, bcols: int) -> Rows:
    out = []
    for row in a:
        acc = [0] * bcols
        for k, x in enumerate(row):
            if x:
                for c, y in enumerate(b[k]):
                    if y:
                        acc[c] += x * y
        out.append(acc)
    return out


def vecmat(v: Sequence[int], m: Rows, mcols: int) -> list[int]:
    acc = [0] * mcols
    for k, x in enumerate(v):
        if x:
            for c, y in enumerate(m[k]):
                if y:
                    acc[c] += x * y
    return acc


# -- Smith normal form ------------------------------------------------------

def _snf_rows(a: Rows, nrows: int, ncols: int):
    """Return (d, U, V, Vinv) with U*a*V diagonal, entries d in divisibility order."""
    A = [list(r) for r in a]
    U = identity(nrows)
    V = identity(ncols)
    Vi = identity(ncols)
    m, n = nrows, ncols

    def row_op(i, k, q):  # row_i -= q * row_k
        if q:
            Ai, Ak = A[i], A[k]
            for c in range(n):
                if Ak[c]:
                    Ai[c] -= q * Ak[c]
            Ui, Uk = U[i], U[k]
            for c in range(m):
                if Uk[c]:
                    Ui[c] -= q * Uk[c]

    def col_op(j, k, q):  # col_j -= q * col_k
        if q:
            for r in range(m):
                if A[r][k]:
                    A[r][j] -= q * A[r][k]
            for r in range(n):
                if V[r][k]:
                    V[r][j] -= q * V[r][k]
            # inverse: row_k += q * row_j
            Vj, Vk = Vi[j], Vi[k]
            for c in range(n):
                if Vj[c]:
                    Vk[c] += q * Vj[c]

    def swap_rows(i, k):
        if i != k:
            A[i], A[k] = A[k], A[i]
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        if j != k:
            for r in A:
                r[j], r[k] = r[k], r[j]
            for r in V:
                r[j], r[k] = r[k], r[j]
            Vi[j], Vi[k] = Vi[k], Vi[j]

    d = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    row_op(i, t, A[i][t] // p)
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    col_op(j, t, A[t][j] // p)
                    if A[t][j]:
                        done = False
            if not done:
                # move the smallest leftover in row/col t to the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_op(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        d.append(A[t][t])
        t += 1
    return d, U, V, Vi


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """(U, D, V) with U*m*V = D, U and V unimodular, D diagonal with d_i | d_{i+1}."""
    d, U, V, _ = _snf_rows(m.tolist(), m.rows, m.cols)
    D = [[0] * m.cols for _ in range(m.rows)]
    for k, x in enumerate(d):
        D[k][k] = x
    return (IntMatrix.from_rows(U, m.rows), IntMatrix.from_rows(D, m.cols), IntMatrix.from_rows(V, m.cols))


def invariant_factors(a: Rows, ncols: int) -> list[int]:
    return _snf_rows(a, len(a), ncols)[0]


def hermite_basis(rows: Iterable[Sequence[int]], ncols: int) -> Rows:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Pivots are positive and entries above a pivot lie in [0, pivot).
    """
    basis: dict[int, list[int]] = {}  # pivot column -> row
    for r in rows:
        v = list(r)
        for c in range(ncols):
            if not v[c]:
                continue
            if c not in basis:
                if v[c] < 0:
                    v = [-x for x in v]
                basis[c] = v
                break
            b = basis[c]
            # extended gcd merge of v and b in column c
            g, s, t = _xgcd(b[c], v[c])
            if v[c] % b[c] == 0:
                q = v[c] // b[c]
                v = [x - q * y for x, y in zip(v, b)]
                continue
            u1, u2 = b[c] // g, v[c] // g
            newb = [s * x + t * y for x, y in zip(b, v)]
            v = [u1 * y - u2 * x for x, y in zip(b, v)]
            if newb[c] < 0:
                newb = [-x for x in newb]
            basis[c] = newb
            # the old pivot row must be re-inserted through v (already combined)
    out = [basis[c] for c in sorted(basis)]
    # reduce above pivots
    for k, row in enumerate(out):
        c = _pivot(row)
        p = row[c]
        for k2 in range(k):
            x = out[k2][c]
            q = x // p
            if q:
                out[k2] = [a - q * b for a, b in zip(out[k2], row)]
    return out


def _pivot(row: Sequence[int]) -> int:
    for c, x in enumerate(row):
        if x:
            return c
    return -1


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hnf_reduce(v: Sequence[int], basis: Rows) -> list[int]:
    """Canonical representative of v modulo the lattice with Hermite basis ``basis``."""
    v = list(v)
    for row in basis:
        c = _pivot(row)
        q = v[c] // row[c]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return v


def left_kernel(a: Rows, ncols: int) -> Rows:
    """Basis of {v : v*a = 0} over Z."""
    nrows = len(a)
    if nrows == 0:
        return []
    d, U, _, _ = _snf_rows(a, nrows, ncols)
    return [U[k] for k in range(len(d), nrows)]


def solve_left(a: Rows, ncols: int, x: Sequence[int]) -> list[int] | None:
    """Some integer y with y*a = x, or None."""
    nrows = len(a)
    if nrows == 0:
        return None if any(x) else []
    d, U, V, _ = _snf_rows(a, nrows, ncols)
    xv = vecmat(x, V, ncols)
    z = [0] * nrows
    for k in range(ncols):
        if k < len(d):
            if xv[k] % d[k]:
                return None
            z[k] = xv[k] // d[k]
        elif xv[k]:
            return None
    return vecmat(z, U, nrows)


def rank_mod_p(a: Rows, ncols: int, p: int) -> int:
    rows = [[x % p for x in r] for r in a]
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def rank_rational(a: Rows, ncols: int) -> int:
    return len(invariant_factors(a, ncols)) if a else 0


# -- groups -------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class FinAbGroup:
    """Z^free_rank plus cyclic factors in invariant-factor form (each >= 2, t_k | t_{k+1})."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative rank")
        t = tuple(int(x) for x in self.torsion)
        object.__setattr__(self, "torsion", t)
        if any(x < 2 for x in t) or any(t[k + 1] % t[k] for k in range(len(t) - 1)):
            raise ValueError(f"torsion {t} is not in invariant-factor form")

    @classmethod
    def from_orders(cls, free_rank: int, orders: Iterable[int]) -> "FinAbGroup":
        """Accepts any list of cyclic orders (0 meaning Z) and normalizes."""
        orders = list(orders)
        free = free_rank + sum(1 for o in orders if o == 0)
        diag = [[0] * len(orders) for _ in orders]
        for k, o in enumerate(orders):
            diag[k][k] = o
        fac = invariant_factors(diag, len(orders)) if orders else []
        free += len(orders) - len(fac)
        return cls(free, tuple(x for x in fac if x > 1))

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def orders(self) -> tuple[int, ...]:
        """Order of each generator, 0 for free ones."""
        return (0,) * self.free_rank + self.torsion

    def is_zero(self) -> bool:
        return self.ngens == 0

    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __add__(self, other: "FinAbGroup") -> "FinAbGroup":
        return FinAbGroup.from_orders(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def __mul__(self, k: int) -> "FinAbGroup":
        out = FinAbGroup()
        for _ in range(k):
            out = out + self
        return out

    __rmul__ = __mul__

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        return tuple(c % o if o else c for c, o in zip(coords, self.orders))

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_dict(cls, d: dict) -> "FinAbGroup":
        return cls.from_orders(int(d.get("free_rank", 0)), [int(x) for x in d.get("torsion", [])])

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        k = 0
        while k < len(self.torsion):
            t = self.torsion[k]
            m = self.torsion.count(t)
            parts.append(f"Z/{t}" if m == 1 else f"(Z/{t})^{m}")
            k += m
        return " + ".join(parts)


ZERO = FinAbGroup()
Z = FinAbGroup(1)
Z2 = FinAbGroup(0, (2,))


class Subquotient:
    """(span(W) + span(L)) / span(L) inside Z^n, with invariant-factor coordinates.

    ``gens`` lifts each invariant-factor generator back to Z^n and
    ``coords`` sends an element of span(W) + span(L) to its reduced
    coordinates.
    """

    def __init__(self, n: int, W: Sequence[Sequence[int]] | None = None, L: Sequence[Sequence[int]] = ()):
        self.n = n
        self._free_w = W is None
        self.W = identity(n) if W is None else [list(w) for w in W]
        self.L = [list(r) for r in L if any(r)]
        k = len(self.W)
        stacked = self.W + self.L
        rel = [v[:k] for v in left_kernel(stacked, n)] if stacked else []
        rel = [r for r in rel if any(r)]
        d, _, V, Vi = _snf_rows(rel, len(rel), k) if rel else ([], None, identity(k), identity(k))
        self._V = V
        self._d = d
        r = len(d)
        tors = [(i, d[i]) for i in range(r) if d[i] > 1]
        free = list(range(r, k))
        self._slots = [(i, 0) for i in free] + tors
        self.group = FinAbGroup(len(free), tuple(x for _, x in tors))
        Wgens = [Vi[i] for i, _ in self._slots]
        self.gens = [vecmat(g, self.W, n) for g in Wgens]

    def coords_from_w(self, c: Sequence[int]) -> tuple[int, ...]:
        y = vecmat(c, self._V, len(self.W))
        return tuple(y[i] % o if o else y[i] for i, o in self._slots)

    def coords(self, x: Sequence[int]) -> tuple[int, ...]:
        if self._free_w:
            return self.coords_from_w(x)
        if not self.W:
            if any(x) and solve_left(self.L, self.n, x) is None:
                raise ValueError("vector is not in the subquotient")
            return ()
        y = solve_left(self.W + self.L, self.n, x)
        if y is None:
            raise ValueError("vector is not in the subquotient")
        return self.coords_from_w(y[:len(self.W)])

    def contains(self, x: Sequence[int]) -> bool:
        return solve_left(self.W + self.L, self.n, x) is not None if (self.W or self.L) else not any(x)


def presented(n: int, relations: Sequence[Sequence[int]]) -> Subquotient:
    """Z^n modulo the span of ``relations``."""
    return Subquotient(n, None, relations)


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism of FinAbGroups; column k of ``matrix`` is the image of generator k."""

    source: FinAbGroup
    target: FinAbGroup
    matrix: IntMatrix = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        m = self.matrix
        if m is None:
            m = IntMatrix.zero(self.target.ngens, self.source.ngens)
        if (m.rows, m.cols) != (self.target.ngens, self.source.ngens):
            raise ShapeError("matrix shape does not match groups")
        rows = m.tolist()
        to = self.target.orders
        rows = [[x % to[r] if to[r] else x for x in row] for r, row in enumerate(rows)]
        # a torsion generator of order o must land in elements killed by o
        for c, o in enumerate(self.source.orders):
            if o:
                for r, t in enumerate(to):
                    x = rows[r][c] * o
                    if (t == 0 and x) or (t and x % t):
                        raise ValueError("matrix does not respect torsion orders")
        object.__setattr__(self, "matrix", IntMatrix.from_rows(rows, self.source.ngens))

    @classmethod
    def from_images(cls, source: FinAbGroup, target: FinAbGroup, images: Sequence[Sequence[int]]) -> "GroupHom":
        cols = [list(v) for v in images]
        rows = transpose(cols, target.ngens) if cols else [[] for _ in range(target.ngens)]
        return cls(source, target, IntMatrix.from_rows(rows, source.ngens))

    def image_of(self, coords: Sequence[int]) -> tuple[int, ...]:
        cols = transpose(self.matrix.tolist(), self.source.ngens)
        return self.target.reduce(vecmat(coords, cols, self.target.ngens))

    def columns(self) -> Rows:
        return transpose(self.matrix.tolist(), self.source.ngens)

    def compose(self, first: "GroupHom") -> "GroupHom":
        """self after first."""
        if first.target != self.source:
            raise ShapeError("composition mismatch")
        return GroupHom.from_images(first.source, self.target, [self.image_of(c) for c in first.columns()])

    def is_zero(self) -> bool:
        return self.matrix.is_zero()


def _relations(G: FinAbGroup) -> Rows:
    rows = []
    for k, o in enumerate(G.orders):
        if o:
            r = [0] * G.ngens
            r[k] = o
            rows.append(r)
    return rows


def as_subquotient(G: FinAbGroup) -> Subquotient:
    return presented(G.ngens, _relations(G))


def hom_image(h: GroupHom) -> FinAbGroup:
    T = h.target
    return Subquotient(T.ngens, h.columns(), _relations(T)).group


def hom_cokernel(h: GroupHom) -> FinAbGroup:
    T = h.target
    return presented(T.ngens, _relations(T) + h.columns()).group


def _kernel_lattice(h: GroupHom) -> Rows:
    S, T = h.source, h.target
    stacked = h.columns() + _relations(T)
    if not stacked:
        return identity(S.ngens)
    if T.ngens == 0:
        return identity(S.ngens)
    return [v[:S.ngens] for v in left_kernel(stacked, T.ngens) if any(v[:S.ngens])]


def hom_kernel_sub(h: GroupHom) -> Subquotient:
    S = h.source
    return Subquotient(S.ngens, _kernel_lattice(h), _relations(S))


def hom_kernel(h: GroupHom) -> FinAbGroup:
    return hom_kernel_sub(h).group


def is_injective(h: GroupHom) -> bool:
    return hom_kernel(h).is_zero()


def is_surjective(h: GroupHom) -> bool:
    return hom_cokernel(h).is_zero()


def is_iso(h: GroupHom) -> bool:
    return is_injective(h) and is_surjective(h)


def direct_sum(A: FinAbGroup, B: FinAbGroup) -> tuple[Subquotient, FinAbGroup]:
    """A + B presented on the concatenated generators of A and B."""
    sq = presented(A.ngens + B.ngens, [r + [0] * B.ngens for r in _relations(A)] + [[0] * A.ngens + r for r in _relations(B)])
    return sq, sq.group


def fiber_product(f: GroupHom, g: GroupHom) -> tuple[FinAbGroup, GroupHom, GroupHom]:
    """P = A x_T B as the kernel of (f, -g): A + B -> T, with both projections."""
    if f.target != g.target:
        raise ShapeError("fiber product needs a common target")
    A, B, T = f.source, g.source, f.target
    sq, AB = direct_sum(A, B)
    # images of AB's generators: lift to concatenated coordinates then push
    fc, gc = f.columns(), g.columns()
    images = []
    for lift in sq.gens:
        a, b = lift[:A.ngens], lift[A.ngens:]
        fa = vecmat(a, fc, T.ngens) if fc else [0] * T.ngens
        gb = vecmat(b, gc, T.ngens) if gc else [0] * T.ngens
        images.append(T.reduce([x - y for x, y in zip(fa, gb)]))
    diff = GroupHom.from_images(AB, T, images)
    K = hom_kernel_sub(diff)
    # K's generators in AB coords, then back to concatenated coords, then project
    pa, pb = [], []
    for kv in K.gens:
        concat = vecmat(kv, sq.gens, A.ngens + B.ngens) if sq.gens else [0] * (A.ngens + B.ngens)
        pa.append(A.reduce(concat[:A.ngens]))
        pb.append(B.reduce(concat[A.ngens:]))
    P = K.group
    return P, GroupHom.from_images(P, A, pa), GroupHom.from_images(P, B, pb)


# -- chain complexes ----------------------------------------------------------

@dataclass(frozen=True)
class ChainComplex:
    """Free chain complex. ``differentials[k]`` maps degree lo+k+1 to degree lo+k.

    A differential is stored as a (rank_{lo+k}) x (rank_{lo+k+1}) matrix acting on
    column vectors.
    """

    ranks: tuple[int, ...]
    differentials: tuple[IntMatrix, ...]
    lo: int = 0

    def __post_init__(self):
        if len(self.differentials) != max(len(self.ranks) - 1, 0):
            raise ComplexError("need one differential between consecutive degrees")
        for k, d in enumerate(self.differentials):
            if (d.rows, d.cols) != (self.ranks[k], self.ranks[k + 1]):
                raise ComplexError(f"differential {k} has shape {d.rows}x{d.cols}")
        for k in range(len(self.differentials) - 1):
            if not (self.differentials[k] @ self.differentials[k + 1]).is_zero():
                raise ComplexError(f"d o d != 0 at degree {self.lo + k + 1}")

    @property
    def hi(self) -> int:
        return self.lo + len(self.ranks) - 1

    def rank(self, i: int) -> int:
        return self.ranks[i - self.lo] if self.lo <= i <= self.hi else 0

    def d(self, i: int) -> IntMatrix:
        """Differential out of degree i."""
        if self.lo < i <= self.hi:
            return self.differentials[i - self.lo - 1]
        return IntMatrix.zero(self.rank(i - 1), self.rank(i))

    def dual(self) -> "ChainComplex":
        """Cochain complex regraded as a chain complex: degree i becomes -i."""
        ranks = tuple(reversed(self.ranks))
        diffs = tuple(d.transpose() for d in reversed(self.differentials))
        return ChainComplex(ranks, diffs, -self.hi)

    def shift(self, k: int) -> "ChainComplex":
        """C[k] with (C[k])_i = C_{i-k}; differentials keep their sign."""
        return ChainComplex(self.ranks, self.differentials, self.lo + k)

    def __add__(self, other: "ChainComplex") -> "ChainComplex":
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        ranks = tuple(self.rank(i) + other.rank(i) for i in range(lo, hi + 1))
        diffs = []
        for i in range(lo + 1, hi + 1):
            a, b = self.d(i).tolist(), other.d(i).tolist()
            ra, ca, rb, cb = self.rank(i - 1), self.rank(i), other.rank(i - 1), other.rank(i)
            rows = [row + [0] * cb for row in a] + [[0] * ca + row for row in b]
            diffs.append(IntMatrix.from_rows(rows, ca + cb) if rows else IntMatrix.zero(ra + rb, ca + cb))
        return ChainComplex(ranks, tuple(diffs), lo)


COEFFS = ("Z", "Z/2", "Q")


def _cycles_boundaries(c: ChainComplex, i: int, modulus: int = 0) -> tuple[Rows, Rows]:
    """Row bases of cycles and boundaries in degree i (mod ``modulus`` if nonzero)."""
    r = c.rank(i)
    dout = c.d(i)  # rank(i-1) x r
    din = c.d(i + 1)  # r x rank(i+1)
    # cycles: v with dout * v = 0 (mod m): left kernel of dout^T stacked with m*I
    A = dout.transpose().tolist() if r else []
    if modulus:
        A = A + [[modulus if a == b else 0 for b in range(c.rank(i - 1))] for a in range(c.rank(i - 1))]
    cyc = [v[:r] for v in left_kernel(A, c.rank(i - 1))] if (A and c.rank(i - 1)) else identity(r)
    cyc = [v for v in cyc if any(v)]
    bnd = din.transpose().tolist()
    if modulus:
        bnd = bnd + [[modulus if a == b else 0 for b in range(r)] for a in range(r)]
    return cyc, bnd


def homology_sub(c: ChainComplex, i: int, coeffs: str = "Z") -> Subquotient:
    if coeffs not in COEFFS:
        raise ValueError(f"unknown coefficients {coeffs!r}")
    cyc, bnd = _cycles_boundaries(c, i, 2 if coeffs == "Z/2" else 0)
    return Subquotient(c.rank(i), cyc, bnd)


def homology(c: ChainComplex, i: int, coeffs: str = "Z") -> FinAbGroup:
    if coeffs == "Q":
        r = c.rank(i)
        rk_out = rank_rational(c.d(i).tolist(), r) if r and c.rank(i - 1) else 0
        rk_in = rank_rational(c.d(i + 1).tolist(), c.rank(i + 1)) if r and c.rank(i + 1) else 0
        return FinAbGroup(r - rk_out - rk_in)
    return homology_sub(c, i, coeffs).group


def cohomology(c: ChainComplex, i: int, coeffs: str = "Z") -> FinAbGroup:
    return homology(c.dual(), -i, coeffs)


def cohomology_sub(c: ChainComplex, i: int, coeffs: str = "Z") -> Subquotient:
    return homology_sub(c.dual(), -i, coeffs)


def reduction_mod2(c: ChainComplex, i: int) -> GroupHom:
    """H^i(C; Z) -> H^i(C; Z/2) induced by reducing cochains mod 2."""
    hz = cohomology_sub(c, i, "Z")
    h2 = cohomology_sub(c, i, "Z/2")
    return GroupHom.from_images(hz.group, h2.group, [h2.coords(v) for v in hz.gens])
