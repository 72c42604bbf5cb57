import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcohom.abelian import FinAbGroup, cohomology
from qcohom.cellular import (
    QuadricSpec,
    base_complex,
    euler_characteristic,
    expected_reduction_kind,
    group_of,
    quadric_complex,
    reduction_kinds,
    singular_table,
)
from qcohom.cli import table_sing

from reference_table import MISLABELED, REFERENCE, cell_group

Z, Z2, ZERO = FinAbGroup(1), FinAbGroup(0, (2,)), FinAbGroup()


def test_rp_cohomology():
    # H^i(RP^p; Z): Z, then Z/2 in even positive degrees, Z on top when p is odd
    for p in range(1, 7):
        for i in range(p + 1):
            want = Z if i == 0 or (i == p and p % 2) else (Z2 if i % 2 == 0 else ZERO)
            assert cohomology(base_complex(p, 0), i) == want


def test_twisted_rp_cohomology():
    for p in range(1, 7):
        for i in range(p + 1):
            want = Z if (i == p and p % 2 == 0) else (Z2 if i % 2 else ZERO)
            assert cohomology(base_complex(p, 1), i) == want


@pytest.mark.parametrize("pq", sorted(REFERENCE))
def test_reference_groups(pq):
    p, q = pq
    tab = singular_table(p, q)
    for row, cells in REFERENCE[pq].items():
        for i, cell in enumerate(cells):
            g = tab[row][i]
            assert ["Z"] * g.free_rank + [f"Z/{t}" for t in g.torsion] == sorted(cell_group(cell), key=len)


@pytest.mark.parametrize("pq", sorted(REFERENCE))
def test_reference_labels(pq):
    p, q = pq
    _, rows = table_sing(p, q)
    for row in rows:
        name, cells = row[0], row[1:]
        for i, (got, want) in enumerate(zip(cells, REFERENCE[pq][name])):
            if (p, q, name, i) in MISLABELED:
                assert got != want
            else:
                assert got == want


@given(st.integers(1, 6), st.integers(0, 3), st.integers(0, 1))
def test_euler_characteristic_of_quadrics(p, dq, s):
    q = p + dq
    c = quadric_complex(p, q, s)
    ranks = [cohomology(c, i, "Q").free_rank for i in range(p + q + 1)]
    assert euler_characteristic(c) == sum((-1) ** i * r for i, r in enumerate(ranks))


@given(st.integers(1, 6), st.integers(0, 3), st.integers(0, 1))
def test_poincare_rank_symmetry(p, dq, s):
    # the orientation character of Q_{p,q} is trivial exactly when p + q is even
    q = p + dq
    n, w = p + q, (p + q) % 2
    for i in range(n + 1):
        assert group_of(p, q, s, i, "Q").free_rank == group_of(p, q, s + w, n - i, "Q").free_rank


@given(st.integers(1, 6), st.integers(0, 3), st.integers(0, 1))
def test_mod2_dimension_is_total(p, dq, s):
    q = p + dq
    assert sum(group_of(p, q, s, i, "Z/2").ngens for i in range(p + q + 1)) == 2 * (p + 1)


def test_reduction_classification_small():
    for p in range(1, 5):
        for q in range(p, 5):
            spec = QuadricSpec(p, q)
            for s in (0, 1):
                for i in range(p + q + 1):
                    src = group_of(p, q, s, i)
                    kind = expected_reduction_kind(src, p, q, s, i)
                    got = reduction_kinds(spec, s, i)
                    if kind == "zero":
                        assert src.is_zero()
                    else:
                        assert kind in got


def test_middle_degree_cases():
    # Q_{p,p} middle degree: Z^2 onto Z/2 + Z/2, or Z/2 into it
    assert group_of(4, 4, 1, 4) == FinAbGroup(2)
    assert reduction_kinds(QuadricSpec(4, 4), 1, 4) >= {"surjective"}
    assert group_of(4, 4, 0, 4) == Z2
    assert reduction_kinds(QuadricSpec(4, 4), 0, 4) == {"injective"}


def test_bad_dimensions():
    with pytest.raises(ValueError):
        quadric_complex(3, 2, 0)
    with pytest.raises(ValueError):
        base_complex(-1, 0)
