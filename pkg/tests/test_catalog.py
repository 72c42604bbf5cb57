import pytest

from qcohom.abelian import FinAbGroup
from qcohom.catalog import (
    BaseTerm,
    DimensionError,
    SelfCheckError,
    _mw_split,
    _mw_table,
    check_hom_iso_window,
    ibar_to_mod2_singular,
    ibar_vs_ch,
    index_sets,
    milnor_witt_projective,
    milnor_witt_quadric,
    mod2_singular,
    projective_I,
    quadric_I_field,
    quadric_I_symbolic,
    realization,
    red_I_to_Ibar,
    ring_chow,
    ring_I_total,
    ring_milnor,
    ring_singular_integral,
    split_dims,
)
from qcohom.coefficients import CoefficientLabel, SymbolicGroupExpr, complexes, finite_field, reals
from qcohom.presented_ring import DegreeVector as D
from qcohom.presented_ring import PresentationError, Window, check_hom, check_iso, module_basis
from qcohom.verify import projective_crosscheck, quadric_crosscheck, quadric_ring_relations


def L(fam, j=0):
    return CoefficientLabel(fam, j)


def test_index_sets():
    assert index_sets(5).T == {2, 5} and index_sets(5).U == {1, 4}
    assert index_sets(4).T == {2, 3}
    assert index_sets(3).T == {3}
    with pytest.raises(DimensionError):
        index_sets(2)


def test_index_sets_disjoint():
    for n in range(3, 14):
        s = index_sets(n)
        lo, hi = set(range(1, n // 2 + 1)), set(range((n + 1) // 2 + 1, n + 1))
        assert not (s.T & s.U & lo) and not (s.T & s.U & hi)
        assert s.T | s.U <= set(range(1, n + 1))


def test_projective_examples():
    assert projective_I(3, 3, 3, 0).summands == (L("I", 0),)
    assert projective_I(3, 1, 2, 1).summands == (L("Ibar", 1),)
    assert projective_I(3, 2, 2, 1).is_zero()


def test_quadric_field_examples():
    assert quadric_I_field(4, 2, 2, 1).summands == (L("I", 0), L("I", 0))
    assert quadric_I_field(5, 3, 3, 0).summands == (L("I", 0),)
    assert quadric_I_field(5, 4, 4, 1).summands == (L("Ibar", 0),)
    # the upper Ibar band needs l and i of opposite parity
    assert quadric_I_field(5, 4, 4, 0).is_zero()


def test_quadric_symbolic_shapes():
    s = quadric_I_symbolic(5, 7, 7, 1)
    assert any(t.k == 2 and t.lab == L("I", 2) for t in s.terms)
    for i in range(7):
        assert all(t.lab.family == "Ibar" for t in quadric_I_symbolic(6, i, i + 1, 1).terms)
    s = quadric_I_symbolic(4, 2, 2, 1)
    assert [t for t in s.terms if t.lab.family == "I"] == [BaseTerm(0, L("I", 0))] * 2


def test_milnor_witt_examples():
    assert milnor_witt_projective(3, 0, 0, 0).summands == (L("GW"),)
    assert milnor_witt_projective(3, 3, 3, 0).summands == (L("GW"),)
    assert milnor_witt_projective(3, 1, 1, 1).summands == (L("KM", 0),)
    # i = 1 with l even falls in the 2K^M band
    assert milnor_witt_projective(3, 1, 1, 0).summands == (L("2KM", 0),)
    assert milnor_witt_quadric(4, 2, 3, 1).equivalent(SymbolicGroupExpr.of(L("KMW", 1), L("KMW", 1)))
    assert milnor_witt_quadric(4, 2, 2, 0).equivalent(SymbolicGroupExpr.of(L("KM", 0), L("2KM", 0)))
    assert milnor_witt_quadric(5, 3, 4, 0).summands == (L("KMW", 1),)


def test_milnor_witt_paths_agree():
    for n in range(3, 11):
        for i in range(-1, n + 2):
            for l in (0, 1):
                for j in (i, i + 1, i + 2):
                    assert _mw_split(n, i, j, l).equivalent(_mw_table(n, i, j, l))


def test_milnor_witt_self_check_is_live(monkeypatch):
    import qcohom.catalog as cat

    monkeypatch.setattr(cat, "_mw_table", lambda n, i, j, l: SymbolicGroupExpr())
    with pytest.raises(SelfCheckError):
        cat.milnor_witt_quadric(4, 0, 0, 0)


def test_ring_examples():
    R = ring_I_total(4, reals())
    assert "alpha^2 + beta^2" in R.relation_texts and "alpha*beta" in R.relation_texts
    assert "beta^2" in ring_singular_integral(5, 5).relation_texts
    C = ring_chow(5)
    assert C.generators[1].degree == D(3, 3, 0)
    assert "x^3 - 2*y" in C.relation_texts
    R5 = ring_I_total(7, reals())
    degs = {g.name: g.degree for g in R5.generators}
    assert degs["xi"] == D(1, 1, 1) and degs["alpha"] == D(3, 3, 0) and degs["beta"] == D(4, 4, 1)


def test_dimension_errors():
    with pytest.raises(DimensionError):
        ring_chow(2)
    with pytest.raises(PresentationError):
        realization(4, complexes())


def test_split_dims():
    assert split_dims(7) == (3, 4) and split_dims(8) == (4, 4)


@pytest.mark.parametrize("n", range(3, 9))
def test_milnor_diagonal_is_chow(n):
    M, C = ring_milnor(n), ring_chow(n)
    for i in range(n + 2):
        assert module_basis(M, D(i, i))[0] == module_basis(C, D(i, i))[0]


def test_milnor_over_finite_field():
    M = ring_milnor(4, finite_field(5))
    assert module_basis(M, D(2, 3))[0] == FinAbGroup(0, (4, 4))
    assert module_basis(M, D(2, 4))[0].is_zero()


def test_crosscheck_small():
    assert quadric_crosscheck(range(3, 7), ("reals", "fq:3")).ok
    assert projective_crosscheck(range(1, 5), ("complexes", "fq:5")).ok
    assert quadric_ring_relations(range(3, 6)).ok


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_realization(n):
    h = realization(n, reals())
    w = check_hom_iso_window(n)
    assert check_hom(h, w) and check_iso(h, w)


def test_realization_images():
    h = realization(4, reals())
    assert str(h.images["alpha"]) == "alpha - beta"
    assert str(red_I_to_Ibar(5, reals()).images["alpha"]) == "xi^2"


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_reduction_homs(n):
    for F in (reals(), finite_field(3), finite_field(5), complexes()):
        assert check_hom(red_I_to_Ibar(n, F), Window(n + 1, n + 1))
    for delta in (0, 1):
        h = ibar_vs_ch(n, delta)
        assert check_hom(h) and check_iso(h, Window(n + 1, n + 1))
    p, q = split_dims(n)
    assert check_hom(mod2_singular(p, q))
    assert check_iso(ibar_to_mod2_singular(n), Window(2 * n + 2, 2 * n + 2), Window(2 * n + 2, 0))


def test_mod2_square_commutes():
    # Ibar -> h(Q_{p,q}) after I -> Ibar agrees with realization followed by reduction mod 2
    for n in range(3, 9):
        p, q = split_dims(n)
        top = ibar_to_mod2_singular(n).compose_after(red_I_to_Ibar(n, reals()))
        bottom = mod2_singular(p, q).compose_after(realization(n, reals()))
        for name in ("xi", "alpha", "beta"):
            assert top.images[name].coords == bottom.images[name].coords, (n, name)
