import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcohom.abelian import FinAbGroup
from qcohom.coefficients import (
    OPAQUE,
    CoefficientLabel,
    DatumError,
    OpaqueError,
    SymbolicGroupExpr,
    builtin_datum,
    coefficient_ring_presentation,
    complexes,
    evaluate,
    finite_field,
    from_json,
    label,
    parse_label,
    reals,
    witt_oracle,
)
from qcohom.presented_ring import DegreeVector, Generator, GradedAlgebraPresentation, Window, module_basis

Z, Z2 = FinAbGroup(1), FinAbGroup(0, (2,))


def E(*names):
    return SymbolicGroupExpr.of(*(parse_label(n) for n in names))


def test_label_normalization():
    assert str(CoefficientLabel("I", -3)) == "I^0(F)"
    assert CoefficientLabel("I", 0).canonical == CoefficientLabel("W")
    assert CoefficientLabel("KMW", 0) == CoefficientLabel("GW")
    assert CoefficientLabel("KMW", -2) == CoefficientLabel("W")
    assert label("Ibar", -1) is None and label("KM", -1) is None and label("2KM", -2) is None
    assert parse_label("twoKM_3") == CoefficientLabel("2KM", 3)
    assert parse_label("Ī^2") == CoefficientLabel("Ibar", 2)
    assert parse_label("K^MW_1(F)") == CoefficientLabel("KMW", 1)
    with pytest.raises(DatumError):
        parse_label("Q^2")


def test_printing():
    assert str(E("I^0")) == "I^0(F)"
    assert str(E("KMW_1", "KMW_1")) == "K^MW_1(F) ⊕ K^MW_1(F)"
    assert str(E("2KM_0", "KM_0")) == "K^M_0(F) ⊕ 2K^M_0(F)"
    assert str(SymbolicGroupExpr()) == "0"


def test_evaluate_examples():
    R = reals()
    assert evaluate(E("Ibar^2"), R) == Z2
    assert evaluate(E("I^1"), complexes()).is_zero()
    assert evaluate(E("W"), finite_field(3)) == FinAbGroup(0, (4,))
    assert evaluate(E("Ibar^1", "Ibar^3"), R) == FinAbGroup(0, (2, 2))
    assert evaluate(SymbolicGroupExpr(), R).is_zero()
    with pytest.raises(OpaqueError, match="K\\^M_1"):
        evaluate(E("KM_1"), R)
    assert R.evaluate_or_opaque(E("KM_1", "W")) is OPAQUE


def test_reals_signature():
    # I^j(R) = 2^j Z under the signature, so I^j is Z and Ibar^j is Z/2
    R = reals()
    for j in range(6):
        assert R.lookup(CoefficientLabel("I", j)) == Z
        assert R.lookup(CoefficientLabel("Ibar", j)) == Z2
    assert R.lookup(CoefficientLabel("GW")) == FinAbGroup(2)


@pytest.mark.parametrize("q,want", [(3, FinAbGroup(0, (4,))), (5, FinAbGroup(0, (2, 2))), (7, FinAbGroup(0, (4,))),
                                    (9, FinAbGroup(0, (2, 2))), (11, FinAbGroup(0, (4,)))])
def test_witt_oracle(q, want):
    assert witt_oracle(q, 4) == want
    assert finite_field(q).lookup(CoefficientLabel("W")) == want


def test_even_q_rejected():
    with pytest.raises(DatumError):
        finite_field(4)
    with pytest.raises(DatumError):
        builtin_datum("fq:6")
    with pytest.raises(DatumError):
        builtin_datum("rationals")


@given(st.sampled_from([3, 5, 7, 9, 11, 13]), st.integers(0, 6))
def test_filtration_quotients(q, j):
    F = finite_field(q)
    # |I^j| = |I^{j+1}| * |Ibar^j| for finite groups
    a, b, c = (F.lookup(CoefficientLabel(f, k)) for f, k in (("I", j), ("I", j + 1), ("Ibar", j)))
    assert a.order() == b.order() * c.order()


def test_json_roundtrip(tmp_path):
    for F in (reals(), finite_field(3), finite_field(5)):
        path = tmp_path / "f.json"
        path.write_text(json.dumps(F.to_json()))
        G = builtin_datum(f"file:{path}")
        for fam in ("W", "I", "Ibar", "KM", "KMW", "2KM"):
            for j in range(4):
                lab = CoefficientLabel(fam, j)
                assert G.lookup(lab) == F.lookup(lab)


def test_bad_datum_is_rejected():
    bad = {"field": "x", "stable_from": 1,
           "groups": {"W": {"free_rank": 1, "torsion": []}, "I^1": {"free_rank": 1, "torsion": []},
                      "Ibar^0": {"free_rank": 0, "torsion": [4]}},
           "inclusions": {"0": [[2]]}}
    with pytest.raises(DatumError):
        from_json(bad)
    with pytest.raises(DatumError):
        from_json({"nothing": 1})


def _coefficient_presentation(F):
    cr = coefficient_ring_presentation(F)
    gens = [Generator(n, DegreeVector(*d), cap, tuple(rule)) for n, d, cap, rule in cr.generators]
    return GradedAlgebraPresentation("coeff", gens, list(cr.relations), window=Window(0, 8))


@pytest.mark.parametrize("name", ["reals", "complexes", "fq:3", "fq:5", "fq:7", "fq:13"])
def test_coefficient_ring_pieces(name):
    F = builtin_datum(name)
    P = _coefficient_presentation(F)
    for j in range(6):
        assert module_basis(P, DegreeVector(0, j, 0))[0] == F.lookup(CoefficientLabel("I", j))


def test_custom_datum_has_no_ring():
    F = from_json(reals().to_json())
    with pytest.raises(DatumError):
        coefficient_ring_presentation(F)
