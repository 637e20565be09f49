import pytest

from helpers import C2, E2, F2, SEC6, Z2X, fx, text
from lcsc import check_R_condition, factorize, find_atoms, transversal, verify_zs_decomposition
from lcsc.errors import NoFactorization


def test_atoms_free_monoid():
    b = fx(F2)
    assert sorted(b.cat.name(a) for a in find_atoms(b.cat, b.d)) == ["a", "b"]


def test_atoms_c2_empty():
    b = text(C2)
    assert find_atoms(b.cat, b.d) == frozenset()


def test_atoms_sec6_are_length_one():
    b = fx(SEC6)
    atoms = find_atoms(b.cat, b.d)
    assert atoms == frozenset(m for m in range(b.cat.n) if b.d(m) == 1)
    assert len(atoms) == 27     # c^m a c^n with three exponents per side at three positions


@pytest.mark.parametrize("src,expected", [(F2, ["a", "b"]), (Z2X, ["x"])], ids=["F2", "Z2x"])
def test_r_condition(src, expected):
    b = fx(src)
    B = transversal(b.cat, d=b.d)
    assert B.names() == expected
    assert check_R_condition(b.cat, B).holds


def test_r_condition_e2():
    cat = text(E2).cat
    B = transversal(cat)
    assert B.names() == ["e"]
    assert check_R_condition(cat, B).status == "holds"


def test_factorize_free():
    b = fx(F2)
    B = transversal(b.cat, d=b.d)
    assert factorize(b.cat, B, b.cat["ab"]) == (b.cat["ab"], b.cat["id_v"])
    assert factorize(b.cat, B, b.cat["id_v"]) == (b.cat["id_v"], b.cat["id_v"])


def test_factorize_pushes_unit_right():
    b = fx(Z2X)
    B = transversal(b.cat, d=b.d)
    assert factorize(b.cat, B, b.cat["xxc"], debug=True) == (b.cat["xx"], b.cat["c"])


def test_factorize_reports_missing():
    b = fx(Z2X)
    B = transversal(b.cat, atoms=set(), d=None)
    with pytest.raises(NoFactorization):
        factorize(b.cat, B, b.cat["x"])


@pytest.mark.parametrize("src", [F2, Z2X, SEC6], ids=["F2", "Z2x", "sec6"])
def test_decomposition(src):
    b = fx(src)
    rep = verify_zs_decomposition(b.cat, b.d, transversal(b.cat, d=b.d))
    assert rep.holds, rep.failures()
    assert rep["bijection"].holds and rep["isomorphism"].holds
    assert rep["UFP-on-B*"].holds
