import pytest

from helpers import C2, F2, FIXED_BY_UNIT, SEC6, fx, n2, text
from lcsc import LengthAssignment, check_wfp, is_action_free
from lcsc.errors import NoJoin
from lcsc.length import validate_length, wfp_order_agrees
from lcsc.monoid import FreeMonoid, NaturalPowers, Naturals, NumericalMonoid


def test_word_length_on_free_monoid():
    b = fx(F2)
    rep = validate_length(b.cat, b.d)
    assert rep.holds
    assert rep["LF1"].status == "holds"


def test_trivial_length_on_c2():
    b = text(C2)
    assert validate_length(b.cat, b.d).verdict == "holds"


def test_lf1_failure_when_a_has_length_zero():
    b = fx(F2)
    cat = b.cat
    d = LengthAssignment(cat, Naturals(), [cat.name(m).count("b") for m in range(cat.n)])
    rep = validate_length(cat, d)
    assert rep["homomorphism"].holds
    assert rep["LF1"].fails
    assert rep["LF1"].witness == (cat["a"],)


def test_ufp_on_free_monoid():
    b = fx(F2)
    v = check_wfp(b.cat, b.d)
    assert v.status == "holds-up-to-horizon"
    assert v.data["ufp"]


def test_wfp_sec6():
    b = fx(SEC6)
    v = check_wfp(b.cat, b.d)
    assert v.holds and not v.data["ufp"]


def test_wfp_fails_on_commutative_n2():
    b = n2()
    v = check_wfp(b.cat, b.d)
    assert v.fails
    a, x1, y1, x2, y2 = v.witness
    assert b.cat.name(a) == "ab"
    assert {(b.cat.name(x1), b.cat.name(y1)), (b.cat.name(x2), b.cat.name(y2))} == {("a", "b"), ("b", "a")}


def test_numerical_length_is_a_functor():
    from lcsc import build
    from lcsc.fixtures import numerical_25
    b = build(numerical_25(12))
    rep = validate_length(b.cat, b.d)
    assert rep["homomorphism"].holds and rep["LF1"].holds


def test_wfp_order_agrees_on_free_monoid():
    b = fx(F2)
    assert wfp_order_agrees(b.cat, b.d).holds


def test_action_freeness():
    assert is_action_free(fx(F2).cat).holds
    assert is_action_free(text(C2).cat).holds
    cat = text(FIXED_BY_UNIT).cat
    v = is_action_free(cat)
    assert v.fails and v.witness == (cat["g"], cat["x"])


def test_joins():
    assert NaturalPowers(2).join((2, 0), (1, 3)) == (2, 3)
    assert Naturals().join(2, 5) == 5
    with pytest.raises(NoJoin):
        FreeMonoid(["x", "y"]).join("x", "y")


def test_join_semilattice_flags():
    assert Naturals().is_join_semilattice()
    assert NaturalPowers(3).is_join_semilattice()
    assert not FreeMonoid(["x", "y"]).is_join_semilattice()


def test_numerical_monoid_membership():
    M = NumericalMonoid([2, 5])
    assert 1 not in M and 3 not in M
    assert all(k in M for k in (0, 2, 4, 5, 6, 7, 9, 10))
    assert not M.leq(2, 5)          # 5 - 2 = 3 ∉ ⟨2,5⟩
    assert M.leq(2, 7)
