import pytest

import oracles as O
from helpers import C2, E2, F2, NOT_LEFT_CANCELLATIVE, fx, text
from lcsc import (check_cancellation, equivalent, initial_segments, invertibles, is_exhaustive,
                  is_finitely_aligned, minimal_common_extensions, validate_category)
from lcsc.errors import NotComposable, ValidationError
from lcsc import FiniteCategory


@pytest.fixture(scope="module")
def e2():
    return text(E2).cat


@pytest.fixture(scope="module")
def c2():
    return text(C2).cat


@pytest.fixture(scope="module")
def f2():
    return fx(F2).cat


def names(cat, ms):
    return sorted(cat.name(m) for m in ms)


def test_identity_law(e2):
    assert e2.compose(e2["e"], e2["id_u"]) == e2["e"]


def test_free_composition(f2):
    assert f2.name(f2.compose(f2["a"], f2["b"])) == "ab"


def test_not_composable(e2):
    with pytest.raises(NotComposable):
        e2.compose(e2["e"], e2["e"])


def test_beyond_horizon_is_distinguished(f2):
    from lcsc.errors import BeyondHorizon
    with pytest.raises(BeyondHorizon):
        f2.compose(f2["aaaa"], f2["a"])


@pytest.mark.parametrize("src,expected", [(E2, ["id_u", "id_v"]), (C2, ["g", "id_v"])])
def test_invertibles(src, expected):
    cat = text(src).cat
    assert names(cat, invertibles(cat)) == expected
    assert sorted(O.invertibles(cat)) == sorted(invertibles(cat))


def test_c2_inverse(c2):
    assert c2.inverse[c2["g"]] == c2["g"]


def test_free_monoid_has_only_identity(f2):
    assert names(f2, invertibles(f2)) == ["id_v"]


@pytest.mark.parametrize("src,b,expected", [
    (E2, "e", ["e", "id_v"]),
    (C2, "g", ["g", "id_v"]),
])
def test_initial_segments(src, b, expected):
    cat = text(src).cat
    assert names(cat, initial_segments(cat, cat[b])) == expected
    assert initial_segments(cat, cat[b]) == O.segments(cat, cat[b])


def test_initial_segments_free(f2):
    assert names(f2, initial_segments(f2, f2["ab"])) == ["a", "ab", "id_v"]


def test_equivalence(c2, f2):
    assert equivalent(f2, f2["a"], f2["a"])
    assert equivalent(c2, c2["id_v"], c2["g"])
    assert not equivalent(f2, f2["a"], f2["ab"])


def test_minimal_common_extensions(f2, c2):
    assert minimal_common_extensions(f2, f2["a"], f2["b"]) == frozenset()
    assert names(f2, minimal_common_extensions(f2, f2["a"], f2["ab"])) == ["ab"]
    assert names(c2, minimal_common_extensions(c2, c2["id_v"], c2["g"])) == ["id_v"]


def test_minimal_common_extensions_match_oracle(f2):
    for a in range(f2.n):
        for b in range(f2.n):
            assert set(minimal_common_extensions(f2, a, b)) == O.minimal_common_extensions(f2, a, b)


def test_alignment(e2, c2, f2):
    assert is_finitely_aligned(e2).status == "holds"
    assert is_finitely_aligned(c2).status == "holds"
    v = is_finitely_aligned(f2)
    assert v.status == "holds-up-to-horizon"
    assert v.data["singly_aligned"]


def test_exhaustive(e2, f2):
    assert is_exhaustive(e2, [e2["e"]], e2["id_v"])
    assert is_exhaustive(f2, [f2["a"], f2["b"]], f2["id_v"])
    assert not is_exhaustive(f2, [f2["a"]], f2["id_v"])
    for F in ([f2["a"]], [f2["a"], f2["b"]], [f2["ab"], f2["b"]], [f2["aa"], f2["ab"], f2["b"]]):
        assert is_exhaustive(f2, F, f2["id_v"]) == O.exhaustive(f2, F, f2["id_v"])


def test_cancellation_e2(e2):
    rep = check_cancellation(e2)
    assert {k: v.status for k, v in rep.parts.items()} == {
        "left": "holds", "right": "holds", "no-inverses": "holds"}


def test_cancellation_c2(c2):
    rep = check_cancellation(c2)
    assert rep["left"].holds and rep["right"].holds
    assert rep["no-inverses"].fails
    assert rep["no-inverses"].witness == (c2["g"],)


def test_left_cancellation_failure():
    cat = text(NOT_LEFT_CANCELLATIVE).cat
    rep = check_cancellation(cat)
    assert rep["left"].fails
    assert rep["left"].witness == (cat["x"], cat["b"], cat["c"])
    assert not O.left_cancellative(cat)


def test_missing_product_rejected():
    with pytest.raises(ValidationError):
        FiniteCategory(["v"], ["id_v", "a"], [0, 0], [0, 0], [0], {})


def test_wrong_ends_rejected():
    with pytest.raises(ValidationError):
        FiniteCategory(["u", "v"], ["id_u", "id_v", "e"], [0, 1, 0], [0, 1, 1], [0, 1],
                       {(2, 0): 1})


def test_validate_category_sec6():
    from helpers import SEC6
    assert validate_category(fx(SEC6).cat).holds
