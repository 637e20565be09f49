import pytest

import oracles as O
from helpers import C2, EP, F2_TRIVIAL, SEC6, Z2_TRIVIAL_ON_A, fx, text
from lcsc import (PartialIso, build, generate_fixture, is_pseudo_free, validate_action,
                  validate_category_cocycle)
from lcsc.action import piso_compose, piso_inverse, restrict, validate_partial_iso
from lcsc.errors import ValidationError


@pytest.fixture(scope="module")
def ep():
    return fx(EP)


@pytest.fixture(scope="module")
def swap(ep):
    return ep.system.action.phi(ep.system.G["s"])


def test_identity_partial_iso(ep):
    idv = PartialIso.identity(ep.cat, 0)
    assert validate_partial_iso(ep.cat, ep.d, idv).holds
    assert restrict(idv, ep.cat["a"]) == PartialIso.identity(ep.cat, 0)


def test_letter_swap_is_a_partial_iso(ep, swap):
    assert validate_partial_iso(ep.cat, ep.d, swap).holds
    assert ep.cat.name(swap(ep.cat["aab"])) == "bba"


def test_letter_swap_restriction(ep, swap):
    assert restrict(swap, ep.cat["a"]) == swap
    assert restrict(swap, ep.cat["ab"]) == swap


def test_letter_swap_group_laws(ep, swap):
    idv = PartialIso.identity(ep.cat, 0)
    assert piso_inverse(swap) == swap
    assert piso_compose(swap, swap) == idv
    assert piso_compose(swap, idv) == swap


def test_left_multiplication_by_unit_breaks_unit_condition():
    cat = text(C2).cat
    g = cat["g"]
    f = PartialIso.from_map(cat, 0, 0, {m: int(cat.comp[g, m]) for m in range(cat.n)})
    rep = validate_partial_iso(cat, None, f)
    assert rep["bijection"].holds and rep["ideals"].holds
    assert rep["unit"].fails


def test_shift_restriction_sec6():
    b = fx(SEC6)
    A, G, L = b.system.action, b.system.G, b.cat
    for i in range(3):
        assert restrict(A.phi(G[f"g{i}"]), L[f"a{(i - 1) % 3}"]) == A.phi(G[f"g{(i - 1) % 3}"])


@pytest.mark.parametrize("spec", [F2_TRIVIAL, EP, SEC6], ids=["F2-trivial", "EP", "sec6"])
def test_actions_and_cocycles_validate(spec):
    b = fx(spec)
    assert validate_action(b.system.action, b.d).holds
    rep = validate_category_cocycle(b.system)
    assert rep.holds
    assert all(rep[f"axiom{k}"].holds for k in range(1, 6))
    assert rep["restriction"].holds


def test_corrupted_cocycle_is_rejected():
    desc = generate_fixture("exel-pardo-swap", {"horizon": 3})
    desc.cocycle = [("s", "a", ("id_v",)), ("s", "b", ("s",))]
    with pytest.raises(ValidationError):
        build(desc)
    rep = build(desc, strict=False).certificates["cocycle"]
    assert rep.fails
    g, *_ = next(iter(rep.failures().values())).witness
    assert g == 1  # the swap


@pytest.mark.parametrize("spec,expected", [(EP, True), (SEC6, True), (Z2_TRIVIAL_ON_A, False)],
                         ids=["EP", "sec6", "z2-trivial"])
def test_pseudo_freeness(spec, expected):
    b = fx(spec)
    v = is_pseudo_free(b.system)
    assert v.holds == expected
    assert O.pseudo_free(b.system) == expected


def test_pseudo_free_witness():
    b = fx(Z2_TRIVIAL_ON_A)
    v = is_pseudo_free(b.system)
    g, a, f = v.witness
    assert b.system.G.name(g) == "s" and b.cat.name(a) == "a" and b.cat.is_identity(f)
