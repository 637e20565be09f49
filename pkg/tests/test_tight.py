import pytest

import oracles as O
from helpers import (E2_TRIVIAL, EP, F2, F2_TRIVIAL, NONHAUSDORFF, SEC6, fixture, fx, sec6_kernel,
                     text)
from lcsc import (check_hausdorff, check_minimality, check_star_property, check_topological_freeness,
                  kernel_and_tg, simplicity_condition)
from lcsc.checks import _rebuild, system_of
from lcsc.errors import PreconditionUnverified
from lcsc.tight import fixed_sets, independent_lower_bound, precondition


def test_sec6_hausdorff_by_fast_path():
    v = check_hausdorff(fx(SEC6).system)
    assert v.status == "hausdorff" and v.data["fast_path"]


def test_ep_hausdorff():
    assert check_hausdorff(fx(EP).system).status == "hausdorff"


def test_nonhausdorff_growth():
    b = fx(NONHAUSDORFF)
    v = check_hausdorff(b.system, (4, 6, 8), _rebuild(b))
    assert v.status == "not-hausdorff"
    assert not v.data["fast_path"]
    cert = v.data["certificate"]
    assert cert["s"] == ["id_v", "id_v", "s"]
    lbs = cert["lower_bounds"]
    assert len(lbs) == 3 and lbs[0] < lbs[1] < lbs[2]
    assert all(lb <= ub for lb, ub in zip(lbs, cert["upper_bounds"]))


def test_nonhausdorff_fixed_set_is_words_with_b():
    b = fx(NONHAUSDORFF, horizon=4)
    S, L, G = b.system, b.cat, b.system.G
    idv, s = L["id_v"], G["s"]
    got = set(fixed_sets(S)[(idv, idv, s)].tolist())
    assert got == O.fixed_set(S, idv, idv, s)
    assert got == {m for m in range(L.n) if "b" in L.name(m)}


def test_single_horizon_is_inconclusive():
    b = fx(NONHAUSDORFF)
    assert check_hausdorff(b.system).inconclusive


def test_independent_lower_bound_is_independent():
    import numpy as np
    meet = np.array([[1, 1, 0, 0], [1, 1, 1, 0], [0, 1, 1, 0], [0, 0, 0, 1]], dtype=bool)
    k, chosen = independent_lower_bound(meet)
    assert k == len(chosen) == 2
    # no row meets two chosen columns, and no further column can be added
    assert all(sum(meet[i, j] for j in chosen) <= 1 for i in range(4))
    for c in set(range(4)) - set(chosen):
        assert any(sum(meet[i, j] for j in chosen + [c]) > 1 for i in range(4))


def test_sec6_topologically_free_and_minimal():
    S = fx(SEC6).system
    pre = precondition(S, check_hausdorff(S))
    assert check_topological_freeness(S, pre).holds
    assert check_minimality(S, pre).holds
    assert simplicity_condition(S, pre).holds


def test_free_monoid_simple():
    S = fx(F2_TRIVIAL, horizon=3).system
    assert check_topological_freeness(S).holds
    assert check_minimality(S).holds
    assert simplicity_condition(S).holds


def test_free_monoid_without_groupoid():
    S = system_of(fx(F2))
    assert check_topological_freeness(S).holds
    assert check_minimality(S).holds


def test_trivial_action_not_topologically_free():
    b = fixture("trivial", (("order", 1), ("group", 2)))
    v = check_topological_freeness(b.system)
    assert v.fails
    assert v.witness == (0, 0, 0, 1)
    assert not O.topologically_free(b.system)
    assert check_minimality(b.system).holds


def test_e2_trivial_group():
    S = text(E2_TRIVIAL).system
    assert check_minimality(S).holds == O.minimal(S)
    assert check_minimality(S).holds
    assert simplicity_condition(S).holds


def test_precondition_unverified_on_nonhausdorff_window():
    b = fx(NONHAUSDORFF)
    with pytest.raises(PreconditionUnverified):
        check_topological_freeness(b.system)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_star_fast_path_agrees_with_table(g):
    b = fx(F2)
    fast = check_star_property(b.cat, b.d, g)
    slow = check_star_property(b.cat, b.d, g, fast_path=False)
    assert fast.verdict.holds and slow.verdict.holds
    assert fast.beta == slow.beta


def test_star_prefixes_in_free_monoid():
    b = fx(F2)
    L = b.cat
    st = check_star_property(L, b.d, 2)
    for top, beta in st.beta.items():
        assert L.name(beta) == L.name(top)[:2]


def test_star_trivial_length():
    from helpers import C2
    b = text(C2)
    assert check_star_property(b.cat, b.d, 0).verdict.holds


def test_kernel_free_monoid():
    res = kernel_and_tg(system_of(fx(F2)), [1])
    assert res.report.holds
    piece = res.pieces[1]
    assert len(piece.keys) > 0
    assert (piece.t == 0).all()      # t^(1) lands on the unit


def test_kernel_requires_length():
    from lcsc.checks import system_of as so
    b = text(E2_TRIVIAL)
    with pytest.raises(PreconditionUnverified):
        kernel_and_tg(so(b), [1])


def test_sec6_kernel_pieces():
    res = sec6_kernel()
    assert res.report.holds, res.report.failures()
    sizes = [len(res.pieces[g].keys) for g in sorted(res.pieces)]
    assert sizes == sorted(sizes)
    assert any(k.startswith("closure[1,2]") for k in res.report.parts)
