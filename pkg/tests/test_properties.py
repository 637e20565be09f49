"""Invariants checked over randomly generated category systems and truncated fixtures."""
import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import oracles as O
from helpers import fixture
from lcsc import (check_cancellation, check_wfp, enumerate_filters, equivalent, filter_transfer,
                  find_atoms, initial_segments, is_action_free, minimal_common_extensions, parse,
                  serialize)
from lcsc.action import restrict
from lcsc.errors import NoJoin
from lcsc.factorization import atom_decompositions, maximal_ideal_generators
from lcsc.fixtures import numerical_25, random_description, random_system
from lcsc.monoid import FreeMonoid, NaturalPowers, NumericalMonoid

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

seeds = st.integers(min_value=0, max_value=10**6)

truncated = st.sampled_from([
    ("rose-k", (("k", 2), ("horizon", 3))),
    ("rose-k", (("k", 2), ("horizon", 3), ("commute", 1))),
    ("exel-pardo-swap", (("horizon", 3),)),
    ("z2-central", (("horizon", 4),)),
    ("sec6", (("N", 2), ("horizon", 3), ("P", 2))),
])


def system(seed):
    return random_system(seed)[1]


def categories():
    return st.one_of(seeds.map(lambda s: system(s).cat), truncated.map(lambda t: fixture(*t).cat))


@SETTINGS
@given(categories())
def test_equivalence_three_ways(cat):
    for a in range(cat.n):
        for b in range(cat.n):
            same_ideal = bool((cat.ideal_mask[a] == cat.ideal_mask[b]).all())
            units = any(cat.comp[a, g] == b for g in cat.invertible_ids)
            assert equivalent(cat, a, b) == same_ideal
            if not cat.truncated:
                assert same_ideal == units


@SETTINGS
@given(categories())
def test_common_extensions_cover_intersection(cat):
    for a in range(cat.n):
        for b in range(cat.n):
            mce = minimal_common_extensions(cat, a, b)
            common = np.flatnonzero(cat.ideal_mask[a] & cat.ideal_mask[b])
            assert bool(mce) == bool(len(common))
            for c in common.tolist():
                assert any(cat.ideal_mask[m, c] for m in mce)


@SETTINGS
@given(categories())
def test_initial_segments_monotone(cat):
    for a in range(cat.n):
        for b in np.flatnonzero(cat.ideal_mask[a]).tolist():
            assert initial_segments(cat, a) <= initial_segments(cat, b)


@SETTINGS
@given(categories())
def test_idempotents_are_identities(cat):
    if not check_cancellation(cat)["left"].holds:
        return
    for m in range(cat.n):
        if cat.comp[m, m] == m:
            assert cat.is_identity(m)


@SETTINGS
@given(seeds)
def test_wfp_consequences(seed):
    b = system(seed)
    cat, d = b.cat, b.d
    if not check_wfp(cat, d).holds:
        return
    assert check_cancellation(cat)["right"].holds == is_action_free(cat).holds
    zero = {m for m in range(cat.n) if d(m) == d.monoid.unit}
    assert zero == set(cat.invertible_ids.tolist())
    M = d.monoid
    for a in range(cat.n):
        for c in range(cat.n):
            if cat.meets(a, c):
                assert cat.leq(a, c) == M.leq(d(a), d(c))
                for g in minimal_common_extensions(cat, a, c):
                    assert d(g) == M.join(d(a), d(c))
                assert len(minimal_common_extensions(cat, a, c)) == 1


@SETTINGS
@given(seeds)
def test_length_is_a_functor(seed):
    b = system(seed)
    cat, d, M = b.cat, b.d, b.d.monoid
    for (x, y), c in O.table(cat).items():
        assert d(c) == M.op(d(x), d(y))


@SETTINGS
@given(seeds)
def test_restriction_ledger(seed):
    S = system(seed).system
    L, G, A = S.cat, S.G, S.action
    for g in range(G.n):
        f = A.phi(g)
        assert restrict(f, L.identity(f.dom)) == f
        for a in f.domain.tolist():
            fa = restrict(f, a)
            assert fa.cod == L.src(f(a))
            for c in fa.domain.tolist():
                ac = int(L.comp[a, c])
                if ac >= 0:
                    assert restrict(fa, c) == restrict(f, ac)


@SETTINGS
@given(seeds)
def test_cocycle_equivariance(seed):
    S = system(seed).system
    L, G, A = S.cat, S.G, S.action
    for g in range(G.n):
        for a in range(L.n):
            if not A.applicable[g, a]:
                continue
            ga, k = int(A.act[g, a]), int(A.coc[g, a])
            assert L.r[ga] == A.unit_object[G.r[g]]
            assert A.unit_object[G.s[k]] == L.s[a]
            # φ̂(g,α)⁻¹ = φ̂(g⁻¹, g·α)
            assert int(G.inverse[k]) == int(A.coc[int(G.inverse[g]), ga])


@SETTINGS
@given(seeds)
def test_product_order_and_pairs(seed):
    b = system(seed)
    P, L = b.product, b.cat
    Pc = P.cat
    units = P.unit_pairs
    for m in range(P.n):
        a, g = P.pair(m)
        assert Pc.equivalent(m, int(units[a]))
        for k in range(P.n):
            assert Pc.leq(m, k) == L.leq(a, P.pair(k)[0])


@SETTINGS
@given(seeds)
def test_filter_transfer_random(seed):
    b = system(seed)
    assert filter_transfer(b.system, b.product).holds


@SETTINGS
@given(categories())
def test_filters_are_hereditary_and_directed(cat):
    fs = enumerate_filters(cat)
    for F in fs.star:
        members = set(F.members)
        assert members
        for a in members:
            assert initial_segments(cat, a) <= members
        for a in members:
            for c in members:
                assert any(cat.leq(a, x) and cat.leq(c, x) for x in members)


@SETTINGS
@given(categories())
def test_atoms_generate_and_maximal_ideals(cat):
    atoms = find_atoms(cat)
    gens = maximal_ideal_generators(cat)
    assert atoms == gens
    for m in range(cat.n):
        if not cat.is_invertible(m):
            assert atom_decompositions(cat, atoms, m, limit=1)


def test_atomic_decompositions_need_not_have_equal_length():
    from lcsc import build
    b = build(numerical_25(12))
    L = b.cat
    atoms = find_atoms(L, b.d)
    lengths = {len(w) for w in atom_decompositions(L, atoms, L["qq"], limit=64)}
    assert lengths >= {2, 5}


@SETTINGS
@given(seeds)
def test_random_description_round_trip(seed):
    text = serialize(random_description(seed))
    assert serialize(parse(text)) == text


monoid_elems = st.tuples(st.integers(0, 5), st.integers(0, 5))


@SETTINGS
@given(monoid_elems, monoid_elems, monoid_elems)
def test_nat2_join_is_least_upper_bound(a, b, c):
    M = NaturalPowers(2)
    j = M.join(a, b)
    assert M.leq(a, j) and M.leq(b, j)
    if M.leq(a, c) and M.leq(b, c):
        assert M.leq(j, c)
    if M.leq(a, b) and M.leq(b, a):
        assert a == b
    assert M.op(M.op(a, b), c) == M.op(a, M.op(b, c))
    assert M.op(a, M.unit) == a


@SETTINGS
@given(st.integers(0, 30), st.integers(0, 30))
def test_numerical_join_is_least(a, b):
    M = NumericalMonoid([2, 5])
    if a not in M or b not in M:
        return
    try:
        j = M.join(a, b)
    except NoJoin:
        return
    assert M.leq(a, j) and M.leq(b, j)
    for c in range(j):
        if c in M:
            assert not (M.leq(a, c) and M.leq(b, c))


@SETTINGS
@given(st.text("xy", max_size=4), st.text("xy", max_size=4))
def test_free_monoid_order(u, v):
    M = FreeMonoid(["x", "y"])
    a, b = M.coerce(u), M.coerce(v)
    assert M.leq(a, b) == v.startswith(u)


@SETTINGS
@given(seeds)
def test_failure_witnesses_replay(seed):
    """Witnesses of failing freeness and pseudo-freeness checks replay through the oracles."""
    from lcsc import check_topological_freeness, is_pseudo_free
    S = system(seed).system
    L, G, A = S.cat, S.G, S.action
    v = check_topological_freeness(S)
    if v.fails:
        al, be, a, bb = v.witness
        x = int(A.unit_object[G.s[a]])
        deltas = [d for d in range(L.n) if L.r[d] == x]
        E = [d for d in deltas if L.comp[al, A.act[a, d]] == L.comp[be, A.act[bb, d]]
             and A.coc[a, d] == A.coc[bb, d]]
        assert not O.exhaustive(L, E, L.identity(x))
    p = is_pseudo_free(S)
    if p.fails:
        assert not O.pseudo_free(S)
