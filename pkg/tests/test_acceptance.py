"""Acceptance criteria 1-9.  Each test prints one ``criterion N: PASS|FAIL`` line.

Run alone with ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import itertools
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles as O  # noqa: E402
from helpers import (E2, E2_TRIVIAL, ENUMERABLE, EP, F2, NONHAUSDORFF, SEC6, Z2_TRIVIAL_ON_A,  # noqa: E402
                     Z2X, fx, sec6_kernel, text)
from lcsc import (check_hausdorff, check_minimality, check_preservation,  # noqa: E402
                  check_star_property, check_topological_freeness, check_wfp, enumerate_filters,
                  factorize, filter_transfer, is_pseudo_free, simplicity_condition,
                  tight_germs, transversal, validate_category_cocycle, verify_zs_decomposition,
                  zs_invertibles)
from lcsc.checks import _rebuild, system_of  # noqa: E402
from lcsc.errors import NoFactorization  # noqa: E402
from lcsc.filters import brute_force_filters  # noqa: E402
from lcsc.fixtures import random_system  # noqa: E402
from lcsc.germs import check_germ_groupoid  # noqa: E402
from lcsc.tight import hausdorff_fast_path, precondition  # noqa: E402
from lcsc.zappa_szep import product_length  # noqa: E402

RANDOM_SEEDS = range(120)


def _report(n, ok, detail, capsys=None):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    return ok


# -- 1 ---------------------------------------------------------------------------

def criterion_1():
    S = fx(SEC6).system
    got = {
        "cocycle": validate_category_cocycle(S).holds,
        "pseudo-free": is_pseudo_free(S).holds,
    }
    h = check_hausdorff(S)
    got["hausdorff"] = h.status == "hausdorff"
    pre = precondition(S, h)
    got["top-free"] = check_topological_freeness(S, pre).holds
    got["minimal"] = check_minimality(S, pre).holds
    got["simplicity"] = simplicity_condition(S, pre).holds
    return all(got.values()), ", ".join(f"{k}={'yes' if v else 'NO'}" for k, v in got.items())


# -- 2 ---------------------------------------------------------------------------

def _alpha(P, m):
    return P.pair(m)[0]


def _brute_preservation(S, P):
    """The transfer statements evaluated directly on the product's table."""
    L, Pc = S.cat, P.cat
    tL, tP = O.table(L), O.table(Pc)
    out = {}
    out["left-cancellative"] = O.left_cancellative(Pc, tP) or not O.left_cancellative(L, tL)
    inv = O.invertibles(Pc, tP)
    th = zs_invertibles(P)
    out["invertibles"] = set(inv) == set(th.members) and all(th.inverse[m] == inv[m] for m in inv)
    ideals = all(
        O.right_ideal(Pc, m, tP) == {k for k in range(P.n) if _alpha(P, k) in O.right_ideal(L, _alpha(P, m), tL)}
        for m in range(P.n))
    out["ideals"] = ideals
    out["intersections"] = ideals and all(
        (O.right_ideal(Pc, x, tP) & O.right_ideal(Pc, y, tP))
        == {k for k in range(P.n)
            if _alpha(P, k) in O.right_ideal(L, _alpha(P, x), tL) & O.right_ideal(L, _alpha(P, y), tL)}
        for x in range(P.n) for y in range(P.n))
    single = lambda cat, t: all(len(O.minimal_common_extensions(cat, a, b, t)) <= 1
                                for a in range(cat.n) for b in range(cat.n))
    out["alignment"] = single(L, tL) == single(Pc, tP)
    ok = True
    for v in range(len(L.objects)):
        vP = [m for m in range(P.n) if Pc.r[m] == v]
        for k in range(1, min(len(vP), 3) + 1):
            for F in itertools.combinations(vP, k):
                H = sorted({_alpha(P, x) for x in F})
                for t in [Pc.identity(v)] + vP:
                    if O.exhaustive(Pc, F, t, tP) != O.exhaustive(L, H, _alpha(P, t), tL):
                        ok = False
    out["exhaustive-sets"] = ok
    return out


def criterion_2():
    discrepancies, systems = [], 0
    for seed in RANDOM_SEEDS:
        _, b = random_system(seed)
        S, P = b.system, b.product
        systems += 1
        rep = check_preservation(S, P)
        brute = _brute_preservation(S, P)
        for part, truth in brute.items():
            if part in rep and rep[part].holds != truth:
                discrepancies.append((seed, part))
    ok = systems >= 100 and not discrepancies
    return ok, f"{systems} random systems, {len(discrepancies)} discrepancies {discrepancies[:3]}"


# -- 3 ---------------------------------------------------------------------------

def criterion_3():
    rows, bad = 0, []
    cases = [("EP", fx(EP)), ("z2-trivial", fx(Z2_TRIVIAL_ON_A))]
    for seed in RANDOM_SEEDS:
        _, b = random_system(seed)
        if check_wfp(b.cat, b.d).holds:
            cases.append((f"seed {seed}", b))
    expected = {"EP": True, "z2-trivial": False}
    for label, b in cases:
        S, P = b.system, b.product
        pf, rc = is_pseudo_free(S).holds, O.right_cancellative(P.cat)
        rows += 1
        if pf != rc or pf != O.pseudo_free(S) or expected.get(label, pf) != pf:
            bad.append(label)
    return not bad, f"{rows} systems, {len(bad)} discrepancies {bad[:3]}"


# -- 4 ---------------------------------------------------------------------------

def criterion_4():
    checked, bad = 0, []
    bundles = [fx(s) for s in ENUMERABLE] + [fx(EP), fx(SEC6), fx(Z2_TRIVIAL_ON_A)]
    bundles += [random_system(s)[1] for s in RANDOM_SEEDS]
    for b in bundles:
        if b.system is None or not check_wfp(b.cat, b.d).holds:
            continue
        checked += 1
        if not check_wfp(b.product.cat, product_length(b.system, b.product)).holds:
            bad.append(b.name)
    return checked > 0 and not bad, f"{checked} systems with WFP, {len(bad)} discrepancies"


# -- 5 ---------------------------------------------------------------------------

def criterion_5():
    cat = text(E2).cat
    fam = lambda fs: sorted(sorted(F.names(cat)) for F in fs)
    fs = enumerate_filters(cat)
    brute = brute_force_filters(cat)
    oracle = O.filters(cat)
    e2_ok = (fam(fs.star) == [["e", "id_v"], ["id_u"], ["id_v"]]
             and fam(fs.maximal) == [["e", "id_v"], ["id_u"]]
             and fam(fs.tight) == [["e", "id_v"], ["id_u"]]
             and {F.members for F in brute.star} == {F.members for F in fs.star}
             and {frozenset(F.members) for F in fs.star} == set(oracle)
             and {frozenset(F.members) for F in fs.tight} == set(O.tight_filters(cat, oracle)))
    bundles = [text(E2_TRIVIAL)] + [fx(s) for s in ENUMERABLE] + [random_system(s)[1] for s in RANDOM_SEEDS]
    checked, bad = 0, []
    for b in bundles:
        if b.system is None or b.product.n > 60:
            continue
        checked += 1
        if not filter_transfer(b.system, b.product).holds:
            bad.append(b.name)
    return e2_ok and not bad, f"E2 filters {'match' if e2_ok else 'DIFFER'}; transfer on {checked} systems, {len(bad)} failures"


# -- 6 ---------------------------------------------------------------------------

def criterion_6():
    bad, germs = [], 0
    for spec in ENUMERABLE:
        b = fx(spec)
        S = system_of(b)
        gg = tight_germs(S)
        germs += gg.n
        rep = check_germ_groupoid(S, gg)
        if not rep.holds or any("sampled" in n for n in rep.notes):
            bad.append((b.name, sorted(rep.failures())))
    return not bad, f"{len(ENUMERABLE)} fixtures, {germs} germs, failures {bad}"


# -- 7 ---------------------------------------------------------------------------

def criterion_7():
    b = fx(NONHAUSDORFF)
    v = check_hausdorff(b.system, (4, 6, 8), _rebuild(b))
    fast = [hausdorff_fast_path(system_of(b.at_horizon(h))) for h in (4, 6, 8)]
    cert = v.data.get("certificate", {})
    lbs = cert.get("lower_bounds", [])
    ok = (v.status == "not-hausdorff" and all(f is None for f in fast)
          and not v.data.get("fast_path") and len(lbs) == 3 and lbs[0] < lbs[1] < lbs[2])
    return ok, f"{v.status}, lower bounds {lbs}, fast path fired: {any(f is not None for f in fast)}"


# -- 8 ---------------------------------------------------------------------------

def criterion_8():
    details, ok = [], True
    for label, spec in (("F2", F2), ("Z2-x", Z2X), ("sec6", SEC6)):
        b = fx(spec)
        L, d = b.cat, b.d
        B = transversal(L, d=d)
        total = True
        for m in range(L.n):
            brute = [(int(x), int(g)) for x in B.members for g in L.invertible_ids if L.comp[x, g] == m]
            try:
                got = factorize(L, B, m)
            except NoFactorization:
                got = None
            if len(brute) != 1 or got != brute[0]:
                total = False
        rep = verify_zs_decomposition(L, d, B)
        wfp = check_wfp(L, d).holds
        ufp = rep["UFP-on-B*"].holds if wfp else True
        part = total and rep["bijection"].holds and ufp
        ok &= part
        details.append(f"{label}: unique={total} bijection={rep['bijection'].holds} ufp={ufp}")
    return ok, "; ".join(details)


# -- 9 ---------------------------------------------------------------------------

def criterion_9():
    b = fx(SEC6)
    fs = enumerate_filters(b.cat)
    stars = [check_star_property(b.cat, b.d, g, fs) for g in range(4)]
    star_ok = all(st.verdict.holds and st.verdict.data.get("fast_path") for st in stars)
    res = sec6_kernel()
    parts = res.report.parts
    closure = [k for k in parts if k.startswith("closure[")]
    gs = sorted(res.pieces)
    pairs = {f"closure[{b.d.monoid.fmt(x)},{b.d.monoid.fmt(y)}]" for x in gs for y in gs}
    closure_ok = pairs <= set(closure) and all(parts[k].holds for k in closure)
    wd_ok = all(parts[k].holds for k in parts if k.startswith("well-defined["))
    sizes = {b.d.monoid.fmt(g): len(res.pieces[g].keys) for g in gs}
    ok = star_ok and closure_ok and wd_ok
    return ok, f"star g<=3 fast path={star_ok}; {len(closure)} closure pairs ok={closure_ok}; well-defined={wd_ok}; |K_g|={sizes}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9]


@pytest.mark.parametrize("n", range(1, 10))
def test_criterion(n, capsys):
    t0 = time.perf_counter()
    ok, detail = CRITERIA[n - 1]()
    _report(n, ok, f"{detail}  [{time.perf_counter() - t0:.1f}s]", capsys)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for i, fn in enumerate(CRITERIA, 1):
        t0 = time.perf_counter()
        ok, detail = fn()
        results.append(_report(i, ok, f"{detail}  [{time.perf_counter() - t0:.1f}s]"))
    sys.exit(0 if all(results) else 1)
