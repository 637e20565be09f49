"""Atoms, transversals of atom ideals, the R-condition and the B*⋈Λ⁻¹ decomposition."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .action import CategorySystem, GroupoidAction, validate_category_cocycle
from .category import FiniteCategory, subcategory
from .errors import NoFactorization, ValidationError
from .length import LengthAssignment, check_wfp
from .verdict import Report, Verdict, fails, from_bool, holds


def find_atoms(cat: FiniteCategory, d: LengthAssignment | None = None) -> frozenset:
    """Non-invertible morphisms whose only factorizations have an invertible factor.

    With a length function the answer is compared with the preimage of the
    monoid's atoms and a disagreement raises ``ValidationError``.
    """
    noninv = np.flatnonzero(cat.inverse < 0)
    block = cat.comp[np.ix_(noninv, noninv)]
    split = np.unique(block[block >= 0])
    atoms = frozenset(set(noninv.tolist()) - set(split.tolist()))
    if d is not None:
        by_length = frozenset(m for m in range(cat.n) if d.monoid.is_atom(d(m)))
        if by_length != atoms:
            m = min(by_length ^ atoms)
            raise ValidationError(
                f"{cat.name(m)}: atom by factorization is {m in atoms}, by length is {m in by_length}", (m,))
    return atoms


def maximal_ideal_generators(cat: FiniteCategory) -> frozenset:
    """Non-invertible a with aΛ maximal among right ideals of non-invertible morphisms."""
    noninv = np.flatnonzero(cat.inverse < 0)
    sub = cat.ideal_mask[np.ix_(noninv, noninv)]   # sub[i, j]: noninv[j] ∈ noninv[i]Λ
    strictly_above = sub.T & ~sub                  # [j, i]: noninv[j]Λ ⊊ noninv[i]Λ
    return frozenset(noninv[~strictly_above.any(axis=1)].tolist())


def atom_decompositions(cat: FiniteCategory, atoms, a: int, limit: int = 64) -> list[tuple]:
    """Sequences of atoms composing to ``a`` (at most ``limit`` of them)."""
    atoms = sorted(atoms)
    memo: dict[int, list] = {}

    def go(m):
        if m in memo:
            return memo[m]
        if cat.is_identity(m):
            return [()]
        out = []
        for x in atoms:
            if cat.r[x] != cat.r[m] or not cat.ideal_mask[x, m]:
                continue
            rest = int(cat.div[x, m])
            if rest == m:
                continue
            for tail in go(rest):
                out.append((x,) + tail)
                if len(out) >= limit:
                    break
            if len(out) >= limit:
                break
        memo[m] = out
        return out

    return go(a)


@dataclass
class Transversal:
    """One atom per ≈-class of atom ideals, and the subcategory B* they generate."""

    cat: FiniteCategory
    atoms_by_ideal: dict                  # canonical member of the class → chosen atom
    members: np.ndarray = field(repr=False)   # ids of B* in ``cat``, sorted

    @property
    def atoms(self) -> frozenset:
        return frozenset(self.atoms_by_ideal.values())

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.cat.n, dtype=bool)
        m[self.members] = True
        return m

    def __contains__(self, m: int) -> bool:
        return bool(self.mask[m])

    @cached_property
    def generated(self) -> tuple[FiniteCategory, dict]:
        """B* as a category, with the id map from ``cat``."""
        return subcategory(self.cat, self.members.tolist(), label="B*")

    def names(self):
        return sorted(self.cat.name(a) for a in self.atoms)


def transversal(cat: FiniteCategory, atoms=None, d: LengthAssignment | None = None) -> Transversal:
    """Smallest-id atom per ≈-class of atom ideals; B* is closed up inside the table."""
    if atoms is None:
        atoms = find_atoms(cat, d)
    canon = cat.canon
    chosen: dict[int, int] = {}
    for a in sorted(atoms):
        chosen.setdefault(int(canon[a]), a)
    B = np.array(sorted(chosen.values()), dtype=np.int64)
    inside = np.zeros(cat.n, dtype=bool)
    inside[cat.ids] = True
    frontier = cat.ids.copy()
    while len(frontier) and len(B):
        prod = cat.comp[np.ix_(frontier, B)]
        new = np.unique(prod[prod >= 0])
        new = new[~inside[new]]
        inside[new] = True
        frontier = new
    return Transversal(cat, chosen, np.flatnonzero(inside))


def check_R_condition(cat: FiniteCategory, B: Transversal) -> Verdict:
    """α = βg with α, β ∈ B* and g invertible forces g to be an identity."""
    inv = np.array([g for g in cat.invertible_ids.tolist() if not cat.is_identity(g)], dtype=np.int64)
    if not len(inv):
        return holds(cat.truncated)
    prod = cat.comp[np.ix_(B.members, inv)]
    hit = (prod >= 0) & B.mask[np.maximum(prod, 0)]
    if hit.any():
        i, j = map(int, np.argwhere(hit)[0])
        beta, g = int(B.members[i]), int(inv[j])
        alpha = int(prod[i, j])
        return fails((alpha, beta, g), f"{cat.name(alpha)} = {cat.name(beta)}∘{cat.name(g)} inside B*")
    return holds(cat.truncated)


def _candidates(cat: FiniteCategory, mask: np.ndarray, a: int):
    inv = cat.invertible_ids
    inv = inv[cat.r[inv] == cat.s[a]]
    b = cat.comp[a, cat.inverse[inv]]
    ok = (b >= 0) & mask[np.maximum(b, 0)]
    return [(int(x), int(g)) for x, g in zip(b[ok], inv[ok]) if cat.comp[x, g] == a]


def factorize(cat: FiniteCategory, B: Transversal, a: int, debug: bool = False) -> tuple[int, int]:
    """The unique (b, g) with a = b∘g, b ∈ B*, g invertible.

    ``debug`` replays the answer against every pair of B* × Λ⁻¹.
    """
    found = _candidates(cat, B.mask, a)
    if not found:
        raise NoFactorization(f"{cat.name(a)} is not b∘g with b ∈ B*, g invertible", (a,))
    if len(found) > 1:
        raise NoFactorization(f"{cat.name(a)} has {len(found)} factorizations through B*", (a,) + found[1])
    if debug:
        brute = [(int(b), int(g)) for b in B.members for g in cat.invertible_ids
                 if cat.comp[b, g] == a]
        if brute != found:
            raise NoFactorization(f"exhaustive search disagrees at {cat.name(a)}: {brute}", (a,))
    return found[0]


def _factor_tables(cat: FiniteCategory, mask: np.ndarray):
    """Vectorized factorize for every morphism; -1 where it fails, -2 where it is not unique."""
    inv = cat.invertible_ids
    b_all = cat.comp[:, cat.inverse[inv]]                     # a∘g⁻¹
    ok = (b_all >= 0) & mask[np.maximum(b_all, 0)]
    ok &= cat.comp[np.maximum(b_all, 0), inv[None, :]] == np.arange(cat.n)[:, None]
    count = ok.sum(axis=1)
    j = ok.argmax(axis=1)
    bpart = np.where(count == 1, b_all[np.arange(cat.n), j], np.where(count == 0, -1, -2))
    gpart = np.where(count == 1, inv[j], np.where(count == 0, -1, -2))
    return bpart.astype(np.int64), gpart.astype(np.int64)


@dataclass
class Decomposition:
    """Λ as B*⋈Λ⁻¹: the induced system and the comparison map."""

    report: Report
    system: CategorySystem | None = None
    product: object = None
    to_category: np.ndarray | None = None


def _decompose(cat: FiniteCategory, d: LengthAssignment | None, mask: np.ndarray, rep: Report,
               prefix: str = "") -> Decomposition:
    from .zappa_szep import build_product

    members = np.flatnonzero(mask)
    bpart, gpart = _factor_tables(cat, mask)
    missing = np.flatnonzero(bpart < 0)
    rep.add(prefix + "factorize", from_bool(not len(missing), (int(missing[0]),) if len(missing) else (),
                                           cat.truncated))
    if len(missing):
        return Decomposition(rep)
    Bs, b_of = subcategory(cat, members.tolist(), label="B*")
    H, h_of = subcategory(cat, cat.invertible_ids.tolist(), label="Λ⁻¹")
    b_old = np.array(sorted(b_of), dtype=np.int64)
    h_old = np.array(sorted(h_of), dtype=np.int64)
    b_new = np.full(cat.n, -1, dtype=np.int64)
    b_new[b_old] = np.arange(len(b_old))
    h_new = np.full(cat.n, -1, dtype=np.int64)
    h_new[h_old] = np.arange(len(h_old))

    # g·b is the B*-part of g∘b and the cocycle its invertible part
    prod = cat.comp[np.ix_(h_old, b_old)].astype(np.int64)
    ok = prod >= 0
    act = np.full(prod.shape, -1, dtype=np.int64)
    coc = np.full(prod.shape, -1, dtype=np.int64)
    act[ok] = b_new[bpart[prod[ok]]]
    coc[ok] = h_new[gpart[prod[ok]]]
    uo = [Bs.objects.index(o) for o in H.objects]
    dB = None
    if d is not None:
        dB = LengthAssignment(Bs, d.monoid, [d(int(m)) for m in b_old])
    system = CategorySystem(Bs, dB, GroupoidAction(Bs, H, uo, act, coc), label="B*")
    val = validate_category_cocycle(system)
    system.__dict__["validation"] = val
    rep.add(prefix + "induced-system", val.as_verdict())
    if val.fails:
        return Decomposition(rep, system)
    P = build_product(system)
    pa, pg = P.alpha, P.g
    phi = cat.comp[b_old[pa], h_old[pg]].astype(np.int64)
    bij = (phi >= 0).all() and len(np.unique(phi)) == cat.n == P.n
    if bij:
        mapped = P.cat.comp.astype(np.int64)
        want = cat.comp[np.ix_(phi, phi)].astype(np.int64)
        img = np.where(mapped >= 0, phi[np.maximum(mapped, 0)], mapped)
        clash = np.argwhere(img != want)
        hom = not len(clash)
        w = tuple(int(phi[x]) for x in clash[0]) if len(clash) else ()
    else:
        hom, w = False, ()
        if (phi < 0).any():
            w = (int(np.flatnonzero(phi < 0)[0]),)
    rep.add(prefix + "bijection", from_bool(bool(bij), w, cat.truncated, sizes=(P.n, cat.n)))
    rep.add(prefix + "isomorphism", from_bool(bool(bij and hom), w, cat.truncated))
    return Decomposition(rep, system, P, phi)


def verify_zs_decomposition(cat: FiniteCategory, d: LengthAssignment | None, B: Transversal,
                            system: CategorySystem | None = None, product=None) -> Report:
    """Rebuild Λ as B*⋈Λ⁻¹ from factorization data and compare.

    With a category system the product Λ⋈G is decomposed the same way with
    B* embedded as the pairs (b, s(b)) and Λ⁻¹⋈G as the acting groupoid.
    """
    rep = Report("decomposition", truncated=cat.truncated)
    rep.add("R-condition", check_R_condition(cat, B))
    dec = _decompose(cat, d, B.mask, rep)
    rep.data["B_star_size"] = int(len(B.members))
    rep.data["atoms"] = sorted(B.atoms)
    if d is not None and dec.system is not None:
        wfp = check_wfp(cat, d)
        if wfp.holds:
            u = check_wfp(dec.system.cat, dec.system.d)
            rep.add("UFP-on-B*", from_bool(u.holds and u.data.get("ufp", False), u.witness, cat.truncated))
    if system is not None:
        from .zappa_szep import build_product
        P = product if product is not None else build_product(system)
        G = system.G
        sid = G.ids[[system.action.object_unit[int(o)] for o in cat.s[B.members]]]
        mask = np.zeros(P.n, dtype=bool)
        mask[P.index[B.members, sid]] = True
        dP = None
        if d is not None:
            from .zappa_szep import product_length
            dP = product_length(system, P)
        _decompose(P.cat, dP, mask, rep, prefix="product-")
    return rep
