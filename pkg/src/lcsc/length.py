"""Length functions d: Λ → Γ and the factorization checks built on them."""
from __future__ import annotations

from functools import cached_property

import numpy as np

from .category import FiniteCategory
from .errors import NoJoin, ValidationError
from .monoid import OrderedMonoid
from .verdict import Report, Verdict, fails, from_bool, holds


class LengthAssignment:
    """A value in ``monoid`` for every morphism of ``cat``."""

    def __init__(self, cat: FiniteCategory, monoid: OrderedMonoid, values):
        values = list(values)
        if len(values) != cat.n:
            raise ValidationError(f"length needs {cat.n} values, got {len(values)}")
        self.cat = cat
        self.monoid = monoid
        self.values = tuple(monoid.coerce(v) for v in values)

    @classmethod
    def from_function(cls, cat, monoid, fn):
        return cls(cat, monoid, [fn(m) for m in range(cat.n)])

    def __call__(self, m: int):
        return self.values[m]

    def value(self, m: int):
        return self.values[m]

    def size(self, m: int) -> int:
        return int(self.sizes[m])

    @cached_property
    def sizes(self) -> np.ndarray:
        return np.array([self.monoid.size(v) for v in self.values], dtype=np.int64)

    @cached_property
    def classes(self) -> dict:
        """Morphisms grouped by length value."""
        out: dict = {}
        for m, v in enumerate(self.values):
            out.setdefault(v, []).append(m)
        return out

    @cached_property
    def codes(self) -> np.ndarray:
        """Integer code per morphism; equal codes iff equal lengths."""
        index = {v: i for i, v in enumerate(self.classes)}
        return np.array([index[v] for v in self.values], dtype=np.int64)

    def fmt(self, m: int) -> str:
        return self.monoid.fmt(self.values[m])

    def transport(self, cat: FiniteCategory, pullback) -> "LengthAssignment":
        """The length ``m ↦ d(pullback(m))`` on another category."""
        return LengthAssignment(cat, self.monoid, [self.values[pullback(m)] for m in range(cat.n)])


def factorizations(cat: FiniteCategory, a: int):
    """All pairs (x, y) with x∘y = a."""
    out = []
    for x in sorted(cat.segments(a)):
        for y in np.flatnonzero(cat.comp[x] == a).tolist():
            out.append((x, y))
    return out


def validate_length(cat: FiniteCategory, d: LengthAssignment) -> Report:
    """Homomorphism, unit, LF1 (d⁻¹(1) = Λ⁻¹) and LF2 (every splitting of d(α) lifts)."""
    rep = Report("length", truncated=cat.truncated)
    M = d.monoid
    hom = None
    a_idx, b_idx = np.nonzero(cat.comp >= 0)
    for a, b in zip(a_idx.tolist(), b_idx.tolist()):
        c = int(cat.comp[a, b])
        if d(c) != M.op(d(a), d(b)):
            hom = (a, b, c)
            break
    rep.add("homomorphism", from_bool(hom is None, hom or ()))
    bad_unit = [int(e) for e in cat.ids if d(int(e)) != M.unit]
    rep.add("units", from_bool(not bad_unit, bad_unit[:1]))

    lf1 = None
    for m in range(cat.n):
        if (d(m) == M.unit) != cat.is_invertible(m):
            lf1 = (m,)
            break
    note = "" if lf1 is None else (
        "a length constant at the unit only satisfies LF1 when every morphism is invertible")
    rep.add("LF1", from_bool(lf1 is None, lf1 or (), note=note))

    lf2 = None
    for a in range(cat.n):
        have = {(d(x), d(y)) for x, y in factorizations(cat, a)}
        for split in M.splittings(d(a)):
            if split not in have:
                lf2 = (a, M.fmt(split[0]), M.fmt(split[1]))
                break
        if lf2:
            break
    rep.add("LF2", from_bool(lf2 is None, lf2 or (), truncated=cat.truncated))
    return rep


def check_wfp(cat: FiniteCategory, d: LengthAssignment) -> Verdict:
    """Weak factorization property; ``data['ufp']`` records the unique factorization property."""
    M = d.monoid
    inv = cat.invertible_ids
    for a in range(cat.n):
        groups: dict = {}
        for x, y in factorizations(cat, a):
            groups.setdefault((d(x), d(y)), []).append((x, y))
        for split in M.splittings(d(a)):
            if split not in groups:
                return fails((a,), f"no factorization of {cat.name(a)} along {M.fmt(split[0])}|{M.fmt(split[1])}",
                             ufp=False)
        for pairs in groups.values():
            x1, y1 = pairs[0]
            for x2, y2 in pairs[1:]:
                left = np.any(cat.comp[x1, inv] == x2)
                right = np.any(cat.comp[inv, y1] == y2)
                if not (left and right):
                    return fails((a, x1, y1, x2, y2),
                                 f"{cat.name(a)} = {cat.name(x1)}∘{cat.name(y1)} = "
                                 f"{cat.name(x2)}∘{cat.name(y2)} are not related by invertibles",
                                 ufp=False)
    no_inv = all(cat.is_identity(int(g)) for g in inv)
    return holds(cat.truncated, ufp=no_inv)


def is_action_free(cat: FiniteCategory) -> Verdict:
    """Only identities fix a morphism under left multiplication by invertibles."""
    inv = [int(g) for g in cat.invertible_ids if not cat.is_identity(int(g))]
    if inv:
        fixed = cat.comp[inv] == np.arange(cat.n)[None, :]
        if fixed.any():
            i, x = map(int, np.argwhere(fixed)[0])
            return fails((inv[i], x), f"{cat.name(inv[i])}∘{cat.name(x)} = {cat.name(x)}")
    return holds(cat.truncated)


def monoid_join(m: OrderedMonoid, g1, g2):
    return m.join(g1, g2)


def is_join_semilattice(m: OrderedMonoid, sample=None) -> bool:
    return m.is_join_semilattice(sample)


def wfp_order_agrees(cat: FiniteCategory, d: LengthAssignment) -> Verdict:
    """For meeting pairs: a ≤ b exactly when d(a) ≤ d(b)."""
    M = d.monoid
    for a in range(cat.n):
        for b in np.flatnonzero((cat.ideal_mask[a] & cat.ideal_mask).any(axis=1)).tolist():
            if cat.leq(a, b) != M.leq(d(a), d(b)):
                return fails((a, b))
    return holds(cat.truncated)


__all__ = [
    "LengthAssignment", "validate_length", "check_wfp", "is_action_free", "monoid_join",
    "is_join_semilattice", "factorizations", "wfp_order_agrees", "NoJoin",
]
