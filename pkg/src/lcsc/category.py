"""Finite and length-truncated small categories stored as composition tables.

Morphisms are integers ``0..n-1``; the integer order is the canonical order
used whenever one representative of a class has to be picked.  A category with
a ``horizon`` is a truncation of an infinite one: pairs whose product lies
outside the table are marked and composing them raises ``BeyondHorizon``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .errors import BeyondHorizon, DomainError, NotComposable, ValidationError
from .verdict import Report, Verdict, fails, from_bool, holds

UNDEF = -1   # source/range mismatch
BEYOND = -2  # composable, but the product is outside the truncation


class FiniteCategory:
    """Objects, morphisms and a partial composition table.

    ``products`` maps pairs ``(a, b)`` with ``src(a) == rng(b)`` to the id of
    ``a∘b``.  Identity laws are filled in automatically.  Without a horizon
    every composable pair must have a product.
    """

    def __init__(
        self,
        objects: Iterable[str],
        names: Iterable[str],
        src: Iterable[int],
        rng: Iterable[int],
        identities: Iterable[int],
        products: Mapping[tuple[int, int], int],
        horizon: int | None = None,
        label: str = "",
        words: Iterable[tuple] | None = None,
    ):
        self.objects = tuple(objects)
        self.names = tuple(names)
        self.label = label
        self.horizon = horizon
        n = len(self.names)
        self.s = np.asarray(list(src), dtype=np.int64)
        self.r = np.asarray(list(rng), dtype=np.int64)
        self.ids = np.asarray(list(identities), dtype=np.int64)
        self.words = tuple(words) if words is not None else None
        if len(self.s) != n or len(self.r) != n or len(self.ids) != len(self.objects):
            raise ValidationError("inconsistent category dimensions")
        if len(set(self.names)) != n:
            raise ValidationError("duplicate morphism names")
        for o, e in enumerate(self.ids):
            if self.s[e] != o or self.r[e] != o:
                raise ValidationError(f"identity {self.names[e]} is not a loop at {self.objects[o]}")

        comp = np.full((n, n), UNDEF, dtype=np.int32)
        comp[self.s[:, None] == self.r[None, :]] = BEYOND
        for (a, b), c in products.items():
            if self.s[a] != self.r[b]:
                raise ValidationError(
                    f"product {self.names[a]}∘{self.names[b]} listed for a non-composable pair",
                    (a, b))
            if self.s[c] != self.s[b] or self.r[c] != self.r[a]:
                raise ValidationError(
                    f"product {self.names[a]}∘{self.names[b]} = {self.names[c]} has the wrong ends",
                    (a, b, c))
            comp[a, b] = c
        m = np.arange(n)
        comp[self.ids[self.r], m] = m
        comp[m, self.ids[self.s]] = m
        if horizon is None and (comp == BEYOND).any():
            a, b = map(int, np.argwhere(comp == BEYOND)[0])
            raise ValidationError(
                f"missing product {self.names[a]}∘{self.names[b]} in a category without horizon",
                (a, b))
        comp.setflags(write=False)
        self.comp = comp
        self._index = {name: i for i, name in enumerate(self.names)}

    @classmethod
    def from_table(cls, objects, names, src, rng, identities, comp, horizon=None, label="", words=None):
        """Build from a dense table (UNDEF / BEYOND codes) without a products dict."""
        self = cls.__new__(cls)
        self.objects = tuple(objects)
        self.names = tuple(names)
        self.label = label
        self.horizon = horizon
        self.s = np.asarray(src, dtype=np.int64)
        self.r = np.asarray(rng, dtype=np.int64)
        self.ids = np.asarray(identities, dtype=np.int64)
        self.words = tuple(words) if words is not None else None
        comp = np.array(comp, dtype=np.int32)
        n = len(self.names)
        if comp.shape != (n, n):
            raise ValidationError("composition table has the wrong shape")
        composable = self.s[:, None] == self.r[None, :]
        if ((comp != UNDEF) & ~composable).any() or ((comp == UNDEF) & composable).any():
            raise ValidationError("composition table disagrees with sources and ranges")
        a_idx, b_idx = np.nonzero(comp >= 0)
        c = comp[a_idx, b_idx]
        if (self.s[c] != self.s[b_idx]).any() or (self.r[c] != self.r[a_idx]).any():
            i = int(np.argmax((self.s[c] != self.s[b_idx]) | (self.r[c] != self.r[a_idx])))
            raise ValidationError("product with the wrong ends", (int(a_idx[i]), int(b_idx[i])))
        m = np.arange(n)
        comp[self.ids[self.r], m] = m
        comp[m, self.ids[self.s]] = m
        if horizon is None and (comp == BEYOND).any():
            raise ValidationError("missing products in a category without horizon")
        comp.setflags(write=False)
        self.comp = comp
        self._index = {name: i for i, name in enumerate(self.names)}
        return self

    # -- basic access -------------------------------------------------
    def __len__(self):
        return len(self.names)

    def __repr__(self):
        h = f", horizon={self.horizon}" if self.horizon is not None else ""
        return f"FiniteCategory({self.label!r}, {len(self.objects)} objects, {len(self)} morphisms{h})"

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def truncated(self) -> bool:
        return self.horizon is not None

    def __getitem__(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no morphism named {name!r} in {self.label or 'category'}") from None

    def name(self, m: int) -> str:
        return self.names[m]

    def obj(self, name: str) -> int:
        return self.objects.index(name)

    def src(self, m: int) -> int:
        return int(self.s[m])

    def rng(self, m: int) -> int:
        return int(self.r[m])

    def identity(self, o: int) -> int:
        return int(self.ids[o])

    def is_identity(self, m: int) -> bool:
        return int(self.ids[self.s[m]]) == m

    def compose(self, a: int, b: int) -> int:
        c = int(self.comp[a, b])
        if c == UNDEF:
            raise NotComposable(f"src({self.names[a]}) != rng({self.names[b]})")
        if c == BEYOND:
            raise BeyondHorizon(f"{self.names[a]}∘{self.names[b]} exceeds horizon {self.horizon}")
        return c

    def product(self, a: int, b: int) -> int | None:
        """Like compose, but ``None`` when undefined for either reason."""
        c = int(self.comp[a, b])
        return c if c >= 0 else None

    # -- cached structure ------------------------------------------------
    @cached_property
    def with_range(self) -> tuple[np.ndarray, ...]:
        return tuple(np.flatnonzero(self.r == o) for o in range(len(self.objects)))

    @cached_property
    def with_source(self) -> tuple[np.ndarray, ...]:
        return tuple(np.flatnonzero(self.s == o) for o in range(len(self.objects)))

    @cached_property
    def div(self) -> np.ndarray:
        """div[a, b] = c with a∘c = b, or -1 (the smallest such c if several)."""
        n = self.n
        out = np.full((n, n), -1, dtype=np.int32)
        a_idx, c_idx = np.nonzero(self.comp >= 0)
        b_idx = self.comp[a_idx, c_idx]
        # assign in reverse so the smallest c wins
        out[a_idx[::-1], b_idx[::-1]] = c_idx[::-1]
        out.setflags(write=False)
        return out

    def divide(self, a: int, b: int) -> int | None:
        """The c with a∘c = b, if any (unique when left cancellative)."""
        c = int(self.div[a, b])
        return c if c >= 0 else None

    def leq(self, a: int, b: int) -> bool:
        """Extension order: a ≤ b iff b = a∘c."""
        return bool(self.ideal_mask[a, b])

    @cached_property
    def ideal_mask(self) -> np.ndarray:
        """Row a is the indicator of the right ideal aΛ (within the table)."""
        n = self.n
        mask = np.zeros((n, n), dtype=bool)
        a_idx, b_idx = np.nonzero(self.comp >= 0)
        mask[a_idx, self.comp[a_idx, b_idx]] = True
        mask.setflags(write=False)
        return mask

    def ideal(self, a: int) -> frozenset:
        return frozenset(np.flatnonzero(self.ideal_mask[a]).tolist())

    def meets(self, a: int, b: int) -> bool:
        """a ⋒ b: the right ideals of a and b intersect."""
        return bool(np.any(self.ideal_mask[a] & self.ideal_mask[b]))

    @cached_property
    def _segments(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(np.flatnonzero(self.ideal_mask[:, b]).tolist()) for b in range(self.n))

    def segments(self, b: int) -> frozenset:
        return self._segments[b]

    @cached_property
    def inverse(self) -> np.ndarray:
        """inverse[g] = h with g∘h = rng-identity, or -1."""
        target = self.ids[self.r][:, None]
        hit = self.comp == target
        out = np.where(hit.any(axis=1), hit.argmax(axis=1), -1)
        out.setflags(write=False)
        return out

    @cached_property
    def invertible_ids(self) -> np.ndarray:
        return np.flatnonzero(self.inverse >= 0)

    def is_invertible(self, m: int) -> bool:
        return bool(self.inverse[m] >= 0)

    @cached_property
    def canon(self) -> np.ndarray:
        """Lowest id in the ≈-class of each morphism."""
        eq = self.ideal_mask & self.ideal_mask.T
        out = eq.argmax(axis=1)
        out.setflags(write=False)
        return out

    def equivalent(self, a: int, b: int) -> bool:
        return self.leq(a, b) and self.leq(b, a)

    @cached_property
    def rank(self) -> np.ndarray:
        """Number of initial segments; strictly increases along a < b."""
        return self.ideal_mask.sum(axis=0)

    @cached_property
    def maximal(self) -> np.ndarray:
        """Morphisms with no proper extension inside the table."""
        canon = self.canon
        above = self.ideal_mask & (canon[None, :] != canon[:, None])
        return np.flatnonzero(~above.any(axis=1))


# -- operations --------------------------------------------------------------

def compose(cat: FiniteCategory, a: int, b: int) -> int:
    return cat.compose(a, b)


@dataclass(frozen=True)
class InvertibleSet:
    members: frozenset
    inverse: dict

    def __contains__(self, m):
        return m in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)


def invertibles(cat: FiniteCategory) -> InvertibleSet:
    """Λ⁻¹ with its inverse map; the right inverse is two-sided when left cancellative."""
    inv = {int(g): int(cat.inverse[g]) for g in cat.invertible_ids}
    return InvertibleSet(frozenset(inv), inv)


def initial_segments(cat: FiniteCategory, b: int) -> frozenset:
    return cat.segments(b)


def equivalent(cat: FiniteCategory, a: int, b: int) -> bool:
    return cat.equivalent(a, b)


def minimal_common_extensions(cat: FiniteCategory, a: int, b: int, length=None) -> frozenset:
    """One representative (lowest id) per ≈-class of minimal elements of aΛ ∩ bΛ."""
    common = np.flatnonzero(cat.ideal_mask[a] & cat.ideal_mask[b]).tolist()
    if length is not None:
        key = lambda c: (length.size(c), int(cat.rank[c]), c)
    else:
        key = lambda c: (int(cat.rank[c]), c)
    kept: list[int] = []
    for c in sorted(common, key=key):
        if not any(cat.leq(k, c) for k in kept):
            kept.append(c)
    return frozenset(kept)


def is_finitely_aligned(cat: FiniteCategory) -> Verdict:
    """Finite tables are always finitely aligned; the check also reports single alignment
    and that every common extension lies above a returned minimal one."""
    widest = 0
    witness = ()
    for a in range(cat.n):
        for b in range(a + 1, cat.n):
            if cat.r[a] != cat.r[b]:
                continue
            reps = minimal_common_extensions(cat, a, b)
            if len(reps) > widest:
                widest, witness = len(reps), (a, b)
            common = np.flatnonzero(cat.ideal_mask[a] & cat.ideal_mask[b])
            for c in common.tolist():
                if not any(cat.leq(k, c) for k in reps):
                    return fails((a, b, c), "common extension above no minimal one")
    return holds(cat.truncated, singly_aligned=widest <= 1, max_classes=widest,
                 widest_pair=witness)


def is_exhaustive(cat: FiniteCategory, F: Iterable[int], a: int) -> bool:
    """Every γ ∈ aΛ meets some member of F."""
    F = list(F)
    for f in F:
        if cat.r[f] != cat.r[a]:
            raise DomainError(f"{cat.names[f]} does not have range rng({cat.names[a]})")
    if not F:
        return False
    reach = cat.ideal_mask[F].any(axis=0)
    ext = cat.ideal_mask[a]
    return bool((cat.ideal_mask[ext] & reach).any(axis=1).all())


def _duplicates(values: np.ndarray, labels: np.ndarray):
    order = np.argsort(values, kind="stable")
    v = values[order]
    same = np.flatnonzero(v[1:] == v[:-1])
    if len(same):
        i = same[0]
        return int(labels[order[i]]), int(labels[order[i + 1]])
    return None


def check_cancellation(cat: FiniteCategory) -> Report:
    """Left and right cancellation and absence of non-identity invertibles, by scan."""
    rep = Report("cancellation", truncated=cat.truncated)
    left = right = None
    for a in range(cat.n):
        row = cat.comp[a]
        ok = np.flatnonzero(row >= 0)
        dup = _duplicates(row[ok], ok)
        if dup:
            left = (a,) + dup
            break
    for a in range(cat.n):
        col = cat.comp[:, a]
        ok = np.flatnonzero(col >= 0)
        dup = _duplicates(col[ok], ok)
        if dup:
            right = dup + (a,)
            break
    rep.add("left", from_bool(left is None, left or (), cat.truncated))
    rep.add("right", from_bool(right is None, right or (), cat.truncated))
    nontrivial = [int(g) for g in cat.invertible_ids if not cat.is_identity(int(g))]
    rep.add("no-inverses", from_bool(not nontrivial, nontrivial[:1], cat.truncated))
    rep.status = rep["left"].status
    return rep


def validate_category(cat: FiniteCategory, associativity: bool = True) -> Report:
    """Identity laws, end consistency and (optionally) associativity on every defined triple."""
    rep = Report("category", truncated=cat.truncated)
    comp = cat.comp
    bad = None
    idem = [m for m in range(cat.n) if comp[m, m] == m and not cat.is_identity(m)]
    if associativity:
        for a in range(cat.n):
            row = comp[a]
            bs = np.flatnonzero(row >= 0)
            if not len(bs):
                continue
            ab = row[bs]
            left = comp[ab]             # (a∘b)∘x
            bx = comp[bs]               # b∘x
            right = np.where(bx >= 0, row[np.maximum(bx, 0)], UNDEF)
            defined = (left >= 0) & (right >= 0)
            clash = defined & (left != right)
            if clash.any():
                i, x = map(int, np.argwhere(clash)[0])
                bad = (a, int(bs[i]), x)
                break
    rep.add("associativity", from_bool(bad is None, bad or ()))
    rep.add("idempotents-are-identities", from_bool(not idem, idem[:1]))
    return rep


def subcategory(cat: FiniteCategory, members: Iterable[int], label: str = "") -> tuple[FiniteCategory, dict]:
    """Restrict to a set of morphisms closed under the table's products; identities are added."""
    keep = set(int(m) for m in members) | set(int(e) for e in cat.ids)
    objs = sorted({int(cat.s[m]) for m in keep} | {int(cat.r[m]) for m in keep})
    old = np.array(sorted(keep), dtype=np.int64)
    new_id = np.full(cat.n, -1, dtype=np.int64)
    new_id[old] = np.arange(len(old))
    obj_id = np.full(len(cat.objects), -1, dtype=np.int64)
    obj_id[objs] = np.arange(len(objs))
    block = cat.comp[np.ix_(old, old)].astype(np.int64)
    defined = block >= 0
    mapped = np.where(defined, new_id[np.maximum(block, 0)], block)
    leaving = defined & (mapped < 0)
    if leaving.any():
        i, j = map(int, np.argwhere(leaving)[0])
        a, b = int(old[i]), int(old[j])
        raise ValidationError(f"{cat.names[a]}∘{cat.names[b]} leaves the subcategory", (a, b))
    sub = FiniteCategory.from_table(
        [cat.objects[o] for o in objs],
        [cat.names[m] for m in old],
        obj_id[cat.s[old]],
        obj_id[cat.r[old]],
        new_id[cat.ids[objs]],
        mapped,
        horizon=cat.horizon,
        label=label or cat.label,
        words=[cat.words[m] for m in old] if cat.words is not None else None,
    )
    return sub, {int(m): i for i, m in enumerate(old)}
