"""Hereditary directed sets: all of them, the maximal ones and the tight ones.

On a finite table every directed set has a largest element up to ≈, so each
filter is the set of initial segments of one morphism, its ``top``.  On a
truncated table the same description enumerates the filters of bounded
depth, and "maximal" means no proper extension inside the window.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .category import FiniteCategory
from .errors import TooLarge
from .verdict import Verdict, from_bool


@dataclass(frozen=True)
class Filter:
    """Members are morphism ids (whole ≈-classes); ``top`` is the canonical largest member."""

    top: int
    members: frozenset = field(compare=False)

    def __eq__(self, other):
        return isinstance(other, Filter) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __contains__(self, m):
        return m in self.members

    def __len__(self):
        return len(self.members)

    def names(self, cat: FiniteCategory):
        return sorted(cat.name(m) for m in self.members)


def principal(cat: FiniteCategory, a: int) -> Filter:
    """[a]: the initial segments of a."""
    top = int(cat.canon[a])
    return Filter(top, cat.segments(top))


@dataclass
class FilterSets:
    cat: FiniteCategory
    star: list
    maximal: list
    tight: list
    truncated: bool = False
    method: str = "principal"

    @property
    def tight_is_maximal(self) -> bool:
        return set(self.tight) == set(self.maximal)

    def by_top(self) -> dict:
        return {F.top: F for F in self.star}

    def verdict(self) -> Verdict:
        return from_bool(True, (), self.truncated, note=f"{len(self.star)} filters, {len(self.maximal)} maximal, "
                                                      f"{len(self.tight)} tight", tight_is_maximal=self.tight_is_maximal)


def _is_filter(cat: FiniteCategory, S: set) -> bool:
    if not S:
        return False
    idx = np.fromiter(S, dtype=np.int64)
    # hereditary: every initial segment of a member is a member
    segs = cat.ideal_mask[:, idx].any(axis=1)
    if not set(np.flatnonzero(segs).tolist()) <= S:
        return False
    # directed: each pair has a common extension inside S
    mask = cat.ideal_mask[np.ix_(idx, idx)]
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if not (mask[i] & mask[j]).any():
                return False
    return True


def _maximal(filters):
    out = []
    for F in filters:
        if not any(F.members < D.members for D in filters):
            out.append(F)
    return out


def _tight(cat, filters, maximal):
    """Raw definition; the complement of C is the hardest finite set to avoid."""
    out = []
    for C in filters:
        ok = True
        for a in C.members:
            if not any(a in D.members and D.members <= C.members for D in maximal):
                ok = False
                break
        if ok:
            out.append(C)
    return out


def brute_force_filters(cat: FiniteCategory, cap: int = 1 << 16) -> FilterSets:
    """Every nonempty subset of ≈-classes, tested against the definitions."""
    classes: dict[int, list] = {}
    for m in range(cat.n):
        classes.setdefault(int(cat.canon[m]), []).append(m)
    reps = sorted(classes)
    if 2 ** len(reps) > cap:
        raise TooLarge(f"{len(reps)} ≈-classes give {2 ** len(reps)} subsets (cap {cap})")
    found = []
    for k in range(1, len(reps) + 1):
        for combo in itertools.combinations(reps, k):
            S = set(itertools.chain.from_iterable(classes[c] for c in combo))
            if _is_filter(cat, S):
                members = frozenset(S)
                top = max(combo, key=lambda c: (int(cat.rank[c]), -c))
                found.append(Filter(int(cat.canon[top]), members))
    mx = _maximal(found)
    return FilterSets(cat, found, mx, _tight(cat, found, mx), cat.truncated, "brute-force")


def enumerate_filters(cat: FiniteCategory, cap: int = 1 << 16, method: str = "auto") -> FilterSets:
    """Λ*, Λ** and Λ_tight.

    ``method`` is ``"brute-force"`` (subsets, raises TooLarge past ``cap``),
    ``"principal"`` (one filter per ≈-class), or ``"auto"``: brute force on
    small untruncated tables, principal otherwise.
    """
    if method == "brute-force":
        return brute_force_filters(cat, cap)
    n_classes = len(np.unique(cat.canon))
    if method == "auto" and not cat.truncated and 2 ** n_classes <= min(cap, 1 << 12):
        return brute_force_filters(cat, cap)
    tops = np.unique(cat.canon)
    if len(tops) > cap:
        raise TooLarge(f"{len(tops)} filters exceed the cap {cap}")
    star = [Filter(int(t), cat.segments(int(t))) for t in tops]
    maxset = set(cat.maximal.tolist())
    mx = [F for F in star if F.top in maxset]
    # [m] ⊆ [t] with m maximal forces m ≈ t, so the tight condition singles out maximal tops
    return FilterSets(cat, star, mx, list(mx), cat.truncated, "principal")


def filter_transfer(sys_, P, fs: FilterSets | None = None, fp: FilterSets | None = None) -> Verdict:
    """F ↦ F⋈G = {(α,g): α ∈ F} is a bijection of filters respecting maximal and tight ones."""
    L = sys_.cat
    fs = fs or enumerate_filters(L)
    fp = fp or enumerate_filters(P.cat)
    alpha = P.alpha

    def image(F):
        return frozenset(np.flatnonzero(np.isin(alpha, list(F.members))).tolist())

    for label, a, b in (("star", fs.star, fp.star), ("maximal", fs.maximal, fp.maximal),
                        ("tight", fs.tight, fp.tight)):
        imgs = {image(F) for F in a}
        target = {F.members for F in b}
        if imgs != target or len(imgs) != len(a):
            extra = sorted(imgs ^ target, key=len)
            w = tuple(sorted(extra[0]))[:4] if extra else ()
            return from_bool(False, w, L.truncated, note=f"{label} filters do not correspond")
    return from_bool(True, (), L.truncated, counts=(len(fs.star), len(fs.maximal), len(fs.tight)))
