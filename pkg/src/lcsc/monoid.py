"""Ordered monoids Γ inside a group Q.

Each monoid exposes the same small interface: ``unit``, ``op``, ``leq``
(``a⁻¹b ∈ Γ``), ``join`` (raises ``NoJoin``), ``size`` (a non-negative integer
used for horizon bounds), ``q_div`` (``a·b⁻¹`` in Q), ``q_mul``/``q_inv``,
``splittings`` and ``is_atom``.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from math import gcd

from .errors import BadParams, NoJoin


class OrderedMonoid:
    kind = "abstract"
    # True when every ascending chain bounded above is eventually constant
    bounded_chains_stabilize = True

    def coerce(self, x):
        return x

    def is_unit(self, x) -> bool:
        return self.coerce(x) == self.unit

    def join(self, a, b):
        raise NoJoin(f"{self.spec()} has no join routine")

    def is_join_semilattice(self, sample=None) -> bool:
        elems = list(sample) if sample is not None else list(self.elements_up_to(4))
        try:
            for a, b in itertools.combinations(elems, 2):
                self.join(a, b)
        except NoJoin:
            return False
        return True

    def is_conical(self, sample=None) -> bool:
        elems = list(sample) if sample is not None else list(self.elements_up_to(4))
        return not any(self.op(a, b) == self.unit and a != self.unit for a in elems for b in elems)

    def atoms_up_to(self, n: int):
        return [x for x in self.elements_up_to(n) if self.is_atom(x)]

    def is_atom(self, x) -> bool:
        x = self.coerce(x)
        if x == self.unit:
            return False
        return all(a == self.unit or b == self.unit for a, b in self.splittings(x))

    def fmt(self, x) -> str:
        return str(x)

    def __eq__(self, other):
        return type(self) is type(other) and self.spec() == other.spec()

    def __hash__(self):
        return hash(self.spec())

    def __repr__(self):
        return f"<monoid {self.spec()}>"


class NaturalPowers(OrderedMonoid):
    """ℕ^k with componentwise order; elements are k-tuples.  k = 0 is the trivial monoid."""

    kind = "nat"

    def __init__(self, k: int):
        if k < 0:
            raise BadParams("rank must be non-negative")
        self.k = k
        self.unit = (0,) * k

    def spec(self):
        return f"nat {self.k}" if self.k else "trivial"

    def coerce(self, x):
        if isinstance(x, int) and self.k == 1:
            x = (x,)
        elif isinstance(x, int) and self.k == 0 and x == 0:
            x = ()
        x = tuple(int(v) for v in x)
        if len(x) != self.k or any(v < 0 for v in x):
            raise BadParams(f"{x!r} is not an element of ℕ^{self.k}")
        return x

    def op(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def leq(self, a, b):
        return all(x <= y for x, y in zip(a, b))

    def join(self, a, b):
        return tuple(max(x, y) for x, y in zip(self.coerce(a), self.coerce(b)))

    def size(self, a):
        return sum(a)

    def q_div(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def q_mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def q_inv(self, a):
        return tuple(-x for x in a)

    def splittings(self, a):
        for left in itertools.product(*(range(v + 1) for v in a)):
            yield left, tuple(v - x for v, x in zip(a, left))

    def elements_up_to(self, n):
        for total in range(n + 1):
            for c in itertools.product(range(total + 1), repeat=self.k):
                if sum(c) == total:
                    yield c

    def fmt(self, x):
        return " ".join(map(str, x)) if self.k else "1"


class NumericalMonoid(OrderedMonoid):
    """Submonoid of (ℕ, +) generated by a finite set, e.g. ⟨2,5⟩."""

    kind = "numerical"

    def __init__(self, gens):
        gens = tuple(sorted(set(int(g) for g in gens)))
        if not gens or gens[0] <= 0:
            raise BadParams("numerical monoid needs positive generators")
        self.gens = gens
        self.unit = 0
        self._g = 0
        for x in gens:
            self._g = gcd(self._g, x)

    def spec(self):
        return "numerical " + " ".join(map(str, self.gens))

    @lru_cache(maxsize=None)
    def __contains__(self, x):
        if x < 0 or x % self._g:
            return False
        if x == 0:
            return True
        return any(x - g in self for g in self.gens if x >= g)

    def coerce(self, x):
        if isinstance(x, (tuple, list)):
            if len(x) != 1:
                raise BadParams(f"{x!r} is not a natural number")
            x = x[0]
        x = int(x)
        if x not in self:
            raise BadParams(f"{x} is not in {self.spec()}")
        return x

    def op(self, a, b):
        return a + b

    def leq(self, a, b):
        return (b - a) in self

    @property
    def conductor(self):
        """Bound past which every multiple of the gcd lies in the monoid."""
        g = self._g
        run, x = 0, 0
        while run < self.gens[0] // g:
            run = run + 1 if x in self else 0
            x += g
        return x

    def join(self, a, b):
        a, b = self.coerce(a), self.coerce(b)
        if self.leq(a, b):
            return b
        if self.leq(b, a):
            return a
        # every upper bound past this window is above one inside it
        top = max(a, b) + 2 * self.conductor + self.gens[-1]
        ups = [c for c in range(max(a, b), top + 1) if self.leq(a, c) and self.leq(b, c)]
        least = [c for c in ups if all(self.leq(c, u) for u in ups)]
        if not least:
            raise NoJoin(f"{a} and {b} have no least upper bound in {self.spec()}")
        return least[0]

    def size(self, a):
        return a

    def q_div(self, a, b):
        return a - b

    def q_mul(self, a, b):
        return a + b

    def q_inv(self, a):
        return -a

    def splittings(self, a):
        for x in range(a + 1):
            if x in self and (a - x) in self:
                yield x, a - x

    def elements_up_to(self, n):
        return [x for x in range(n + 1) if x in self]


class Naturals(NumericalMonoid):
    """(ℕ, +) with its usual order."""

    kind = "nat1"

    def __init__(self):
        super().__init__((1,))

    def spec(self):
        return "nat 1"

    def __contains__(self, x):
        return x >= 0

    def leq(self, a, b):
        return a <= b

    def join(self, a, b):
        return max(self.coerce(a), self.coerce(b))


def _reduce(word):
    out = []
    for letter, e in word:
        if out and out[-1][0] == letter and out[-1][1] == -e:
            out.pop()
        else:
            out.append((letter, e))
    return tuple(out)


class FreeMonoid(OrderedMonoid):
    """Free monoid on named letters inside the free group; a ≤ b iff a is a prefix of b."""

    kind = "free"

    def __init__(self, letters):
        self.letters = tuple(letters)
        if not self.letters:
            raise BadParams("free monoid needs at least one letter")
        self.unit = ()

    def spec(self):
        return "free " + " ".join(self.letters)

    def coerce(self, x):
        if isinstance(x, str):
            x = tuple(x.split(".")) if "." in x else tuple(x) if x not in self.letters else (x,)
        x = tuple(x)
        bad = [c for c in x if c not in self.letters]
        if bad:
            raise BadParams(f"{bad[0]!r} is not a letter of {self.spec()}")
        return x

    def op(self, a, b):
        return tuple(a) + tuple(b)

    def leq(self, a, b):
        return tuple(b[: len(a)]) == tuple(a)

    def join(self, a, b):
        a, b = self.coerce(a), self.coerce(b)
        if self.leq(a, b):
            return b
        if self.leq(b, a):
            return a
        raise NoJoin(f"{self.fmt(a)} and {self.fmt(b)} have no common upper bound")

    def size(self, a):
        return len(a)

    def q_div(self, a, b):
        return _reduce([(c, 1) for c in a] + [(c, -1) for c in reversed(b)])

    def q_mul(self, a, b):
        return _reduce(tuple(a) + tuple(b))

    def q_inv(self, a):
        return tuple((c, -e) for c, e in reversed(a))

    def splittings(self, a):
        for i in range(len(a) + 1):
            yield tuple(a[:i]), tuple(a[i:])

    def elements_up_to(self, n):
        for m in range(n + 1):
            yield from itertools.product(self.letters, repeat=m)

    def fmt(self, x):
        if not x:
            return "1"
        return ".".join(x) if any(len(c) > 1 for c in self.letters) else "".join(x)


def Trivial() -> NaturalPowers:
    return NaturalPowers(0)


def monoid_from_spec(tokens) -> OrderedMonoid:
    """Parse ``nat k``, ``free x y``, ``numerical 2 5`` or ``trivial``."""
    tokens = list(tokens)
    if not tokens:
        raise BadParams("empty monoid spec")
    kind, rest = tokens[0], tokens[1:]
    if kind == "trivial" and not rest:
        return Trivial()
    if kind == "nat" and len(rest) == 1:
        k = int(rest[0])
        return Naturals() if k == 1 else NaturalPowers(k)
    if kind == "free" and rest:
        return FreeMonoid(rest)
    if kind == "numerical" and rest:
        return NumericalMonoid(int(t) for t in rest)
    raise BadParams(f"unknown monoid spec {' '.join(tokens)!r}")
