"""Categories presented by generators and relations, materialized up to a length horizon.

Relations are completed with Knuth-Bendix under the shortlex order.  If
completion does not terminate within the caps, the presentation is rejected
with ``HorizonError``: a table is only built when confluence is proved.
"""
from __future__ import annotations

from dataclasses import dataclass

from .category import FiniteCategory
from .errors import HorizonError, ValidationError
from .length import LengthAssignment
from .monoid import OrderedMonoid

Word = tuple  # of letter names; x1 x2 ... xn means x1∘x2∘...∘xn


@dataclass(frozen=True)
class Generator:
    name: str
    src: str
    rng: str
    inverse: str | None = None


class RewriteSystem:
    def __init__(self, rules, key):
        self.key = key
        self.rules: dict[Word, Word] = {}
        for lhs, rhs in rules:
            self.rules[lhs] = rhs
        self._lens = sorted({len(l) for l in self.rules}, reverse=True)

    def reduce(self, word: Word) -> Word:
        rules, lens = self.rules, self._lens
        out: list = []
        stack = list(reversed(word))
        while stack:
            out.append(stack.pop())
            for n in lens:
                if len(out) >= n:
                    rhs = rules.get(tuple(out[-n:]))
                    if rhs is not None:
                        del out[-n:]
                        stack.extend(reversed(rhs))
                        break
        return tuple(out)

    def irreducible_tail(self, word: Word) -> bool:
        """No rule applies to a suffix (enough when the prefix is already irreducible)."""
        return not any(len(word) >= n and tuple(word[-n:]) in self.rules for n in self._lens)


def _orient(a: Word, b: Word, key):
    if a == b:
        return None
    return (a, b) if key(a) > key(b) else (b, a)


def _interreduce(current: dict, key):
    changed = True
    while changed:
        changed = False
        for lhs in sorted(current, key=key, reverse=True):
            rhs = current.pop(lhs)
            rs = RewriteSystem(current.items(), key)
            o = _orient(rs.reduce(lhs), rs.reduce(rhs), key)
            if o != (lhs, rhs):
                changed = True
            if o is not None:
                current[o[0]] = o[1]


def complete(rules, key, max_rules: int = 500, max_rounds: int = 50) -> RewriteSystem:
    """Knuth-Bendix completion; raises HorizonError if it does not close within the caps."""
    current = {}
    for lhs, rhs in rules:
        o = _orient(tuple(lhs), tuple(rhs), key)
        if o:
            current[o[0]] = o[1]
    for _ in range(max_rounds):
        _interreduce(current, key)
        rs = RewriteSystem(current.items(), key)
        new = {}
        items = list(current.items())
        for l1, r1 in items:
            for l2, r2 in items:
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] != l2[:k]:
                        continue
                    a = rs.reduce(r1 + l2[k:])
                    b = rs.reduce(l1[:-k] + r2)
                    o = _orient(a, b, key)
                    if o and o[0] not in current:
                        new[o[0]] = o[1]
        if not new:
            return rs
        current.update(new)
        if len(current) > max_rules:
            raise HorizonError(f"rewriting completion exceeded {max_rules} rules")
    raise HorizonError(f"rewriting completion did not close in {max_rounds} rounds")


def _display(word: Word, single: bool) -> str:
    return ("" if single else ".").join(word)


def present(
    objects,
    generators,
    relations=(),
    monoid: OrderedMonoid | None = None,
    lengths: dict | None = None,
    horizon: int | None = None,
    cap: int = 200_000,
    label: str = "",
) -> tuple[FiniteCategory, LengthAssignment | None]:
    """Materialize all normal forms of length size ≤ horizon with their products."""
    objects = list(objects)
    gens = list(generators)
    oid = {o: i for i, o in enumerate(objects)}
    letters: dict[str, tuple[int, int]] = {}     # name -> (src, rng)
    order: list[str] = []
    base_rules: list[tuple[Word, Word]] = []
    gen_len: dict[str, object] = {}
    for g in gens:
        for o in (g.src, g.rng):
            if o not in oid:
                raise ValidationError(f"generator {g.name} uses unknown object {o}")
        letters[g.name] = (oid[g.src], oid[g.rng])
        order.append(g.name)
        if g.inverse:
            letters[g.inverse] = (oid[g.rng], oid[g.src])
            order.append(g.inverse)
            base_rules.append(((g.name, g.inverse), ()))
            base_rules.append(((g.inverse, g.name), ()))
    if len(letters) != len(order):
        raise ValidationError("duplicate generator names")

    if monoid is not None:
        lengths = dict(lengths or {})
        for g in gens:
            if g.name not in lengths:
                raise ValidationError(f"no length given for generator {g.name}")
            gen_len[g.name] = monoid.coerce(lengths[g.name])
            if g.inverse:
                if gen_len[g.name] != monoid.unit:
                    raise ValidationError(f"invertible generator {g.name} must have unit length")
                gen_len[g.inverse] = monoid.unit
        size = {x: monoid.size(v) for x, v in gen_len.items()}
    else:
        size = {x: 0 for x in letters}

    def ends(word: Word):
        for x, y in zip(word, word[1:]):
            if letters[x][0] != letters[y][1]:
                raise ValidationError(f"word {' '.join(word)} is not composable at {x}|{y}")
        return letters[word[-1]][0], letters[word[0]][1]

    rank = {x: i for i, x in enumerate(order)}
    key = lambda w: (len(w), tuple(rank[x] for x in w))
    for lhs, rhs in relations:
        lhs, rhs = tuple(lhs), tuple(rhs)
        if not lhs and not rhs:
            continue
        for x in lhs + rhs:
            if x not in letters:
                raise ValidationError(f"relation uses unknown generator {x}")
        le = ends(lhs) if lhs else None
        re = ends(rhs) if rhs else None
        if le and re and le != re:
            raise ValidationError(f"relation {' '.join(lhs)} = {' '.join(rhs)} joins different ends")
        if (le or re)[0] != (le or re)[1] and not (lhs and rhs):
            raise ValidationError("only loops can equal an identity")
        if monoid is not None:
            lv = _word_length(lhs, gen_len, monoid)
            rv = _word_length(rhs, gen_len, monoid)
            if lv != rv:
                raise ValidationError(f"relation {' '.join(lhs)} = {' '.join(rhs) or '1'} changes length")
        base_rules.append((lhs, rhs))

    rs = complete(base_rules, key)

    # breadth-first enumeration of normal forms, extended on the right
    words: list[tuple[int, int, Word]] = [(o, o, ()) for o in range(len(objects))]
    sizes = [0] * len(objects)
    frontier = list(range(len(objects)))
    out_src = {o: [x for x in order if letters[x][1] == o] for o in range(len(objects))}
    while frontier:
        nxt = []
        for m in frontier:
            s, r, w = words[m]
            for x in out_src[s]:
                sz = sizes[m] + size[x]
                if horizon is not None and sz > horizon:
                    continue
                w2 = w + (x,)
                if not rs.irreducible_tail(w2):
                    continue
                words.append((letters[x][0], r, w2))
                sizes.append(sz)
                nxt.append(len(words) - 1)
                if len(words) > cap:
                    raise HorizonError(
                        f"more than {cap} normal forms"
                        + ("" if horizon is not None else "; the presentation needs a horizon"))
        frontier = nxt

    # order: identities, then by (size, word)
    body = sorted(range(len(objects), len(words)), key=lambda m: (sizes[m], key(words[m][2])))
    perm = list(range(len(objects))) + body
    words = [words[m] for m in perm]
    sizes = [sizes[m] for m in perm]
    index = {(s, w): i for i, (s, r, w) in enumerate(words) if w}
    single = all(len(x) == 1 for x in letters)
    names = [f"id_{objects[s]}" if not w else _display(w, single) for s, r, w in words]

    products = {}
    by_rng: dict[int, list[int]] = {}
    for i, (s, r, w) in enumerate(words):
        by_rng.setdefault(r, []).append(i)
    for a, (sa, ra, wa) in enumerate(words):
        if not wa:
            continue
        for b in by_rng.get(sa, []):
            sb, rb, wb = words[b]
            if not wb:
                continue
            if horizon is not None and sizes[a] + sizes[b] > horizon:
                continue
            w = rs.reduce(wa + wb)
            c = index.get((sb, w)) if w else sb
            if c is None:
                raise HorizonError(f"normal form of {names[a]}∘{names[b]} missing from the table")
            products[(a, b)] = c

    cat = FiniteCategory(
        objects, names,
        [s for s, r, w in words], [r for s, r, w in words],
        list(range(len(objects))), products,
        horizon=horizon, label=label, words=[w for s, r, w in words],
    )
    cat.letters = dict(letters)
    cat.rewriting = rs
    d = None
    if monoid is not None:
        d = LengthAssignment(cat, monoid, [_word_length(w, gen_len, monoid) for s, r, w in words])
    return cat, d


def _word_length(word, gen_len, monoid):
    v = monoid.unit
    for x in word:
        v = monoid.op(v, gen_len[x])
    return v


def word_of(cat: FiniteCategory, m: int) -> Word:
    if cat.words is None:
        raise ValidationError("category was not built from generators")
    return cat.words[m]
