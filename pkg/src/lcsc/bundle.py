"""Turn a description into validated library objects."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .action import CategorySystem, GroupoidAction, extend_action, validate_category_cocycle
from .category import FiniteCategory, validate_category
from .description import CategoryDescription, CategorySpec, parse, read
from .errors import BadParams, ValidationError
from .length import LengthAssignment, validate_length
from .monoid import FreeMonoid, NaturalPowers, NumericalMonoid, OrderedMonoid, monoid_from_spec
from .verdict import Report
from .words import Generator, present


def parse_value(monoid: OrderedMonoid, tokens) -> object:
    tokens = tuple(tokens)
    if isinstance(monoid, FreeMonoid):
        return monoid.coerce(() if tokens == ("1",) else tokens)
    if isinstance(monoid, NaturalPowers):
        if monoid.k == 0:
            if tokens not in (("0",), ("1",)):
                raise BadParams("the trivial monoid only has the unit (write 0)")
            return ()
        return monoid.coerce(tuple(int(t) for t in tokens))
    if isinstance(monoid, NumericalMonoid):
        if len(tokens) != 1:
            raise BadParams(f"expected one integer, got {' '.join(tokens)}")
        return monoid.coerce(int(tokens[0]))
    raise BadParams(f"cannot parse values for {monoid.spec()}")


def format_value(monoid: OrderedMonoid, value) -> tuple:
    if isinstance(monoid, FreeMonoid):
        return tuple(value) or ("1",)
    if isinstance(monoid, NaturalPowers):
        return tuple(str(v) for v in value) or ("0",)
    return (str(value),)


def build_category(spec: CategorySpec, monoid=None, lengths=None, horizon=None, cap=200_000, label=""):
    """Returns (category, length or None)."""
    h = spec.horizon if horizon is None else horizon
    if spec.generators:
        if spec.morphisms or spec.composition:
            raise ValidationError("use either [generators] or [morphisms]/[composition], not both")
        gens = [Generator(n, s, r, i) for n, s, r, i in spec.generators]
        vals = None
        if monoid is not None:
            vals = {n: parse_value(monoid, v) for n, v in (lengths or [])}
        return present(spec.objects, gens, spec.relations, monoid, vals, h, cap=cap, label=label)

    objs = list(spec.objects)
    oid = {o: i for i, o in enumerate(objs)}
    names = [f"id_{o}" for o in objs]
    src = list(range(len(objs)))
    rng = list(range(len(objs)))
    for n, s, r in spec.morphisms:
        for o in (s, r):
            if o not in oid:
                raise ValidationError(f"morphism {n} uses unknown object {o}")
        names.append(n)
        src.append(oid[s])
        rng.append(oid[r])
    mid = {n: i for i, n in enumerate(names)}
    if len(mid) != len(names):
        raise ValidationError("duplicate morphism names")
    products = {}
    for a, b, c in spec.composition:
        for x in (a, b, c):
            if x not in mid:
                raise ValidationError(f"composition uses unknown morphism {x}")
        key = (mid[a], mid[b])
        if key in products and products[key] != mid[c]:
            raise ValidationError(f"two products listed for {a} * {b}")
        products[key] = mid[c]
    cat = FiniteCategory(objs, names, src, rng, range(len(objs)), products, horizon=h, label=label)
    d = None
    if monoid is not None:
        given = {n: parse_value(monoid, v) for n, v in (lengths or [])}
        for n in given:
            if n not in mid:
                raise ValidationError(f"length given for unknown morphism {n}")
        vals = []
        for m, n in enumerate(names):
            if cat.is_identity(m):
                vals.append(given.get(n, monoid.unit))
            elif n in given:
                vals.append(given[n])
            else:
                raise ValidationError(f"no length given for morphism {n}")
        d = LengthAssignment(cat, monoid, vals)
    return cat, d


def resolve(cat: FiniteCategory, tokens) -> int:
    """A morphism from a name or a space-separated word of letters."""
    tokens = tuple(tokens)
    if len(tokens) == 1 and tokens[0] in cat._index:
        return cat[tokens[0]]
    rs = getattr(cat, "rewriting", None)
    if rs is not None and cat.words is not None:
        w = rs.reduce(tuple(t for t in tokens if t != "1"))
        for m, mw in enumerate(cat.words):
            if mw == w and w:
                return m
    raise ValidationError(f"{' '.join(tokens)} does not name a morphism of {cat.label or 'the category'}")


def _letter(cat: FiniteCategory, name: str) -> str:
    """The letter a generator name reduces to (relations may identify g with another letter)."""
    if cat.words is None:
        return name
    w = cat.words[resolve(cat, (name,))]
    if len(w) != 1:
        raise ValidationError(f"generator {name} is not a single letter in normal form")
    return w[0]


def _put(table: dict, key, value, g, x):
    if table.setdefault(key, value) != value:
        raise ValidationError(f"conflicting entries for {g}, {x} (the letters are identified by relations)")


@dataclass
class Bundle:
    description: CategoryDescription
    cat: FiniteCategory
    d: LengthAssignment | None = None
    system: CategorySystem | None = None
    certificates: dict = field(default_factory=dict)
    cap: int = 200_000

    @property
    def name(self):
        return self.description.name

    @property
    def horizon(self):
        return self.cat.horizon

    @cached_property
    def product(self):
        from .zappa_szep import build_product
        if self.system is None:
            raise ValidationError("the description has no groupoid action")
        return build_product(self.system)

    def at_horizon(self, horizon: int) -> "Bundle":
        return build(self.description, horizon=horizon, strict=False, cap=self.cap)

    def require_system(self) -> CategorySystem:
        if self.system is None:
            raise ValidationError("this property needs a groupoid action ([groupoid.*] sections)")
        cert = self.certificates.get("cocycle")
        if cert is not None and cert.fails:
            raise ValidationError("the category system fails validation: " + ", ".join(cert.failures()),
                                  next(iter(cert.failures().values())).witness)
        return self.system

    def require_length(self) -> LengthAssignment:
        if self.d is None:
            raise ValidationError("this property needs a [length] section")
        return self.d


def build(desc: CategoryDescription, horizon: int | None = None, strict: bool = True,
          cap: int = 200_000) -> Bundle:
    monoid = monoid_from_spec(desc.monoid) if desc.monoid is not None else None
    label = desc.name or "Λ"
    cat, d = build_category(desc.category, monoid, desc.lengths, horizon, cap, label)
    certs: dict[str, Report] = {}
    cv = validate_category(cat)
    certs["category"] = cv
    if cv.fails:
        w = next(iter(cv.failures().values())).witness
        raise ValidationError("composition table is not a category (" + ", ".join(cv.failures()) + ")", w)
    if d is not None:
        certs["length"] = validate_length(cat, d)
        if certs["length"]["homomorphism"].fails or certs["length"]["units"].fails:
            raise ValidationError("length is not a functor", certs["length"]["homomorphism"].witness)
    system = None
    if desc.groupoid is not None:
        G, _ = build_category(desc.groupoid, label="G")
        if any(not G.is_invertible(g) for g in range(G.n)):
            bad = next(g for g in range(G.n) if not G.is_invertible(g))
            raise ValidationError(f"groupoid morphism {G.name(bad)} is not invertible", (bad,))
        umap = dict(desc.units) if desc.units else {o: o for o in G.objects}
        try:
            uo = [cat.obj(umap[o]) for o in G.objects]
        except (KeyError, ValueError):
            raise ValidationError("[units] must send every groupoid object to a category object") from None
        entries, coc = {}, {}
        for g, x, v in desc.action:
            _put(entries, (_letter(G, g), _letter(cat, x)), resolve(cat, v), g, x)
        for g, x, v in desc.cocycle:
            _put(coc, (_letter(G, g), _letter(cat, x)), resolve(G, v), g, x)
        if set(entries) != set(coc):
            missing = sorted(set(entries) ^ set(coc))[0]
            raise ValidationError(f"action and cocycle tables differ at {missing[0]}, {missing[1]}")
        A, C = extend_action(cat, G, uo, entries, coc)
        system = CategorySystem(cat, d, GroupoidAction(cat, G, uo, A, C), label)
        rep = validate_category_cocycle(system)
        system.__dict__["validation"] = rep
        certs["cocycle"] = rep
        if strict and rep.fails:
            bad = rep.failures()
            raise ValidationError("category system fails " + ", ".join(bad), next(iter(bad.values())).witness)
    return Bundle(desc, cat, d, system, certs, cap)


def load(path, horizon: int | None = None, strict: bool = True, cap: int = 200_000) -> Bundle:
    return build(read(path), horizon=horizon, strict=strict, cap=cap)


def loads(text: str, horizon: int | None = None, strict: bool = True, cap: int = 200_000) -> Bundle:
    return build(parse(text), horizon=horizon, strict=strict, cap=cap)
