"""The line-oriented ``.lcsc`` description format.

A file starts with ``lcsc 1``, then ``name`` and ``param`` lines, then
sections introduced by ``[header]`` lines.  ``#`` starts a comment.  See the
README for a complete example.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParseError

VERSION = "1"
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.'⁻¹-]*$")

CATEGORY_SECTIONS = ("horizon", "objects", "morphisms", "composition", "generators", "relations")
SECTIONS = CATEGORY_SECTIONS + ("length",) + tuple(f"groupoid.{s}" for s in CATEGORY_SECTIONS) + (
    "units", "action", "cocycle")


@dataclass
class CategorySpec:
    horizon: int | None = None
    objects: list = field(default_factory=list)
    morphisms: list = field(default_factory=list)      # (name, src, rng)
    composition: list = field(default_factory=list)    # (a, b, c) meaning a∘b = c
    generators: list = field(default_factory=list)     # (name, src, rng, inverse | None)
    relations: list = field(default_factory=list)      # (lhs tuple, rhs tuple)

    @property
    def generator_mode(self) -> bool:
        return bool(self.generators)

    def is_empty(self):
        return not (self.objects or self.morphisms or self.generators)


@dataclass
class CategoryDescription:
    name: str = ""
    params: dict = field(default_factory=dict)
    category: CategorySpec = field(default_factory=CategorySpec)
    monoid: tuple | None = None                         # e.g. ("nat", "1")
    lengths: list = field(default_factory=list)         # (name, value tokens)
    groupoid: CategorySpec | None = None
    units: list = field(default_factory=list)           # (groupoid object, category object)
    action: list = field(default_factory=list)          # (g, x, value tokens)
    cocycle: list = field(default_factory=list)         # (g, x, value tokens)

    @property
    def has_system(self) -> bool:
        return self.groupoid is not None


def _words(tokens):
    return tuple(t for t in tokens if t != "1")


def parse(text: str, path=None) -> CategoryDescription:
    desc = CategoryDescription()
    lines = text.splitlines()
    section = None
    seen_header = False
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        line = line.strip()

        def err(msg, c=col):
            return ParseError(msg, lineno, c, path)

        if not seen_header:
            if line.split() != ["lcsc", VERSION]:
                raise err(f"expected header 'lcsc {VERSION}'")
            seen_header = True
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise err("unterminated section header")
            section = line[1:-1].strip()
            if section not in SECTIONS:
                raise err(f"unknown section [{section}]")
            if section.startswith("groupoid.") and desc.groupoid is None:
                desc.groupoid = CategorySpec()
            continue
        if section is None:
            toks = line.split()
            if toks[0] == "name" and len(toks) == 2:
                desc.name = toks[1]
            elif toks[0] == "param" and len(toks) == 3:
                desc.params[toks[1]] = toks[2]
            else:
                raise err("expected 'name N' or 'param KEY VALUE' before the first section")
            continue
        target = desc.category
        sec = section
        if section.startswith("groupoid."):
            target = desc.groupoid
            sec = section[len("groupoid."):]
        try:
            _parse_line(desc, target, sec, line, err)
        except ParseError:
            raise
        except (ValueError, IndexError) as e:
            raise err(f"malformed [{section}] line: {e}") from None
    if not seen_header:
        raise ParseError("empty description", 1, 1, path)
    return desc


def _arrow(line, err):
    m = re.fullmatch(r"(\S+)\s*:\s*(\S+)\s*->\s*(\S+)(.*)", line)
    if not m:
        raise err("expected 'name: src -> rng'")
    name, src, rng, rest = m.groups()
    for x in (name, src, rng):
        if not _NAME.match(x):
            raise err(f"bad identifier {x!r}")
    return name, src, rng, rest.split()


def _parse_line(desc, target: CategorySpec, sec, line, err):
    if sec == "horizon":
        try:
            h = int(line)
        except ValueError:
            raise err("horizon must be an integer") from None
        if h < 0:
            raise err("horizon must be non-negative")
        target.horizon = h
    elif sec == "objects":
        for o in line.split():
            if not _NAME.match(o):
                raise err(f"bad object name {o!r}")
            target.objects.append(o)
    elif sec == "morphisms":
        name, src, rng, rest = _arrow(line, err)
        if rest:
            raise err("unexpected tokens after morphism")
        target.morphisms.append((name, src, rng))
    elif sec == "generators":
        name, src, rng, rest = _arrow(line, err)
        inv = None
        if rest:
            if rest[0] != "invertible" or len(rest) != 2:
                raise err("expected 'invertible INVERSE-NAME'")
            inv = rest[1]
        target.generators.append((name, src, rng, inv))
    elif sec == "composition":
        m = re.fullmatch(r"(\S+)\s*\*\s*(\S+)\s*=\s*(\S+)", line)
        if not m:
            pos = line.find("=")
            raise err("expected 'a * b = c'", pos + 1 if pos >= 0 else 1)
        target.composition.append(m.groups())
    elif sec == "relations":
        if line.count("=") != 1:
            raise err("expected 'word = word'")
        lhs, rhs = line.split("=")
        target.relations.append((_words(lhs.split()), _words(rhs.split())))
    elif sec == "length":
        toks = line.split()
        if toks[0] == "monoid":
            desc.monoid = tuple(toks[1:])
        else:
            if len(toks) < 3 or toks[1] != "=":
                raise err("expected 'name = value'")
            desc.lengths.append((toks[0], tuple(toks[2:])))
    elif sec == "units":
        toks = line.split()
        if len(toks) != 3 or toks[1] != "=":
            raise err("expected 'groupoid-object = object'")
        desc.units.append((toks[0], toks[2]))
    elif sec in ("action", "cocycle"):
        op = "." if sec == "action" else ","
        m = re.fullmatch(r"(\S+)\s*" + re.escape(op) + r"\s*(\S+)\s*=\s*(.+)", line)
        if not m:
            raise err(f"expected 'g {op} x = value'")
        g, x, val = m.groups()
        (desc.action if sec == "action" else desc.cocycle).append((g, x, tuple(val.split())))


def _emit_category(out, spec: CategorySpec, prefix=""):
    if spec.horizon is not None:
        out += [f"[{prefix}horizon]", str(spec.horizon), ""]
    if spec.objects:
        out += [f"[{prefix}objects]", " ".join(spec.objects), ""]
    if spec.morphisms:
        out.append(f"[{prefix}morphisms]")
        out += [f"{n}: {s} -> {r}" for n, s, r in spec.morphisms]
        out.append("")
    if spec.composition:
        out.append(f"[{prefix}composition]")
        out += [f"{a} * {b} = {c}" for a, b, c in spec.composition]
        out.append("")
    if spec.generators:
        out.append(f"[{prefix}generators]")
        out += [f"{n}: {s} -> {r}" + (f" invertible {i}" if i else "") for n, s, r, i in spec.generators]
        out.append("")
    if spec.relations:
        out.append(f"[{prefix}relations]")
        out += [f"{' '.join(l) or '1'} = {' '.join(r) or '1'}" for l, r in spec.relations]
        out.append("")


def serialize(desc: CategoryDescription) -> str:
    out = [f"lcsc {VERSION}"]
    if desc.name:
        out.append(f"name {desc.name}")
    for k, v in desc.params.items():
        out.append(f"param {k} {v}")
    out.append("")
    _emit_category(out, desc.category)
    if desc.monoid is not None:
        out += ["[length]", "monoid " + " ".join(desc.monoid)]
        out += [f"{n} = {' '.join(v)}" for n, v in desc.lengths]
        out.append("")
    if desc.groupoid is not None:
        _emit_category(out, desc.groupoid, "groupoid.")
    if desc.units:
        out.append("[units]")
        out += [f"{g} = {o}" for g, o in desc.units]
        out.append("")
    if desc.action:
        out.append("[action]")
        out += [f"{g} . {x} = {' '.join(v)}" for g, x, v in desc.action]
        out.append("")
    if desc.cocycle:
        out.append("[cocycle]")
        out += [f"{g} , {x} = {' '.join(v)}" for g, x, v in desc.cocycle]
        out.append("")
    while out and out[-1] == "":
        out.pop()
    return "\n".join(out) + "\n"


def read(path) -> CategoryDescription:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", path=p) from None
    return parse(text, p)
