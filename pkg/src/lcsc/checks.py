"""Dispatch a named property to the checkers and package the answer as a report."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .action import CategorySystem, is_pseudo_free, trivial_system
from .bundle import Bundle
from .category import check_cancellation, is_finitely_aligned, validate_category
from .errors import LcscError, PreconditionUnverified, UnknownProperty
from .factorization import check_R_condition, find_atoms, transversal, verify_zs_decomposition
from .filters import enumerate_filters, filter_transfer
from .germs import check_germ_groupoid, tight_germs
from .length import check_wfp, is_action_free
from .tight import (check_hausdorff, check_minimality, check_star_property, check_topological_freeness,
                    germ_dot, kernel_and_tg, precondition, simplicity_condition)
from .verdict import INCONCLUSIVE, Report, Verdict, combine, holds
from .zappa_szep import check_preservation

PROPERTIES = (
    "cancellation", "alignment", "wfp", "action-free", "pseudo-free", "cocycle", "product",
    "preservation", "atoms", "r-condition", "decomposition", "filters", "hausdorff", "top-free",
    "minimal", "simplicity-condition", "degree", "star", "kernel-tg", "all",
)

_NEEDS_LENGTH = {"wfp", "degree", "star", "kernel-tg"}
_NEEDS_SYSTEM = {"pseudo-free", "cocycle", "product", "preservation"}


@dataclass
class CheckResult:
    property: str
    verdict: str
    witnesses: list
    horizon: int | None
    elapsed_ms: float
    parts: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return Verdict(self.verdict).exit_code

    def as_dict(self) -> dict:
        return {
            "property": self.property,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "horizon": self.horizon,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "parts": self.parts,
            "notes": self.notes,
            "data": self.data,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=False, default=_jsonable, ensure_ascii=False)

    def to_text(self) -> str:
        h = "" if self.horizon is None else f" (horizon {self.horizon})"
        lines = [f"{self.property}: {self.verdict}{h}  [{self.elapsed_ms:.0f} ms]"]
        for k, v in self.parts.items():
            w = f"  witness {v['witness']}" if v.get("witness") else ""
            note = f"  {v['note']}" if v.get("note") else ""
            lines.append(f"  {k}: {v['verdict']}{w}{note}")
        lines.extend(f"  note: {n}" for n in self.notes if n)
        return "\n".join(lines) + "\n"


def _jsonable(x):
    if hasattr(x, "tolist"):
        return x.tolist()
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    return str(x)


def _part(v: Verdict) -> dict:
    out = {"verdict": v.status, "witness": list(v.witness)}
    if v.note:
        out["note"] = v.note
    if v.data:
        out["data"] = v.data
    return out


def system_of(bundle: Bundle) -> CategorySystem:
    """The bundle's system, or the trivial groupoid of units when there is none."""
    if bundle.system is not None:
        return bundle.require_system()
    cached = bundle.__dict__.get("_trivial")
    if cached is None:
        cached = trivial_system(bundle.cat, bundle.d, bundle.cat.label)
        bundle.__dict__["_trivial"] = cached
    return cached


def _degrees(bundle: Bundle, params: dict):
    M = bundle.require_length().monoid
    gs = params.get("g")
    if gs is None:
        return list(M.elements_up_to(3))
    if not isinstance(gs, (list, tuple)):
        gs = [gs]
    from .bundle import parse_value
    return [parse_value(M, str(g).split()) if isinstance(g, str) else M.coerce(g) for g in gs]


def _rebuild(bundle: Bundle):
    def go(h):
        return system_of(bundle.at_horizon(h))
    return go


def _hausdorff(bundle: Bundle, params: dict) -> Verdict:
    key = ("hausdorff", tuple(params.get("horizons") or ()))
    cache = bundle.__dict__.setdefault("_checks", {})
    if key not in cache:
        S = system_of(bundle)
        cache[key] = check_hausdorff(S, params.get("horizons") or (), _rebuild(bundle))
    return cache[key]


def _precondition(bundle: Bundle, params: dict):
    S = system_of(bundle)
    return precondition(S, _hausdorff(bundle, params))


def _single(name: str, bundle: Bundle, params: dict):
    """Returns a Verdict or a Report."""
    cat, d = bundle.cat, bundle.d
    debug = params.get("debug_verify", False)
    if name == "cancellation":
        return check_cancellation(cat)
    if name == "alignment":
        return is_finitely_aligned(cat)
    if name == "wfp":
        return check_wfp(cat, bundle.require_length())
    if name == "action-free":
        return is_action_free(cat)
    if name == "pseudo-free":
        return is_pseudo_free(bundle.require_system())
    if name == "cocycle":
        S = bundle.require_system()
        return bundle.certificates.get("cocycle") or S.validation
    if name == "product":
        P = bundle.product
        rep = validate_category(P.cat)
        rep.data["size"] = P.n
        return rep
    if name == "preservation":
        return check_preservation(bundle.require_system(), bundle.product)
    if name == "atoms":
        atoms = find_atoms(cat, d)
        return holds(cat.truncated, f"{len(atoms)} atoms", atoms=sorted(cat.name(a) for a in atoms))
    if name == "r-condition":
        return check_R_condition(cat, transversal(cat, d=d))
    if name == "decomposition":
        B = transversal(cat, d=d)
        if bundle.system is not None:
            return verify_zs_decomposition(cat, d, B, bundle.system, bundle.product)
        return verify_zs_decomposition(cat, d, B)
    if name == "filters":
        fs = enumerate_filters(cat, params.get("cap", 1 << 16))
        rep = Report("filters", truncated=cat.truncated)
        rep.add("enumerate", fs.verdict())
        if debug and not cat.truncated:
            from .filters import brute_force_filters
            bf = brute_force_filters(cat, params.get("cap", 1 << 16))
            same = {F.members for F in bf.star} == {F.members for F in fs.star} and \
                {F.members for F in bf.tight} == {F.members for F in fs.tight}
            rep.add("brute-force-agrees", Verdict("holds" if same else "fails"))
        if bundle.system is not None and bundle.product.n <= params.get("transfer_limit", 2000):
            rep.add("transfer", filter_transfer(bundle.system, bundle.product, fs))
        rep.data["tight"] = [F.names(cat) for F in fs.tight][:50]
        rep.data["method"] = fs.method
        return rep
    if name == "hausdorff":
        v = _hausdorff(bundle, params)
        if debug and v.data.get("fast_path"):
            S = system_of(bundle)
            raw = check_hausdorff(S, params.get("horizons") or (), _rebuild(bundle), fast_path=False)
            rep = Report("hausdorff", truncated=cat.truncated, status=v.status)
            rep.add("fast-path", v)
            rep.add("cover-search", raw)
            rep.notes.append("the cover search cannot confirm Hausdorff on a window; it can only contradict it")
            if raw.fails:
                rep.status = INCONCLUSIVE
            return rep
        return v
    if name in ("top-free", "minimal", "simplicity-condition"):
        try:
            pre = _precondition(bundle, params)
        except PreconditionUnverified as e:
            return Verdict(INCONCLUSIVE, (), f"precondition unverified: {e}")
        S = system_of(bundle)
        if name == "top-free":
            return check_topological_freeness(S, pre)
        if name == "minimal":
            return check_minimality(S, pre)
        return simplicity_condition(S, pre)
    if name == "degree":
        bundle.require_length()
        S = system_of(bundle)
        gg = tight_germs(S, enumerate_filters(cat, params.get("cap", 1 << 16)))
        rep = check_germ_groupoid(S, gg)
        rep.name = "degree"
        return rep
    if name == "star":
        dl = bundle.require_length()
        fs = enumerate_filters(cat, params.get("cap", 1 << 16))
        rep = Report("star", truncated=cat.truncated)
        for g in _degrees(bundle, params):
            st = check_star_property(cat, dl, g, fs, fast_path=not debug)
            rep.add(f"g={dl.monoid.fmt(g)}", st.verdict)
        return rep
    if name == "kernel-tg":
        bundle.require_length()
        try:
            res = kernel_and_tg(system_of(bundle), _degrees(bundle, params),
                                enumerate_filters(cat, params.get("cap", 1 << 16)))
        except PreconditionUnverified as e:
            return Verdict(INCONCLUSIVE, (), f"precondition unverified: {e}")
        return res.report
    raise UnknownProperty(f"unknown property {name!r}; choose from {', '.join(PROPERTIES)}")


def _applicable(name: str, bundle: Bundle) -> bool:
    if name in _NEEDS_LENGTH and bundle.d is None:
        return False
    if name in _NEEDS_SYSTEM and bundle.system is None:
        return False
    return True


def run_check(bundle: Bundle, prop: str, params: dict | None = None) -> CheckResult:
    """Evaluate ``prop`` on ``bundle``.  ``params`` may hold horizons, cap, g and debug_verify."""
    params = dict(params or {})
    if prop not in PROPERTIES:
        raise UnknownProperty(f"unknown property {prop!r}; choose from {', '.join(PROPERTIES)}")
    t0 = time.perf_counter()
    if prop == "all":
        parts, notes = {}, []
        verdicts = []
        for name in PROPERTIES[:-1]:
            if not _applicable(name, bundle):
                notes.append(f"{name}: skipped (needs a {'length' if name in _NEEDS_LENGTH else 'groupoid'})")
                continue
            try:
                r = _single(name, bundle, params)
            except PreconditionUnverified as e:
                r = Verdict(INCONCLUSIVE, (), str(e))
            v = r.as_verdict() if isinstance(r, Report) else r
            parts[name] = _part(v)
            verdicts.append(v)
        status = combine(verdicts, bundle.cat.truncated)
        wit = [p["witness"] for p in parts.values() if p["witness"]]
        return CheckResult("all", status, wit, bundle.horizon, (time.perf_counter() - t0) * 1000,
                           parts, notes)
    r = _single(prop, bundle, params)
    elapsed = (time.perf_counter() - t0) * 1000
    if isinstance(r, Report):
        parts = {k: _part(v) for k, v in r.parts.items()}
        wit = [list(v.witness) for v in r.parts.values() if v.fails and v.witness]
        return CheckResult(prop, r.verdict, wit, bundle.horizon, elapsed, parts, list(r.notes),
                           dict(r.data))
    wit = [list(r.witness)] if r.witness else []
    return CheckResult(prop, r.status, wit, bundle.horizon, elapsed, {}, [r.note] if r.note else [],
                       dict(r.data))


def dot_report(bundle: Bundle, params: dict | None = None) -> str:
    params = params or {}
    S = system_of(bundle)
    gg = tight_germs(S, enumerate_filters(bundle.cat, params.get("cap", 1 << 16)))
    return germ_dot(gg)


__all__ = ["PROPERTIES", "CheckResult", "run_check", "dot_report", "system_of", "LcscError"]
