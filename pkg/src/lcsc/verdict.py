"""Verdicts and multi-part reports returned by the checkers."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

HOLDS = "holds"
FAILS = "fails"
UP_TO_HORIZON = "holds-up-to-horizon"
INCONCLUSIVE = "inconclusive-at-horizon"
HAUSDORFF = "hausdorff"
NOT_HAUSDORFF = "not-hausdorff"

_POSITIVE = {HOLDS, UP_TO_HORIZON, HAUSDORFF}
_NEGATIVE = {FAILS, NOT_HAUSDORFF}


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: tuple = ()
    note: str = ""
    data: dict = field(default_factory=dict, compare=False)

    @property
    def holds(self) -> bool:
        return self.status in _POSITIVE

    @property
    def fails(self) -> bool:
        return self.status in _NEGATIVE

    @property
    def inconclusive(self) -> bool:
        return not (self.holds or self.fails)

    def __bool__(self):
        return self.holds

    @property
    def exit_code(self) -> int:
        return 0 if self.holds else 1 if self.fails else 2


def holds(truncated: bool = False, note: str = "", **data) -> Verdict:
    return Verdict(UP_TO_HORIZON if truncated else HOLDS, (), note, data)


def fails(witness=(), note: str = "", **data) -> Verdict:
    return Verdict(FAILS, tuple(witness), note, data)


def from_bool(ok: bool, witness=(), truncated=False, note="", **data) -> Verdict:
    return holds(truncated, note, **data) if ok else fails(witness, note, **data)


def combine(verdicts, truncated=False) -> str:
    """Overall status of a family of verdicts: any failure wins, then doubt."""
    verdicts = list(verdicts)
    if any(v.fails for v in verdicts):
        return FAILS
    if any(v.inconclusive for v in verdicts):
        return INCONCLUSIVE
    if truncated or any(v.status == UP_TO_HORIZON for v in verdicts):
        return UP_TO_HORIZON
    return HOLDS


@dataclass
class Report:
    """Named sub-verdicts plus an overall status."""

    name: str
    parts: dict[str, Verdict] = field(default_factory=dict)
    truncated: bool = False
    notes: list[str] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)
    status: str | None = None

    def __getitem__(self, key) -> Verdict:
        return self.parts[key]

    def __contains__(self, key):
        return key in self.parts

    def add(self, key: str, verdict: Verdict) -> Verdict:
        self.parts[key] = verdict
        return verdict

    @property
    def verdict(self) -> str:
        if self.status is not None:
            return self.status
        return combine(self.parts.values(), self.truncated)

    @property
    def holds(self) -> bool:
        return self.verdict in _POSITIVE

    @property
    def fails(self) -> bool:
        return self.verdict in _NEGATIVE

    def __bool__(self):
        return self.holds

    def failures(self):
        return {k: v for k, v in self.parts.items() if v.fails}

    def as_verdict(self) -> Verdict:
        bad = self.failures()
        witness = next(iter(bad.values())).witness if bad else ()
        return Verdict(self.verdict, witness, "; ".join(self.notes), dict(self.data))
