"""Structured pass/fail records for verification suites.

Every checked identity becomes one entry: a stable identity id, a short
anchor string naming what the identity says, a pass/fail status, and (only
on failure) a witness expression.  Reports serialize to JSON with sorted
keys so runs are diffable; wall times are recorded but excluded from
equality comparisons.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Iterable


@dataclass
class CheckEntry:
    identity: str
    anchor: str
    status: str  # "pass" or "fail"
    witness: str | None = None
    seconds: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "identity": self.identity,
            "anchor": self.anchor,
            "status": self.status,
            "seconds": round(self.seconds, 6),
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerificationReport:
    suite: str
    params: dict[str, Any] = field(default_factory=dict)
    entries: list[CheckEntry] = field(default_factory=list)

    def add_pass(self, identity: str, anchor: str, seconds: float = 0.0,
                 witness=None) -> None:
        self.entries.append(CheckEntry(identity, anchor, "pass", witness, seconds))

    def add_fail(self, identity: str, anchor: str, witness,
                 seconds: float = 0.0) -> None:
        self.entries.append(CheckEntry(identity, anchor, "fail", witness, seconds))

    def check(self, identity: str, anchor: str, ok: bool,
              witness: str = "", seconds: float = 0.0) -> bool:
        """Record one checked identity; witness is used only when it failed."""
        if ok:
            self.add_pass(identity, anchor, seconds)
        else:
            self.add_fail(identity, anchor, witness or "(no witness provided)", seconds)
        return ok

    @property
    def ok(self) -> bool:
        return all(e.status == "pass" for e in self.entries)

    @property
    def counts(self) -> dict[str, int]:
        passed = sum(1 for e in self.entries if e.status == "pass")
        return {"pass": passed, "fail": len(self.entries) - passed,
                "total": len(self.entries)}

    def merge(self, other: "VerificationReport") -> None:
        """Absorb another report's entries, prefixing their identity ids."""
        for entry in other.entries:
            self.entries.append(CheckEntry(
                f"{other.suite}.{entry.identity}", entry.anchor,
                entry.status, entry.witness, entry.seconds))

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "params": {k: self.params[k] for k in sorted(self.params)},
            "entries": [e.to_dict() for e in self.entries],
            "summary": self.counts,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    def comparable(self) -> dict[str, Any]:
        """Deterministic content: the full report minus wall times."""
        data = self.to_dict()
        for entry in data["entries"]:
            entry.pop("seconds", None)
        return data

    def text_lines(self) -> list[str]:
        lines = [f"suite {self.suite} "
                 + " ".join(f"{k}={self.params[k]}" for k in sorted(self.params))]
        for e in self.entries:
            mark = "PASS" if e.status == "pass" else "FAIL"
            lines.append(f"  [{mark}] {e.identity} ({e.anchor})")
            if e.witness is not None:
                lines.append(f"         witness: {e.witness}")
        c = self.counts
        lines.append(f"  {c['pass']}/{c['total']} passed")
        return lines


class Stopwatch:
    """Context manager measuring wall time for one report entry."""

    def __enter__(self) -> "Stopwatch":
        self.start = time.perf_counter()
        self.seconds = 0.0
        return self

    def __exit__(self, *exc) -> None:
        self.seconds = time.perf_counter() - self.start
