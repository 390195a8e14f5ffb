"""Theorem report: one JSON-serializable entry per check id."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass
class TheoremReport:
    entries: dict[str, dict] = field(default_factory=dict)
    grid: str = ""
    order_max: int | None = None

    def __getitem__(self, check_id: str) -> dict:
        return self.entries[check_id]

    def __iter__(self):
        return iter(self.entries)

    def verdict(self, check_id: str) -> str:
        return self.entries[check_id]["verdict"]

    @property
    def passed(self) -> bool:
        """No check failed; skipped checks do not count against the run."""
        return all(e["verdict"] != FAIL for e in self.entries.values())

    def failures(self) -> list[str]:
        return [k for k, e in self.entries.items() if e["verdict"] == FAIL]

    def merge(self, other: "TheoremReport") -> "TheoremReport":
        out = TheoremReport(dict(self.entries), self.grid or other.grid, self.order_max)
        for k, e in other.entries.items():
            out.entries[k] = merge_entries(out.entries[k], e) if k in out.entries else e
        return out

    def to_dict(self) -> dict:
        return dict(self.entries)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "TheoremReport":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("a report is a JSON object keyed by check id")
        return cls(data)


def merge_entries(a: dict, b: dict) -> dict:
    """Combine two partial entries for the same check; order does not matter."""
    verdicts = {a["verdict"], b["verdict"]}
    verdict = FAIL if FAIL in verdicts else PASS if PASS in verdicts else SKIPPED
    out = {
        "verdict": verdict,
        "instances_checked": a["instances_checked"] + b["instances_checked"],
        "magmas_checked": a.get("magmas_checked", 0) + b.get("magmas_checked", 0),
        "elapsed_ms": round(a["elapsed_ms"] + b["elapsed_ms"], 3),
    }
    cands = [e for e in (a, b) if "counterexample" in e]
    if cands:
        # deterministic pick regardless of merge order
        out["counterexample"] = min((e["counterexample"] for e in cands), key=lambda c: json.dumps(c, sort_keys=True))
    failed = sorted(set(a.get("failed_clauses", [])) | set(b.get("failed_clauses", [])))
    if failed:
        out["failed_clauses"] = failed
        per = {}
        for e in (a, b):
            for k, cx in e.get("clause_counterexamples", {}).items():
                if k not in per or json.dumps(cx, sort_keys=True) < json.dumps(per[k], sort_keys=True):
                    per[k] = cx
        if per:
            out["clause_counterexamples"] = per
    return out
