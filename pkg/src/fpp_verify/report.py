"""Claim records and report rendering (JSON and markdown)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Iterable, Sequence

SCHEMA_VERSION = "1"
STATUSES = ("verified", "asserted-unverified", "failed")


def to_jsonable(value: Any) -> Any:
    """Normalize values so a report survives a JSON round trip unchanged.

    Integral fractions become ints, other fractions "p/q" strings, tuples
    and sets lists (sets sorted), mapping keys strings.
    """
    if isinstance(value, bool) or value is None or isinstance(value, (str, int)):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        raise TypeError("floats have no place in an exact report")
    if isinstance(value, dict):
        return {str(to_jsonable(k)) if not isinstance(k, str) else k: to_jsonable(v)
                for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return sorted((to_jsonable(v) for v in value), key=lambda v: json.dumps(v, sort_keys=True))
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    raise TypeError(f"cannot put {type(value).__name__} into a report")


@dataclass(frozen=True)
class ClaimReport:
    claim_id: str
    section: str
    statement: str
    status: str
    expected: Any = None
    computed: Any = None
    trace: Any = field(default=None)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        object.__setattr__(self, "expected", to_jsonable(self.expected))
        object.__setattr__(self, "computed", to_jsonable(self.computed))
        object.__setattr__(self, "trace", to_jsonable(self.trace))

    def to_dict(self) -> dict:
        out = {
            "claim_id": self.claim_id,
            "section": self.section,
            "statement": self.statement,
            "status": self.status,
            "expected": self.expected,
            "computed": self.computed,
        }
        if self.trace is not None:
            out["trace"] = self.trace
        return out

    @classmethod
    def from_dict(cls, d: dict) -> ClaimReport:
        return cls(d["claim_id"], d["section"], d["statement"], d["status"],
                   d.get("expected"), d.get("computed"), d.get("trace"))


def summarize(results: Iterable[ClaimReport]) -> dict[str, int]:
    counts = {s: 0 for s in STATUSES}
    total = 0
    for r in results:
        counts[r.status] += 1
        total += 1
    counts["total"] = total
    return counts


def ordered(results: Iterable[ClaimReport]) -> list[ClaimReport]:
    results = sorted(results, key=lambda r: r.claim_id)
    ids = [r.claim_id for r in results]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate claim ids in results")
    return results


def report_document(results: Sequence[ClaimReport], case: str = "all",
                    generated_at: str | None = None) -> dict:
    results = ordered(results)
    if generated_at is None:
        generated_at = datetime.now(timezone.utc).replace(microsecond=0).isoformat()
    return {
        "schema_version": SCHEMA_VERSION,
        "generated_at": generated_at,
        "case": case,
        "summary": summarize(results),
        "claims": [r.to_dict() for r in results],
    }


def _cell(value: Any) -> str:
    if value is None:
        return ""
    text = value if isinstance(value, str) else json.dumps(value, separators=(",", ":"))
    return text.replace("|", "\\|").replace("\n", " ")


def render_markdown(doc: dict) -> str:
    lines = [
        "# Verification report",
        "",
        f"schema_version {doc['schema_version']}, case `{doc['case']}`, "
        f"generated {doc['generated_at']}",
        "",
        "| status | count |",
        "|---|---|",
    ]
    for k, v in doc["summary"].items():
        lines.append(f"| {k} | {v} |")
    sections: dict[str, list[dict]] = {}
    for c in doc["claims"]:
        sections.setdefault(c["section"], []).append(c)
    for name in sorted(sections):
        lines += ["", f"## {name}", "",
                  "| claim | statement | status | expected | computed |",
                  "|---|---|---|---|---|"]
        for c in sections[name]:
            lines.append(
                f"| `{c['claim_id']}` | {_cell(c['statement'])} | {c['status']} | "
                f"{_cell(c['expected'])} | {_cell(c['computed'])} |"
            )
    return "\n".join(lines) + "\n"


def emit_report(results: Sequence[ClaimReport], format: str = "json", case: str = "all",
                generated_at: str | None = None) -> bytes:
    """Serialize results.  JSON claims are ordered by claim id."""
    if format not in ("json", "md", "markdown"):
        raise ValueError(f"unknown report format {format!r}")
    doc = report_document(results, case, generated_at)
    if format == "json":
        return (json.dumps(doc, indent=2) + "\n").encode("utf-8")
    return render_markdown(doc).encode("utf-8")


def parse_report(data: bytes | str) -> tuple[dict, list[ClaimReport]]:
    doc = json.loads(data)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {doc.get('schema_version')!r}")
    return doc, [ClaimReport.from_dict(c) for c in doc["claims"]]
