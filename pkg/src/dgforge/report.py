"""Deterministic analysis reports.

An AnalysisReport is a flat list of named check entries, each carrying a
four-valued status, an optional witness, a provenance identifier, a
certification flag, and a wall-clock timing.  The JSON emitter is canonical:
entries are sorted by name, keys are sorted, witnesses are rendered through a
stable stringifier, and timings are nulled out, so two runs with identical
inputs and seeds produce byte-identical documents.  The text emitter is the
human-facing view and keeps the measured timings.
"""

from __future__ import annotations

import json

STATUSES = ("pass", "fail", "unknown", "skipped")


def _canon_witness(w):
    """Render an arbitrary witness as a deterministic JSON-friendly value.

    Scalars pass through, sequences and mappings recurse (mapping keys are
    stringified and sorted), and anything else falls back to its repr-stable
    str() form.
    """
    if w is None or isinstance(w, (bool, int, str)):
        return w
    if isinstance(w, (list, tuple)):
        return [_canon_witness(x) for x in w]
    if isinstance(w, dict):
        items = sorted(((str(k), v) for k, v in w.items()), key=lambda kv: kv[0])
        return {k: _canon_witness(v) for k, v in items}
    return str(w)


class CheckEntry:
    """One named check outcome."""

    __slots__ = ("name", "status", "witness", "provenance", "certified", "timing")

    def __init__(
        self,
        name: str,
        status: str,
        witness=None,
        provenance: str = "",
        certified: bool = True,
        timing: float | None = None,
    ):
        if status not in STATUSES:
            raise ValueError(f"unknown status: {status!r}")
        self.name = name
        self.status = status
        self.witness = witness
        self.provenance = provenance
        self.certified = bool(certified)
        self.timing = timing

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "witness": _canon_witness(self.witness),
            "provenance": self.provenance,
            "certified": self.certified,
            "timing": None,
        }

    def __repr__(self):
        return f"CheckEntry({self.name}: {self.status})"


class AnalysisReport:
    """An order-normalized collection of check entries."""

    __slots__ = ("entries",)

    def __init__(self, entries=None):
        self.entries = list(entries or [])

    def add(
        self,
        name: str,
        status: str,
        witness=None,
        provenance: str = "",
        certified: bool = True,
        timing: float | None = None,
    ) -> CheckEntry:
        entry = CheckEntry(name, status, witness, provenance, certified, timing)
        self.entries.append(entry)
        return entry

    def extend(self, other: "AnalysisReport") -> None:
        self.entries.extend(other.entries)

    def sorted_entries(self) -> list[CheckEntry]:
        return sorted(self.entries, key=lambda e: e.name)

    @property
    def ok(self) -> bool:
        return all(e.status != "fail" for e in self.entries)

    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def counts(self) -> dict[str, int]:
        out = {s: 0 for s in STATUSES}
        for e in self.entries:
            out[e.status] += 1
        return out

    def __repr__(self):
        c = self.counts()
        return f"AnalysisReport({len(self.entries)} checks, {c['fail']} fail)"


def emit_report(report: AnalysisReport, format: str = "json") -> bytes:
    """Serialize a report.

    JSON mode is byte-stable for equal inputs: entries sorted by name, keys
    sorted, timings nulled.  An empty report is exactly b'{"checks":[]}'.
    Text mode is a readable table with statuses, provenance tags, witnesses,
    and measured timings.
    """
    if format == "json":
        doc = {"checks": [e.to_json() for e in report.sorted_entries()]}
        return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")
    if format == "text":
        lines = []
        c = report.counts()
        lines.append(
            "%d checks: %d pass, %d fail, %d unknown, %d skipped"
            % (len(report.entries), c["pass"], c["fail"], c["unknown"], c["skipped"])
        )
        for e in report.sorted_entries():
            mark = {"pass": "ok  ", "fail": "FAIL", "unknown": "?   ", "skipped": "skip"}[
                e.status
            ]
            tail = "" if e.certified else "  (uncertified)"
            if e.timing is not None:
                tail += "  [%.3fs]" % e.timing
            lines.append(f"  {mark}  {e.name}  <{e.provenance}>{tail}")
            if e.witness is not None:
                lines.append(f"        witness: {_canon_witness(e.witness)!r}")
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown report format: {format!r}")
