"""Structured verdicts and deterministic plain-text reports.

Reports render with a stable key order and greppable ``VERDICT`` lines so
byte-identical runs stay byte-identical; wall-clock timing never enters the
report body.
"""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "Pass"
FAIL = "Fail"
UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class Verdict:
    name: str
    status: str          # Pass | Fail | Undetermined
    detail: str = ""

    def line(self) -> str:
        detail = f" {self.detail}" if self.detail else ""
        return f"VERDICT {self.name} {self.status}{detail}"


@dataclass
class Report:
    command: str
    inputs: list[tuple[str, str]] = field(default_factory=list)   # (label, digest)
    options: dict = field(default_factory=dict)
    verdicts: list[Verdict] = field(default_factory=list)
    tables: list[tuple[str, list[str]]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, name: str, status: str, detail: str = "") -> Verdict:
        v = Verdict(name, status, detail)
        self.verdicts.append(v)
        return v

    def add_table(self, name: str, rows: list[str]) -> None:
        self.tables.append((name, rows))

    def counts(self) -> tuple[int, int, int]:
        p = sum(1 for v in self.verdicts if v.status == PASS)
        f = sum(1 for v in self.verdicts if v.status == FAIL)
        u = sum(1 for v in self.verdicts if v.status == UNDETERMINED)
        return p, f, u

    def exit_code(self, strict: bool = False) -> int:
        _, f, u = self.counts()
        if f:
            return 1
        if u and strict:
            return 3
        return 0

    def render(self) -> str:
        lines = [f"REPORT {self.command}"]
        for label, digest in self.inputs:
            lines.append(f"INPUT {label} {digest}")
        for key in sorted(self.options):
            lines.append(f"OPTION {key}={self.options[key]}")
        for v in self.verdicts:
            lines.append(v.line())
        for name, rows in self.tables:
            lines.append(f"TABLE {name}")
            lines.extend(f"  {row}" for row in rows)
        for note in self.notes:
            lines.append(f"NOTE {note}")
        p, f, u = self.counts()
        lines.append(f"SUMMARY pass={p} fail={f} undetermined={u}")
        return "\n".join(lines) + "\n"
