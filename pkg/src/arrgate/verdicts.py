"""Verdict and report value types.

An ObstructionReport is an ordered list of per-check verdicts plus an
overall outcome that is a pure function of those verdicts. Reports are
immutable and serialize deterministically, so identical inputs always
produce byte-identical documents.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field


class Status(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not-applicable"

    def __str__(self) -> str:  # render as the bare value, not Status.PASS
        return self.value


@dataclass(frozen=True)
class Verdict:
    """One check's outcome.

    ``witness`` holds a residue (int) or a short textual witness such as an
    uncovered pair; ``reason`` is a full sentence for humans.
    """

    check: str
    status: Status
    witness: int | str | None = None
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "status": self.status.value,
            "witness": self.witness,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class ObstructionReport:
    subject: str
    verdicts: tuple[Verdict, ...] = field(default_factory=tuple)

    @property
    def overall(self) -> Status:
        """Fail if any applicable check fails, pass if at least one passes,
        not-applicable when nothing applied."""
        statuses = [v.status for v in self.verdicts]
        if Status.FAIL in statuses:
            return Status.FAIL
        if Status.PASS in statuses:
            return Status.PASS
        return Status.NOT_APPLICABLE

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "verdicts": [v.to_dict() for v in self.verdicts],
            "overall": self.overall.value,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def render_table(self) -> str:
        """Fixed-width human rendering carrying the same verdicts and
        witnesses as the machine document."""
        rows = [("CHECK", "STATUS", "WITNESS", "REASON")]
        for v in self.verdicts:
            witness = "" if v.witness is None else str(v.witness)
            rows.append((v.check, v.status.value, witness, v.reason))
        widths = [max(len(r[i]) for r in rows) for i in range(3)]
        lines = [f"subject: {self.subject}"]
        for r in rows:
            lines.append(f"{r[0]:<{widths[0]}}  {r[1]:<{widths[1]}}  {r[2]:<{widths[2]}}  {r[3]}".rstrip())
        lines.append(f"overall: {self.overall.value}")
        return "\n".join(lines) + "\n"


def exit_code_for(overall: Status) -> int:
    """CLI exit status contract: 0 pass, 1 fail, 2 nothing applicable."""
    if overall is Status.PASS:
        return 0
    if overall is Status.FAIL:
        return 1
    return 2
