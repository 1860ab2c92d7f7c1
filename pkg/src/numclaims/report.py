"""The structured document every CLI invocation emits."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import __version__


@dataclass
class ReportDocument:
    command: list[str]
    outcomes: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)
    version: str = __version__
    format: str = "text"

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "command": self.command,
            "outcomes": self.outcomes,
            "summary": self.summary,
            "timing": self.timing,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        d = json.loads(text)
        return cls(
            command=d["command"],
            outcomes=d["outcomes"],
            summary=d["summary"],
            timing=d.get("timing", {}),
            version=d["version"],
            format="json",
        )


def strip_timing(doc: dict) -> dict:
    """Copy of a report dict without the fields that legitimately vary run to run."""
    out = {k: v for k, v in doc.items() if k != "timing"}
    out["outcomes"] = [{k: v for k, v in o.items() if k != "elapsed_ms"} for o in doc["outcomes"]]
    return out


def outcome(id: str, verdict: str, agrees: bool | None, witness: dict, elapsed: float) -> dict:
    return {"id": id, "verdict": verdict, "agrees": agrees, "witness": witness, "elapsed_ms": round(elapsed * 1000, 3)}


def summarize(outcomes: list[dict]) -> dict:
    return {
        "agree": sum(o["agrees"] is True for o in outcomes),
        "disagree": sum(o["agrees"] is False for o in outcomes),
        "error": sum(o["verdict"] == "error" for o in outcomes),
    }
