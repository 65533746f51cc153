from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exactmath import format_rational

__all__ = ["VerificationReport"]


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


@dataclass
class VerificationReport:
    """Outcome of sweeping an identity over a finite parameter range."""

    identity: str
    ranges: dict = field(default_factory=dict)
    checked: int = 0
    failures: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    slices: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def record(self, ok: bool, case: dict, slices: tuple[str, ...] = ()) -> None:
        self.checked += 1
        for s in slices:
            self.slices[s] = self.slices.get(s, 0) + 1
        if not ok:
            self.failures.append(case)

    def skip(self, case: dict) -> None:
        self.skipped.append(case)

    def merge(self, other: VerificationReport) -> VerificationReport:
        self.checked += other.checked
        self.failures.extend(other.failures)
        self.skipped.extend(other.skipped)
        for k, v in other.slices.items():
            self.slices[k] = self.slices.get(k, 0) + v
        return self

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "ranges": _jsonable(self.ranges),
            "checked": self.checked,
            "failures": _jsonable(self.failures),
            "skipped": _jsonable(self.skipped),
            "slices": dict(sorted(self.slices.items())),
            "status": self.status,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    def summary(self) -> str:
        line = (
            f"{self.identity}: {self.status.upper()} "
            f"(checked {self.checked}, failures {len(self.failures)}, skipped {len(self.skipped)})"
        )
        lines = [line]
        for name, count in sorted(self.slices.items()):
            lines.append(f"  {name}: {count}")
        for f in self.failures[:20]:
            lines.append(f"  FAIL {_jsonable(f)}")
        if len(self.failures) > 20:
            lines.append(f"  ... {len(self.failures) - 20} more failures")
        return "\n".join(lines)
