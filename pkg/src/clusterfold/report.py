from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of an exhaustive check; an empty ``findings`` list means pass."""

    name: str
    checked: int = 0
    findings: list[str] = field(default_factory=list)
    stats: dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.findings

    def fail(self, message: str) -> None:
        self.findings.append(message)

    def extend(self, other: "Report") -> None:
        self.checked += other.checked
        self.findings.extend(f"{other.name}: {f}" for f in other.findings)

    def summary(self) -> str:
        status = "PASS" if self.ok else f"FAIL ({len(self.findings)} findings)"
        extra = "".join(f" {k}={v}" for k, v in self.stats.items())
        return f"{self.name}: {status} checked={self.checked}{extra}"
