"""Structured results for randomized and exhaustive verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class VerifyReport:
    suite: str
    seed: int
    samples: int = 0
    passed: int = 0
    failed: int = 0
    vacuous: int = 0
    lines: list[str] = field(default_factory=list)
    witnesses: list[tuple[str, str]] = field(default_factory=list)  # (label, config text)
    stats: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "PASS" if self.failed == 0 else "FAIL"

    def record(self, ok: bool, line: str, witness: str | None = None, label: str = ""):
        self.samples += 1
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if witness is not None:
                self.witnesses.append((label or f"sample{self.samples}", witness))
        self.lines.append(("ok   " if ok else "FAIL ") + line)

    def note(self, line: str):
        self.lines.append("note " + line)

    def to_text(self) -> str:
        head = [
            f"suite {self.suite}",
            f"seed {self.seed}",
            f"samples {self.samples} passed {self.passed} failed {self.failed} vacuous {self.vacuous}",
            f"status {self.status}",
        ]
        for k in sorted(self.stats):
            head.append(f"stat {k} {self.stats[k]}")
        return "\n".join(head + self.lines) + "\n"
