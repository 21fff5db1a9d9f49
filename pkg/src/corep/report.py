"""Pass/fail reports shared by the verifiers."""
from __future__ import annotations

from dataclasses import dataclass, field


class StructuralError(ValueError):
    """Malformed input (bad index, wrong shape, unparsable data).

    Kept distinct from axiom failures, which are reported rather than raised.
    """


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class Report:
    title: str = ""
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(ok), detail))
        return ok

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.ok), None)

    def lines(self) -> list[str]:
        out = [self.title] if self.title else []
        for c in self.checks:
            tag = "PASS" if c.ok else "FAIL"
            out.append(f"[{tag}] {c.name}" + (f": {c.detail}" if c.detail else ""))
        return out

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks],
        }
