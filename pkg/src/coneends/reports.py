"""Small pass/fail report containers shared by verifiers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class ReportItem:
    name: str
    passed: bool
    value: float | None = None
    detail: str = ""

    def to_dict(self):
        return {
            "name": self.name,
            "passed": bool(self.passed),
            "value": None if self.value is None else float(self.value),
            "detail": self.detail,
        }


@dataclass
class Report:
    title: str
    items: list = field(default_factory=list)

    def add(self, name, passed, value=None, detail=""):
        self.items.append(ReportItem(name, bool(passed), value, detail))

    def __getitem__(self, name: str) -> ReportItem:
        for item in self.items:
            if item.name == name:
                return item
        raise KeyError(name)

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    def to_dict(self):
        return {
            "title": self.title,
            "passed": self.passed,
            "items": [item.to_dict() for item in self.items],
        }

    def summary(self) -> str:
        lines = [f"[{'PASS' if self.passed else 'FAIL'}] {self.title}"]
        for it in self.items:
            mark = "ok " if it.passed else "FAIL"
            val = "" if it.value is None else f" value={it.value:.6g}"
            det = f" ({it.detail})" if it.detail else ""
            lines.append(f"  [{mark}] {it.name}{val}{det}")
        return "\n".join(lines)
