"""Outcome records shared by the structural checks and the reports."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"
SKIPPED = "skipped"
UNEXERCISED = "unexercised"


@dataclass(frozen=True)
class CheckResult:
    id: str
    status: str
    statement: str = ""
    precondition: str = ""
    detail: str = ""
    failures: tuple = field(default=())

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "statement": self.statement,
            "precondition": self.precondition,
            "detail": self.detail,
            "failures": [str(f) for f in self.failures],
        }


def verdict(id, ok, statement="", precondition="", detail="", failures=()):
    return CheckResult(id, PASS if ok else FAIL, statement, precondition, detail, tuple(failures))


def not_applicable(id, statement="", precondition="", detail=""):
    return CheckResult(id, NOT_APPLICABLE, statement, precondition, detail)
