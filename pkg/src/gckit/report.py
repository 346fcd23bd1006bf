"""Report records shared by the theorem checks and the command-line suites."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field


@dataclass
class IsoReport:
    theorem: str
    lhs: int
    rhs: int
    is_hom: bool
    injective: bool
    surjective: bool
    witness_failures: list = field(default_factory=list)

    @property
    def ok(self):
        return self.is_hom and self.injective and self.surjective and self.lhs == self.rhs \
            and not self.witness_failures

    def to_dict(self):
        return {"theorem": self.theorem, "sizes": {"lhs": self.lhs, "rhs": self.rhs},
                "is_hom": self.is_hom, "injective": self.injective, "surjective": self.surjective,
                "witness_failures": [str(w) for w in self.witness_failures]}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


PASS, FAIL, SKIP = "pass", "fail", "skipped"


@dataclass
class Check:
    suite: str
    subject: str
    status: str
    detail: str = ""
    witness: object = None

    def line(self):
        out = f"[{self.status.upper():7}] {self.suite}: {self.subject}"
        if self.detail:
            out += f" ({self.detail})"
        if self.witness is not None:
            out += f" witness={self.witness}"
        return out


@dataclass
class SuiteReport:
    suite: str
    checks: list = field(default_factory=list)
    elapsed: float = 0.0

    def counts(self):
        return {k: sum(c.status == k for c in self.checks) for k in (PASS, FAIL, SKIP)}

    @property
    def ok(self):
        return all(c.status != FAIL for c in self.checks)

    def to_dict(self):
        return {"suite": self.suite, "counts": self.counts(), "ok": self.ok,
                "checks": [asdict(c) | {"witness": None if c.witness is None else str(c.witness)}
                           for c in self.checks]}
