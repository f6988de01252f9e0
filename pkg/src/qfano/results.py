"""Outcome record shared by every check."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
STATUSES = (PASS, FAIL, SKIPPED)


@dataclass(frozen=True)
class CheckResult:
    id: str
    status: str
    witness: str | None = None
    elapsed: float = 0.0
    samples_used: int = 0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.status == FAIL and not self.witness:
            raise ValueError("a failing result needs a witness")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self, timing: bool = False) -> dict:
        out = {"id": self.id, "status": self.status, "witness": self.witness,
               "samples_used": self.samples_used, "details": self.details}
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


def outcome(check_id: str, failures: list[str], samples: int = 0, details: dict | None = None) -> CheckResult:
    """PASS when ``failures`` is empty, else FAIL carrying the first few witnesses."""
    if failures:
        shown = failures[:5]
        more = f" (+{len(failures) - 5} more)" if len(failures) > 5 else ""
        return CheckResult(check_id, FAIL, "; ".join(shown) + more, samples_used=samples,
                           details=details or {})
    return CheckResult(check_id, PASS, None, samples_used=samples, details=details or {})
