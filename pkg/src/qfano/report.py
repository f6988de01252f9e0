"""Report assembly and its deterministic text and JSON renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import metadata

from .poly import Polynomial, PolyMatrix
from .results import FAIL, PASS, SKIPPED, CheckResult

SCHEMA_VERSION = 1


def tool_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0.0.0"


def jsonable(obj):
    """Convert catalog objects to plain JSON values; polynomials use canonical text."""
    if isinstance(obj, Polynomial):
        return obj.to_text()
    if isinstance(obj, PolyMatrix):
        return [[e.to_text() for e in row] for row in obj.tolist()]
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, tuple) else ",".join(map(str, k)): jsonable(v)
                for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    return obj


@dataclass(frozen=True)
class RunConfig:
    seed: int
    samples: int
    only: tuple[str, ...] | None = None
    classes: tuple[int, ...] = ()
    format: str = "text"
    parallelism: int = 1
    timing: bool = False

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.parallelism < 1:
            raise ValueError("parallelism must be at least 1")
        if self.format not in ("text", "json"):
            raise ValueError(f"unknown format {self.format!r}")

    def echo(self) -> dict:
        return {"seed": self.seed, "samples": self.samples,
                "only": list(self.only) if self.only else None,
                "classes": list(self.classes), "parallelism": self.parallelism}


@dataclass(frozen=True)
class Report:
    version: str
    config: RunConfig
    results: tuple[CheckResult, ...]
    classes: tuple[dict, ...] = ()
    elapsed: float = 0.0
    groups: dict = field(default_factory=dict)
    claims: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    def counts(self) -> dict:
        out = {"total": len(self.results)}
        for s in (PASS, FAIL, SKIPPED):
            out[s] = sum(r.status == s for r in self.results)
        return out

    def to_dict(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "tool": "qfano",
            "version": self.version,
            "config": self.config.echo(),
            "summary": self.counts(),
            "results": [jsonable(r.to_dict(self.config.timing)) for r in self.results],
            "classes": [jsonable(c) for c in self.classes],
        }
        if self.config.timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


def class_digest(summary: dict) -> dict:
    """The per-class fields carried in a verify report."""
    keys = ("class", "delta", "k", "numerator", "palindromic_sign", "genus",
            "implied_generators_match", "codimension")
    out = {k: summary.get(k) for k in keys}
    out["adjunction"] = summary["adjunction"]["status"]
    return out


def run(config: RunConfig) -> Report:
    import time

    from .catalog import fano_class
    from .graded import class_summary
    from .verifier import CHECKS, resolve, run_checks

    ids = resolve(config.only)  # raises before any work on a bad id
    for n in config.classes:
        fano_class(n)
    start = time.perf_counter()
    results = run_checks(ids, config.seed, config.samples, config.parallelism)
    classes = tuple(class_digest(class_summary(fano_class(n))) for n in config.classes)
    return Report(tool_version(), config, tuple(results), classes,
                  time.perf_counter() - start,
                  groups={i: CHECKS[i].group for i in ids},
                  claims={i: CHECKS[i].claim for i in ids})


def emit_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"


GROUP_ORDER = ("15-fold identities", "15-fold singularities", "13-fold",
               "threefold sections", "graded data")


def emit_text(report: Report) -> str:
    cfg = report.config
    lines = [f"qfano {report.version}  seed={cfg.seed} samples={cfg.samples}"]
    by_group: dict[str, list[CheckResult]] = {}
    for r in report.results:
        by_group.setdefault(report.groups.get(r.id, "other"), []).append(r)
    order = [g for g in GROUP_ORDER if g in by_group] + sorted(set(by_group) - set(GROUP_ORDER))
    for g in order:
        lines.append("")
        lines.append(f"== {g} ==")
        for r in by_group[g]:
            tail = f"  [{r.elapsed:.2f}s]" if cfg.timing else ""
            samples = f"  ({r.samples_used} samples)" if r.samples_used else ""
            lines.append(f"{r.status.upper():7} {r.id}{samples}{tail}")
            if r.id in report.claims:
                lines.append(f"        {report.claims[r.id]}")
            if r.witness:
                lines.append(f"        witness: {r.witness}")
    if report.classes:
        lines.append("")
        lines.append("== class summaries ==")
        for c in report.classes:
            lines.append(f"No.{c['class']}: delta={c['delta']} k={c['k']} adjunction={c['adjunction']} "
                         f"genus={c['genus']} numerator={c['numerator']}")
    n = report.counts()
    lines.append("")
    lines.append(f"{n['total']} checks: {n[PASS]} pass, {n[FAIL]} fail, {n[SKIPPED]} skipped")
    if cfg.timing:
        lines.append(f"elapsed {report.elapsed:.2f}s")
    return "\n".join(lines) + "\n"


def emit(report: Report, fmt: str | None = None) -> str:
    return emit_json(report) if (fmt or report.config.format) == "json" else emit_text(report)


def report_from_dict(data: dict) -> Report:
    """Inverse of ``to_dict`` for the fields a report carries."""
    c = data["config"]
    cfg = RunConfig(seed=c["seed"], samples=c["samples"],
                    only=tuple(c["only"]) if c["only"] else None,
                    classes=tuple(c["classes"]), format="json",
                    parallelism=c["parallelism"], timing="elapsed" in data)
    results = tuple(CheckResult(r["id"], r["status"], r["witness"], r.get("elapsed", 0.0),
                                r["samples_used"], r["details"]) for r in data["results"])
    return Report(data["version"], cfg, results, tuple(data["classes"]), data.get("elapsed", 0.0))
