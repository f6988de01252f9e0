"""Command-line entry point: verify, hilbert, sample and catalog dump."""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_SEED = 42


class UsageError(Exception):
    pass


def env_seed() -> int:
    raw = os.environ.get("QFANO_SEED")
    if raw is None or raw == "":
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"QFANO_SEED must be an integer, got {raw!r}") from None


# -- catalog dump ----------------------------------------------------------------

def _lines(named) -> str:
    return "\n".join(f"{name} = {p.to_text()}" for name, p in named)


def _dump_table() -> dict[str, Callable[[], str]]:
    from .catalog import CLASS_NUMBERS, build_h, build_pi, fano_class, gl2_action, isom_data
    from .catalog.actions import H_EQ_NAMES, PERMUTATIONS
    from .catalog.pi import TRIPLES

    pi = lambda: build_pi()  # noqa: E731
    h = lambda: build_h()  # noqa: E731

    def rational(items):
        return "\n".join(f"{k} = {e.to_text()}" for k, e in items)

    def fibers():
        out = []
        for label, spec in sorted(h().fiber_data.items()):
            out.append(f"({label}) over {spec.point}")
            for i, comp in enumerate(spec.components):
                out.append(f"  component {i + 1} linear: " + ", ".join(p.to_text() for p in comp.linear))
                for q in comp.quadrics:
                    out.append(f"  component {i + 1} quadric: {q.to_text()}")
        return "\n".join(out)

    def action(target):
        act = gl2_action(target)
        return "\n".join(f"{k} -> {v.to_text()}" for k, v in act.sub.items())

    def klass(n):
        fc = fano_class(n)
        sec = fc.section_T
        out = [f"class = {n}", f"d = {fc.d}", f"base = {list(fc.base)}",
               f"ambient_PX = {list(fc.ambient_PX)}", f"cuts = {list(fc.cuts)}",
               f"cone = {fc.cone}", f"basket = {list(fc.basket)}"]
        out += [f"w({k}) = {v}" for k, v in fc.weight_table.items()]
        out += [f"T: {k} = {v.to_text()}" for k, v in sec.substitution().items()]
        out.append(f"T coordinates = {list(sec.coords)}")
        for locus in sec.loci:
            out.append(f"locus {locus.name}: " + ", ".join(f"{k} = {e.to_text()}" for k, e in locus.entries))
        return "\n".join(out)

    table: dict[str, Callable[[], str]] = {
        "pi.M": lambda: pi().M.to_text(),
        "pi.G": lambda: pi().G.to_text(),
        "pi.F": lambda: _lines((f"F{i + 1}", f) for i, f in enumerate(pi().F)),
        "pi.Fprime": lambda: _lines((f"F'{i + 1}", f) for i, f in enumerate(pi().Fprime)),
        "pi.H": lambda: _lines((f"H{i + 1}", f) for i, f in enumerate(pi().H)),
        "pi.b": lambda: pi().b.to_text(),
        "pi.generators": lambda: _lines(sorted(pi().chosen_generators.items())),
        "pi.minors": lambda: _lines((f"D{''.join(map(str, t))}", pi().minors[t]) for t in TRIPLES),
        "pi.m_coords": lambda: rational((f"m{i}{j}", e) for (i, j), e in sorted(pi().m_coords.items())),
        "pi.S": lambda: rational(pi().S_param),
        "pi.blocks": lambda: _lines(
            [(f"v{k}[{r + 1}]", getattr(pi().blocks, f"v{k}")[r]) for k in (1, 2, 3) for r in range(2)]),
        "h13.equations": lambda: _lines(zip(H_EQ_NAMES, h().equations)),
        "h13.hyperdet": lambda: h().hyperdet.to_text(),
        "h13.contractions": lambda: _lines(
            (f"{name} reading {k + 1} [{r + 1}]", pair[k][r])
            for name, pair in sorted(h().contraction_pairs.items()) for k in (0, 1) for r in (0, 1)),
        "h13.fibers": fibers,
        "isom.forward": lambda: rational(sorted(isom_data().fwd.items())),
        "isom.base": lambda: "\n".join(f"{k} = {v.to_text()}" for k, v in isom_data().base_sub.items()),
        "gl2.Pi": lambda: action("Pi"),
    }
    for f in (1, 2, 3):
        table[f"gl2.H{f}"] = lambda f=f: action(f"H{f}")
    for key in PERMUTATIONS:
        table[f"s3.{key}"] = lambda key=key: action(f"H-perm:{key}")
    for n in CLASS_NUMBERS:
        table[f"class.{n}"] = lambda n=n: klass(n)
    return dict(sorted(table.items()))


def dump_ids() -> list[str]:
    return list(_dump_table())


def dump(object_id: str) -> str:
    table = _dump_table()
    if object_id not in table:
        raise UsageError(f"unknown object id {object_id!r}; known ids: {', '.join(table)}")
    return table[object_id]() + "\n"


# -- subcommands ------------------------------------------------------------------

def cmd_verify(args) -> int:
    from .catalog import CLASS_NUMBERS
    from .report import RunConfig, emit, run
    from .verifier import UnknownCheck

    if args.only and args.all:
        raise UsageError("--all and --only are exclusive")
    only = tuple(x for item in args.only for x in item.split(",") if x) if args.only else None
    classes = tuple(args.classes) if args.classes is not None else tuple(CLASS_NUMBERS)
    bad = [c for c in classes if c not in CLASS_NUMBERS]
    if bad:
        raise UsageError(f"unknown class {bad[0]}; known: {list(CLASS_NUMBERS)}")
    seed = args.seed if args.seed is not None else env_seed()
    try:
        cfg = RunConfig(seed=seed, samples=args.samples, only=only, classes=classes,
                        format="json" if args.json else "text", parallelism=args.jobs,
                        timing=args.timing)
        report = run(cfg)
    except UnknownCheck as exc:
        raise UsageError(f"unknown check id {exc.args[0]!r}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(emit(report))
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_hilbert(args) -> int:
    from .catalog import CLASS_NUMBERS, fano_class
    from .graded import class_summary
    from .report import jsonable

    if args.klass not in CLASS_NUMBERS:
        raise UsageError(f"unknown class {args.klass}; known: {list(CLASS_NUMBERS)}")
    if args.order is not None and args.order < 0:
        raise UsageError("--order must be non-negative")
    summary = jsonable(class_summary(fano_class(args.klass), args.order))
    if args.json:
        sys.stdout.write(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    else:
        for key in ("class", "delta", "k", "equation_degrees", "middle_degrees", "ambient_PX",
                    "cuts", "cone", "numerator", "palindromic_sign", "palindromic_degree",
                    "expansion", "implied_generators", "implied_generators_match",
                    "codimension", "genus"):
            if key in summary:
                sys.stdout.write(f"{key}: {summary[key]}\n")
        adj = summary["adjunction"]
        sys.stdout.write("adjunction: " + ", ".join(f"{k}={adj[k]}" for k in sorted(adj)) + "\n")
    ok = summary["adjunction"]["status"] == "pass" and summary.get("numerator") is not None
    return EXIT_OK if ok else EXIT_FAIL


def cmd_sample(args) -> int:
    from .report import jsonable
    from .sampler import SampleConfig, SamplingError, sample

    if args.bound < 0:
        raise UsageError("--bound must be non-negative")
    seed = args.seed if args.seed is not None else env_seed()
    cfg = SampleConfig(seed=seed, coord_bound=args.bound)
    try:
        pt = sample(args.target, cfg)
    except SamplingError as exc:
        sys.stderr.write(f"sampling failed: {exc}\n")
        return EXIT_FAIL
    if args.json:
        sys.stdout.write(json.dumps({"target": args.target, "seed": seed, "bound": args.bound,
                                     "point": jsonable(pt)}, indent=2) + "\n")
    else:
        for k, v in pt.items():
            sys.stdout.write(f"{k} = {v}\n")
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        sys.stdout.write("\n".join(dump_ids()) + "\n")
        return EXIT_OK
    if not args.object_id:
        raise UsageError("catalog dump needs an object id")
    sys.stdout.write(dump(args.object_id))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qfano", description="Exact verification of the Fano constructions catalog.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run the check suite")
    v.add_argument("--all", action="store_true", help="run every check (the default)")
    v.add_argument("--only", nargs="+", metavar="ID",
                   help="check ids, comma or space separated; a trailing * selects a prefix")
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--seed", type=int, default=None, help="master seed (default: QFANO_SEED or 42)")
    v.add_argument("--classes", type=int, nargs="*", default=None,
                   help="classes whose graded summary is attached (default: all)")
    v.add_argument("--jobs", type=int, default=1, help="worker processes")
    v.add_argument("--json", action="store_true")
    v.add_argument("--timing", action="store_true", help="include elapsed times (breaks byte equality)")
    v.set_defaults(func=cmd_verify)

    h = sub.add_parser("hilbert", help="graded data of one class")
    h.add_argument("--class", dest="klass", type=int, required=True)
    h.add_argument("--order", type=int, default=None)
    h.add_argument("--json", action="store_true")
    h.set_defaults(func=cmd_hilbert)

    s = sub.add_parser("sample", help="draw one exact rational point")
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--bound", type=int, default=7)
    s.add_argument("--target", choices=("G", "Pi", "S", "H13"), required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_sample)

    c = sub.add_parser("catalog", help="print stored objects in canonical text")
    c.add_argument("action", choices=("dump", "list"))
    c.add_argument("object_id", nargs="?")
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"qfano: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
