"""Command-line front end.

Exit status: 0 when the command ran (verdicts are in the report), 1 on usage,
parse or library errors, 2 when an internal invariant check fails.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import grid as gridmod
from .closure import is_generated_by, smallest_closed_preorder
from .core import PreorderedSpace
from .errors import InvariantBreach, PreorderLabError
from .io import dump_space, load_grid, load_relation, load_space, parse_subset
from .lab import SearchConfig, counterexample_search, example_1_1
from .props import property_battery
from .qpmetric import check_admissible, check_strict, is_albert, synthesize_qpm
from .separation import check_continuous, check_isotone, separate_monotone

MASK_KEYS = {"A", "B", "U", "V", "O", "set", "hull", "closure", "escape", "K", "initial", "M"}


def _frac(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _names(space: PreorderedSpace | None, m: int) -> list[str]:
    return [space.names[x] for x in range(space.n) if (m >> x) & 1]


def _render(space: PreorderedSpace | None, key: str | None, v: Any) -> Any:
    """Witness payloads with point masks and indices turned into names."""
    if isinstance(v, dict):
        return {k: _render(space, k, w) for k, w in v.items()}
    if isinstance(v, Fraction):
        return _frac(v)
    if space is not None and isinstance(v, int) and not isinstance(v, bool):
        if key in MASK_KEYS:
            return _names(space, v)
        if key == "point":
            return space.names[v]
    if isinstance(v, (tuple, list)):
        if space is not None and key in ("pair", "points") and all(isinstance(i, int) for i in v):
            return [space.names[i] for i in v]
        return [_render(space, None, w) for w in v]
    return v


@dataclass
class RunReport:
    command: list[str]
    checks: list[dict] = field(default_factory=list)
    values: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    error: str | None = None

    def check(self, name: str, verdict: bool, witness=None) -> None:
        entry = {"name": name, "verdict": bool(verdict)}
        if witness is not None:
            entry["witness"] = witness
        self.checks.append(entry)

    def to_dict(self, timings: bool) -> dict:
        d = {"command": self.command, "checks": self.checks, "values": self.values}
        if self.error:
            d["error"] = self.error
        if timings:
            d["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return d

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True, ensure_ascii=False)

    def to_text(self, timings: bool = False) -> str:
        lines = ["command: " + " ".join(self.command)]
        for c in self.checks:
            line = f"{c['name']}: {'true' if c['verdict'] else 'false'}"
            if "witness" in c:
                line += "  witness: " + json.dumps(c["witness"], sort_keys=True, ensure_ascii=False)
            lines.append(line)
        for k, v in self.values.items():
            lines.append(f"{k}: {v if isinstance(v, str) else json.dumps(v, sort_keys=True, ensure_ascii=False)}")
        if self.error:
            lines.append("error: " + self.error)
        if timings:
            for k, v in self.timings.items():
                lines.append(f"time.{k}: {v:.6f}s")
        return "\n".join(lines)


def _add_reports(report: RunReport, space, reps) -> None:
    for r in reps:
        report.check(r.name, r.verdict, _render(space, None, r.witness) if r.witness is not None else None)


def cmd_check(args, report: RunReport) -> None:
    space = load_space(args.file)
    _add_reports(report, space, property_battery(space))


def cmd_separate(args, report: RunReport) -> None:
    space = load_space(args.file)
    a, b = parse_subset(space, args.A), parse_subset(space, args.B)
    f = separate_monotone(space, a, b)
    report.values["f"] = {space.names[x]: _frac(f[x]) for x in range(space.n)}
    report.check("isotone", check_isotone(space, f))
    report.check("continuous", check_continuous(space, f))
    report.check("boundary", all(f[x] == 0 for x in range(space.n) if (a >> x) & 1)
                 and all(f[x] == 1 for x in range(space.n) if (b >> x) & 1))


def cmd_qpm(args, report: RunReport) -> None:
    space = load_space(args.file)
    p = synthesize_qpm(space)
    report.values["qpm"] = [[_frac(v) for v in row] for row in p.table]
    reps = [check_admissible(space, p)]
    if args.strict:
        reps.append(check_strict(space, p))
    _add_reports(report, space, reps)
    report.check("albert", is_albert(p))
    if args.export:
        dump_space(space, args.export, qpm=p)


def cmd_closure(args, report: RunReport) -> None:
    space = load_space(args.file)
    rel = load_relation(space, args.relation)
    closed = smallest_closed_preorder(space.top, rel)
    report.values["closed_preorder"] = [[space.names[x], space.names[y]] for x, y in closed.pairs()]
    if rel.issubset(space.order):
        report.check("generated", is_generated_by(space, rel))
    else:
        report.check("generated", False, {"reason": "relation not contained in the order"})


def _window(text: str) -> tuple[int, int, int, int]:
    try:
        vals = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad window {text!r}") from None
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("window is t0,x0,t1,x1")
    return vals


def _site(s) -> str:
    return f"{s[0]},{s[1]}"


def _grid_witness(w: Any) -> Any:
    if isinstance(w, dict):
        return {k: _grid_witness(v) for k, v in w.items()}
    if isinstance(w, tuple) and len(w) == 2 and all(isinstance(s, tuple) for s in w):
        return [_site(w[0]), _site(w[1])]
    if isinstance(w, tuple) and len(w) == 2:
        return _site(w)
    if isinstance(w, tuple):
        return list(w)
    return w


def cmd_grid(args, report: RunReport) -> None:
    g = load_grid(args.gridfile)
    if args.action == "ladder":
        lad = gridmod.causality_ladder(g, args.k_max, args.windows, args.seed)
        report.values["rung"] = lad.rung
        report.values["stabilized"] = lad.stabilized
        for name, ok in lad.checks.items():
            report.check(name, ok, _grid_witness(lad.witnesses[name]) if name in lad.witnesses else None)
        report.timings.update(lad.timing)
    elif args.action == "hull":
        h = gridmod.causal_hull(g, args.window)
        report.values["hull_size"] = int(h.sum())
        report.values["hull"] = [_site((int(t), int(x))) for t, x in zip(*h.nonzero())]
    elif args.action == "export":
        space = gridmod.export_finite_space(g, args.window)
        text = dump_space(space, args.out)
        report.values["points"] = space.n
        if not args.out:
            report.values["instance"] = json.loads(text)
    else:
        stats = gridmod.bench(g, args.rows, args.seed)
        report.values["rows"] = stats["rows"]
        report.timings["rows"] = stats["seconds"]
        report.timings["per_row"] = stats["seconds"] / max(stats["rows"], 1)


def cmd_search(args, report: RunReport) -> None:
    cfg = SearchConfig(
        predicate=args.predicate,
        n_min=args.n_min,
        n_max=args.n,
        mode="random" if args.random else "exhaustive",
        seed=args.seed,
        cap=args.cap,
    )
    t0 = time.perf_counter()
    res = counterexample_search(cfg)
    report.timings["search"] = time.perf_counter() - t0
    report.values["predicate"] = res.predicate
    report.values["scanned"] = res.scanned
    report.values["found"] = res.found
    if res.found:
        report.values["witness"] = json.loads(dump_space(res.witness))
        _add_reports(report, res.witness, res.reports)


def cmd_ex11(args, report: RunReport) -> None:
    t0 = time.perf_counter()
    d = example_1_1(args.n, Fraction(args.eps))
    report.timings["ex11"] = time.perf_counter() - t0
    for k in ("n", "ball_size", "hull_size", "lower_half", "upper_half"):
        report.values[k] = getattr(d, k)
    for k in ("eps", "hull_min", "hull_max", "diameter"):
        report.values[k] = _frac(getattr(d, k))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="preorderlab", description="Finite topological preordered spaces and causal grids.")
    p.add_argument("--json", action="store_true", help="structured JSON report")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("check", help="property battery of a space file")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("separate", help="continuous isotone separating function")
    s.add_argument("file")
    s.add_argument("--A", required=True, help="closed decreasing set, comma-separated names")
    s.add_argument("--B", required=True, help="closed increasing set, comma-separated names")
    s.set_defaults(func=cmd_separate)

    s = sub.add_parser("qpm", help="synthesize and check a quasi-pseudo-metric")
    s.add_argument("file")
    s.add_argument("--strict", action="store_true")
    s.add_argument("--export", metavar="PATH", help="write the instance with its metric")
    s.set_defaults(func=cmd_qpm)

    s = sub.add_parser("closure", help="smallest closed preorder of a relation")
    s.add_argument("file")
    s.add_argument("relation")
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("grid", help="causal grid analysis")
    s.add_argument("gridfile")
    gsub = s.add_subparsers(dest="action", required=True, parser_class=_Parser)
    a = gsub.add_parser("ladder")
    a.add_argument("--k-max", type=int, default=8)
    a.add_argument("--windows", type=int, default=128)
    a.add_argument("--seed", type=int, default=0)
    a = gsub.add_parser("hull")
    a.add_argument("window", type=_window)
    a = gsub.add_parser("export")
    a.add_argument("window", type=_window)
    a.add_argument("--out")
    a = gsub.add_parser("bench")
    a.add_argument("--rows", type=int, default=1024)
    a.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_grid)

    s = sub.add_parser("search", help="counterexample search")
    s.add_argument("predicate")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", default=True)
    mode.add_argument("--random", action="store_true")
    s.add_argument("--n", type=int, default=2, help="largest size")
    s.add_argument("--n-min", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cap", type=int, default=100_000)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("ex11", help="convex-hull blow-up diagnostic")
    s.add_argument("--n", type=int, default=10_000)
    s.add_argument("--eps", type=str, default="0.01")
    s.set_defaults(func=cmd_ex11)
    return p


def _message(exc: Exception) -> str:
    # KeyError subclasses would otherwise repr-quote their message
    return str(exc.args[0]) if len(exc.args) == 1 else str(exc)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    report = RunReport([a for a in argv if a not in ("--json", "--timings")])
    code = 0
    t0 = time.perf_counter()
    try:
        args.func(args, report)
    except InvariantBreach as exc:
        report.error = f"InvariantBreach: {_message(exc)}"
        code = 2
    except PreorderLabError as exc:
        report.error = f"{type(exc).__name__}: {_message(exc)}"
        code = 1
    except (ValueError, ZeroDivisionError) as exc:
        report.error = f"BadArguments: {exc}"
        code = 1
    report.timings["total"] = time.perf_counter() - t0
    # bench is a measurement, so its timings are always shown
    timings = args.timings or getattr(args, "action", None) == "bench"
    out = report.to_json(timings) if args.json else report.to_text(timings)
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
