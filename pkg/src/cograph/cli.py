"""Command-line entry point: ``cograph <command> [options]``.

Exit status: 0 when every check passes, 1 on a failed verification, 2 on a
usage or input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import difference, enumeration, groups, intersection, pl, representations, sums, todd_coxeter, wheels
from .core import Cograph, CographError, all_pairs, from_key, parse, serialize

SCHEMA = 1


class UsageError(CographError):
    pass


@dataclass
class Checks:
    run: int = 0
    failed: list[str] = field(default_factory=list)

    def check(self, ok: bool, what: str) -> None:
        self.run += 1
        if not ok:
            self.failed.append(what)

    def summary(self) -> dict:
        return {"run": self.run, "passed": self.run - len(self.failed), "failures": self.failed}


@dataclass
class Context:
    args: argparse.Namespace
    checks: Checks
    lines: list[str] = field(default_factory=list)
    payload: object = None

    @property
    def verify(self) -> bool:
        return self.args.verify

    def say(self, line: str) -> None:
        self.lines.append(line)


# -- input helpers --------------------------------------------------------


def _pattern(text: str) -> Cograph:
    return parse(text)


def _point(tok: str) -> int:
    return int(tok, 16)


def parse_edge_values(text: str, kind: Callable = int) -> dict:
    """``01=3 02=4 12=5`` (space or ';' separated); values may be ``{1,2}`` sets."""
    out = {}
    for tok in text.replace(";", " ").split():
        if "=" not in tok:
            raise UsageError(f"expected ij=value, got {tok!r}")
        key, val = tok.split("=", 1)
        if len(key) != 2:
            raise UsageError(f"edge {key!r} must be two hex digits")
        p, q = sorted((_point(key[0]), _point(key[1])))
        if val.startswith("{"):
            inner = val.strip("{}")
            out[(p, q)] = frozenset(int(x) for x in inner.split(",") if x)
        else:
            out[(p, q)] = kind(val)
    return out


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.replace(" ", "").split(",") if x]


# -- commands -------------------------------------------------------------


def cmd_count(ctx: Context) -> None:
    a = ctx.args
    rows = []
    for n in range(a.points, (a.upto or a.points) + 1):
        c = enumeration.count_cographs(n, workers=a.threads)
        rows.append({"n": n, "count": c})
        ctx.say(str(c) if a.upto is None else f"{n} {c}")
        if ctx.verify and n <= 5:
            ctx.checks.check(len(enumeration.enumerate_cographs(n)) == c, f"enumeration agrees with count at n={n}")
    ctx.payload = rows


def cmd_enumerate(ctx: Context) -> None:
    keys = enumeration.enumerate_cographs(ctx.args.points, force=ctx.args.force)
    out = [serialize(from_key(k)) for k in keys]
    ctx.lines.extend(out)
    ctx.payload = out
    if ctx.verify:
        ctx.checks.check(len(keys) == enumeration.count_cographs(ctx.args.points), "enumeration agrees with count")


def cmd_sum(ctx: Context) -> None:
    a = ctx.args
    if a.action == "catalogue":
        entries = sums.enumerate_sum_cographs(a.points, force=a.force)
        ctx.lines.extend(e.line() for e in entries)
        ctx.payload = [{"cograph": serialize(e.cograph), **e.verdict.to_json()} for e in entries]
        if ctx.verify:
            for e in entries:
                ctx.checks.check(sums.verify_sum_witness(e.cograph, e.verdict.witness), f"witness of {serialize(e.cograph)}")
    elif a.action == "classify":
        c = _pattern(a.pattern)
        v = sums.classify_sum(c)
        ctx.say(f"outcome={v.outcome.value}")
        if v.witness:
            ctx.say(f"group={v.witness.group_name} witness={v.witness.format_values()}")
        for r in v.torsion_relations:
            ctx.say(f"torsion {r.describe()}")
        for p in v.forced_point_equalities:
            ctx.say(f"forced point equality {p[0]}={p[1]}")
        for p, q in v.forced_edge_equalities:
            ctx.say(f"forced edge equality {p}={q}")
        for f in sums.detect_obstructions(c):
            ctx.say(f"finding {f.kind} points={list(f.points)}")
        ctx.payload = v.to_json()
        if ctx.verify and v.witness:
            ctx.checks.check(sums.verify_sum_witness(c, v.witness), "witness reproduces the pattern")
    elif a.action == "pattern":
        c = sums.sum_pattern(_ints(a.pattern), a.modulus)
        ctx.say(serialize(c))
        ctx.payload = serialize(c)
    else:
        raise UsageError(f"unknown sum action {a.action!r}")


def _wheel_line(r: wheels.WheelReport) -> str:
    terms = ",".join(str(t) for t in r.display_terms())
    return f"n={r.n} d={r.d} t={r.t} h={r.h} group={r.group_name} terms={terms}"


def cmd_wheel(ctx: Context) -> None:
    a = ctx.args
    reports = [wheels.wheel_build(n) for n in range(a.n, (a.upto or a.n) + 1)]
    ctx.lines.extend(_wheel_line(r) for r in reports)
    ctx.payload = [r.to_json() for r in reports]
    if ctx.verify:
        for r in reports:
            inv = wheels.closing_invariants(r.n)
            ctx.checks.check(inv[-1] == r.t, f"torsion of the closing matrix at n={r.n}")


def cmd_diff(ctx: Context) -> None:
    a = ctx.args
    if a.action == "catalogue":
        entries = difference.enumerate_difference_cographs(a.points, workers=a.threads)
        ctx.lines.extend(e.line() for e in entries)
        ctx.payload = [
            {"cograph": serialize(e.cograph), "witness": e.witness.format(), "motifs": e.census.format()}
            for e in entries
        ]
        if ctx.verify:
            for e in entries:
                ctx.checks.check(difference.pattern_of(e.witness) == e.cograph, f"witness of {serialize(e.cograph)}")
    elif a.action == "realize":
        c = _pattern(a.pattern)
        v = difference.realize_difference(c)
        ctx.say(f"kind={v.kind}" + (f" witness={v.witness.format()}" if v.witness else ""))
        for f in difference.detect_diff_torsion_forcers(c):
            ctx.say(f"finding {f.kind} points={list(f.points)}")
        ctx.payload = {"kind": v.kind, "witness": v.witness.format() if v.witness else None}
        if ctx.verify and v.witness:
            ctx.checks.check(difference.pattern_of(v.witness) == c, "witness reproduces the pattern")
    else:
        raise UsageError(f"unknown diff action {a.action!r}")


def _isect_line(e: intersection.IsectCatalogueEntry) -> str:
    edges = " ".join(f"{p}{q}={intersection.format_set(s)}" for (p, q), s in sorted(e.edges.items()))
    pts = " ".join(intersection.format_set(s) for s in e.points)
    return f"{serialize(e.cograph)};edges={edges};points={pts}"


def cmd_isect(ctx: Context) -> None:
    a = ctx.args
    if a.action == "catalogue":
        entries = intersection.enumerate_intersection_cographs(a.points)
        ctx.lines.extend(_isect_line(e) for e in entries)
        ctx.payload = [_isect_line(e) for e in entries]
        if ctx.verify:
            for e in entries:
                ok = all(e.points[p] & e.points[q] == e.edges[(p, q)] for p, q in all_pairs(e.cograph.n))
                ctx.checks.check(ok, f"point sets of {serialize(e.cograph)}")
    elif a.action == "check":
        c = _pattern(a.pattern)
        rep = intersection.represent_intersection(c) if c.n <= 4 else None
        findings = intersection.find_forbidden(c)
        ctx.say("representable=" + ("unknown" if c.n > 4 else str(rep is not None).lower()))
        for f in findings:
            ctx.say(f"finding {f.kind} classes={list(f.classes)}")
        ctx.payload = {"representable": None if c.n > 4 else rep is not None, "findings": [f.kind for f in findings]}
    elif a.action == "uie":
        edges = parse_edge_values(a.pattern)
        pts = intersection.uie_construct(edges, labels=a.labels)
        ctx.lines.extend(intersection.format_set(s) for s in pts)
        ctx.payload = [sorted(s) for s in pts]
    else:
        raise UsageError(f"unknown isect action {a.action!r}")


def cmd_represent(ctx: Context) -> None:
    a = ctx.args
    vals = _ints(a.values) if a.values else None
    if a.kind == "inner":
        r = representations.inner_product_represent(_pattern(a.pattern), vals)
        for k, v in enumerate(r.vectors):
            ctx.say(f"{k}: (" + ", ".join(str(x) for x in v) + ")")
        ctx.payload = [[str(x) for x in v] for v in r.vectors]
    elif a.kind == "poly":
        r = representations.polynomial_represent(_pattern(a.pattern), vals)
        ctx.say(f"scale={r.scale}")
        ctx.say(f"f={r.poly!r}")
        ctx.payload = {"scale": r.scale, "coefficients": [[i, j, v] for (i, j), v in sorted(r.poly.coeffs.items())]}
    elif a.kind == "sum-points":
        labels = representations.sum_prelabel_points(parse_edge_values(a.pattern), a.modulus)
        ctx.say(",".join(map(str, labels)))
        ctx.payload = labels
    elif a.kind == "distance-points":
        r = representations.distance_prelabel_points(parse_edge_values(a.pattern))
        ctx.say(",".join(map(str, r.labels)) if r.realizable else f"NotRealizable: {r.violation}")
        ctx.payload = {"labels": list(r.labels) if r.labels else None, "violation": r.violation}
    else:
        raise UsageError(f"unknown representation {a.kind!r}")


def cmd_pl(ctx: Context) -> None:
    a = ctx.args
    if a.action == "validate":
        c = _pattern(a.pattern)
        chk = pl.is_pl(c)
        ctx.say("pl=" + str(chk.ok).lower() + ("" if chk.ok else f" rule={chk.rule} witness={list(chk.witness)}"))
        ctx.payload = {"pl": chk.ok, "rule": chk.rule, "witness": list(chk.witness)}
        if ctx.verify:
            ctx.checks.check(chk.ok == pl.pairwise_intersection_check(c) == pl.blocks_complete(c), "block characterizations agree")
    elif a.action == "catalogue":
        spaces = pl.enumerate_linear_spaces(a.points, force=a.force)
        ctx.lines.extend(s.serialize() for s in spaces)
        ctx.payload = [s.serialize() for s in spaces]
        if ctx.verify:
            for s in spaces:
                ctx.checks.check(pl.to_linear_space(pl.from_linear_space(s)) == s, f"round trip of {s.serialize()}")
    elif a.action == "minimal":
        spaces = pl.minimal_spaces(a.points, reading=a.reading, force=a.force)
        ctx.lines.extend(s.serialize() for s in spaces)
        ctx.payload = [s.serialize() for s in spaces]
    elif a.action == "coordinatize":
        c = _pattern(a.pattern)
        co = pl.coordinatize(c, a.x, a.y, a.o)
        ctx.say(f"X={co.X} Y={co.Y} O={co.O}")
        for p, lab in co.format().items():
            ctx.say(f"{p}: {lab}")
        ctx.payload = {"X": co.X, "Y": co.Y, "O": co.O, "labels": {str(p): list(v) for p, v in co.labels.items()}}
    elif a.action == "compose":
        left, right = _pattern(a.pattern), _pattern(a.other)
        out = pl.pl_sum(left, right) if a.op == "sum" else pl.pl_wedge(left, right)
        ctx.say(serialize(out))
        ctx.payload = serialize(out)
        if ctx.verify:
            ctx.checks.check(bool(pl.is_pl(out)), "composition is PL")
    else:
        raise UsageError(f"unknown pl action {a.action!r}")


def cmd_tc(ctx: Context) -> None:
    a = ctx.args
    r = todd_coxeter.chain_group_enumeration(a.p, a.q, a.n, strategy=a.strategy)
    ctx.say(f"index={r.index} order={r.order}")
    if a.table:
        ctx.say(r.table.format())
    ctx.payload = {"index": r.index, "order": r.order, "subgroup_order": r.subgroup_order}
    if ctx.verify:
        try:
            ctx.checks.check(todd_coxeter.chain_group_order(a.p, a.q, a.n).order == r.order, "order formula")
        except todd_coxeter.ExcludedChainGroup:
            ctx.say("excluded case: P and Q commute")
        except CographError as exc:
            ctx.say(f"formula not applicable: {exc}")


def cmd_chains(ctx: Context) -> None:
    g = groups.group_by_name(ctx.args.group)
    rows = []
    for P, Q in groups.chain_pairs(g):
        k = groups.chain_cycle_length(g, P, Q)
        rows.append({"P": str(g.elements[P]), "Q": str(g.elements[Q]), "cycle": k})
        ctx.say(f"P={g.elements[P]} Q={g.elements[Q]} cycle={k}")
        if ctx.verify:
            ctx.checks.check(k == groups.orbit_cycle_length(g, P, Q), f"cycle length of ({P},{Q})")
    ctx.payload = rows


# -- regeneration ---------------------------------------------------------


def _catalogues(threads: int) -> dict[str, Callable[[], list[str]]]:
    def counts():
        return [f"{n} {enumeration.count_cographs(n, workers=threads)}" for n in range(2, 10)]

    def sum6():
        return [e.line() for e in sums.enumerate_sum_cographs(6)]

    def diff5():
        return [e.line() for e in difference.enumerate_difference_cographs(5, workers=threads)]

    def isect4():
        return [_isect_line(e) for e in intersection.enumerate_intersection_cographs(4)]

    def pl7():
        return [s.serialize() for n in range(1, 8) for s in pl.enumerate_linear_spaces(n)]

    def wheel23():
        return [_wheel_line(wheels.wheel_build(n)) for n in range(3, 24)]

    def chain_grid():
        out = []
        for p in (2, 4, 6, 8):
            for q in (2, 4, 6, 8):
                for n in range(2, 9):
                    r = todd_coxeter.chain_group_enumeration(p, q, n)
                    try:
                        f = str(todd_coxeter.chain_group_order(p, q, n).order)
                    except todd_coxeter.ExcludedChainGroup:
                        f = "excluded"
                    out.append(f"p={p} q={q} n={n} index={r.index} order={r.order} formula={f}")
        return out

    return {
        "counts.txt": counts,
        "sum6.txt": sum6,
        "diff5.txt": diff5,
        "isect4.txt": isect4,
        "pl.txt": pl7,
        "wheels.txt": wheel23,
        "chain_groups.txt": chain_grid,
    }


def regen_all(out_dir: Path, threads: int = 1) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    manifest = []
    for name, make in _catalogues(threads).items():
        data = ("\n".join(make()) + "\n").encode()
        path = out_dir / name
        path.write_bytes(data)
        written.append(path)
        manifest.append(f"{hashlib.sha256(data).hexdigest()}  {name}")
    mpath = out_dir / "MANIFEST.sha256"
    mpath.write_text("\n".join(manifest) + "\n")
    return written + [mpath]


def cmd_regen(ctx: Context) -> None:
    out = Path(ctx.args.dir)
    files = regen_all(out, ctx.args.threads)
    ctx.lines.extend(str(p) for p in files)
    ctx.payload = [p.name for p in files]
    if ctx.verify:
        for line in (out / "MANIFEST.sha256").read_text().splitlines():
            digest, name = line.split("  ")
            ctx.checks.check(hashlib.sha256((out / name).read_bytes()).hexdigest() == digest, f"checksum of {name}")


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--verify", action="store_true", help="re-run postcondition checks")
    common.add_argument("--threads", type=int, default=1, help="worker processes")
    common.add_argument("--out", help="write output to FILE instead of stdout")
    common.add_argument("--in", dest="in_file", help="read the pattern argument from FILE")

    parser = argparse.ArgumentParser(prog="cograph", description="Cographs: counting, catalogues and realizations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="number of cographs on n points")
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--upto", type=int, help="count every n from --points to this value")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", parents=[common], help="list canonical cographs")
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("sum", parents=[common], help="sum cographs")
    p.add_argument("action", choices=["catalogue", "classify", "pattern"])
    p.add_argument("pattern", nargs="?", help="serialized cograph, or comma-separated values for 'pattern'")
    p.add_argument("--points", type=int, default=6)
    p.add_argument("--modulus", type=int, default=0)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("wheel", parents=[common], help="Fibonacci wheels")
    p.add_argument("--n", "--spokes", dest="n", type=int, required=True)
    p.add_argument("--upto", type=int)
    p.set_defaults(func=cmd_wheel)

    p = sub.add_parser("diff", parents=[common], help="difference cographs")
    p.add_argument("action", choices=["catalogue", "realize"])
    p.add_argument("pattern", nargs="?")
    p.add_argument("--points", type=int, default=5)
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("isect", parents=[common], help="intersection cographs")
    p.add_argument("action", choices=["catalogue", "check", "uie"])
    p.add_argument("pattern", nargs="?", help="serialized cograph, or edge sets like '01={1,2} 02={1} ...'")
    p.add_argument("--points", type=int, default=4)
    p.add_argument("--labels", choices=["all", "needed"], default="all")
    p.set_defaults(func=cmd_isect)

    p = sub.add_parser("represent", parents=[common], help="concrete realizations")
    p.add_argument("kind", choices=["inner", "poly", "sum-points", "distance-points", "ip", "sum", "dist"])
    p.add_argument("pattern", nargs="?", help="serialized cograph, or edge values like '01=3 02=4 12=5'")
    p.add_argument("--values", help="comma-separated value per class")
    p.add_argument("--modulus", type=int, default=0)
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("pl", parents=[common], help="PL-cographs and linear spaces")
    p.add_argument("action", choices=["validate", "catalogue", "minimal", "coordinatize", "compose"])
    p.add_argument("pattern", nargs="?")
    p.add_argument("other", nargs="?", help="second operand for compose")
    p.add_argument("--points", type=int, default=5)
    p.add_argument("--force", action="store_true")
    p.add_argument("--reading", choices=["three-point", "nontrivial"], default="three-point")
    p.add_argument("--x", type=int, default=0)
    p.add_argument("--y", type=int, default=1)
    p.add_argument("--o", type=int)
    p.add_argument("--op", choices=["sum", "wedge"], default="sum")
    p.set_defaults(func=cmd_pl)

    p = sub.add_parser("tc", parents=[common], help="coset enumeration for chain groups")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--strategy", choices=["hlt", "felsch"], default="hlt")
    p.add_argument("--table", action="store_true", help="print the coset table")
    p.set_defaults(func=cmd_tc)

    p = sub.add_parser("chains", parents=[common], help="chain pairs in a small group")
    p.add_argument("--group", required=True, help="e.g. Q8, D4, S3, Z2xQ8")
    p.set_defaults(func=cmd_chains)

    p = sub.add_parser("regen", parents=[common], help="rewrite every catalogue with a checksum manifest")
    p.add_argument("dir", nargs="?", default="catalogues")
    p.set_defaults(func=cmd_regen)
    return parser


_NEEDS_PATTERN = {
    ("sum", "classify"), ("sum", "pattern"), ("diff", "realize"), ("isect", "check"), ("isect", "uie"),
    ("pl", "validate"), ("pl", "coordinatize"), ("pl", "compose"), ("represent", None),
}
_KIND_ALIASES = {"ip": "inner", "sum": "sum-points", "dist": "distance-points"}


def _read_pattern(path: str) -> str:
    """First line of FILE that is neither blank nor a '#' comment."""
    for line in Path(path).read_text().splitlines():
        if line.strip() and not line.lstrip().startswith("#"):
            return line.strip()
    raise UsageError(f"{path} holds no pattern")


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "represent":
        args.kind = _KIND_ALIASES.get(args.kind, args.kind)
    if args.in_file and hasattr(args, "pattern"):
        try:
            args.pattern = _read_pattern(args.in_file)
        except (OSError, UsageError) as exc:
            parser.error(str(exc))
    if (args.command, getattr(args, "action", None)) in _NEEDS_PATTERN and not args.pattern:
        parser.error(f"{args.command} {getattr(args, 'action', '')} needs a pattern argument".replace("  ", " "))
    ctx = Context(args, Checks())
    start = time.perf_counter()
    status = 0
    error = None
    try:
        args.func(ctx)
    except (AssertionError, ArithmeticError) as exc:
        error, status = f"verification failed: {exc}", 1
    except todd_coxeter.CosetCapExceeded as exc:
        error, status = f"inconclusive: {exc}", 1
    except (CographError, OSError) as exc:
        error, status = f"error: {exc}", 2
    if ctx.checks.failed and status == 0:
        status = 1
    if args.json:
        report = {
            "schema": SCHEMA,
            "command": list(argv if argv is not None else sys.argv[1:]),
            "result": ctx.payload,
            "verification": ctx.checks.summary(),
            "seconds": round(time.perf_counter() - start, 3),
            "status": status,
        }
        if error:
            report["error"] = error
        text = json.dumps(report, indent=2, default=str) + "\n"
    else:
        text = "".join(line + "\n" for line in ctx.lines)
        if args.verify:
            s = ctx.checks.summary()
            text += f"checks: {s['passed']}/{s['run']} passed\n"
            text += "".join(f"FAILED {f}\n" for f in ctx.checks.failed)
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    if error:
        print(error, file=sys.stderr)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
