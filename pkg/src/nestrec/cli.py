"""Command line front end.

Subcommands cover both computation mechanisms and their cross-checks:
eval/tree/ic produce sequences, verify plays the two mechanisms against
each other, prune runs and audits the pruning operations, freq handles
frequency sequences, explore sweeps parameter grids including deliberately
broken ones, export writes b-files or CSV, and oeis-match greps a local
OEIS snapshot.  Exit codes: 0 success or agreement, 1 divergence, 2 usage
or validation trouble.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from typing import Optional, Sequence

from . import families as fam
from . import frequency as freq
from . import pruning, recursion, tree


class UsageError(Exception):
    pass


# -- family / spec resolution -------------------------------------------------


def parse_params(tokens: Sequence[str]) -> dict[str, int]:
    params = {}
    for token in tokens:
        key, eq, value = token.partition("=")
        if not eq or not key:
            raise UsageError(f"expected key=value, got {token!r}")
        try:
            params[key] = int(value)
        except ValueError:
            raise UsageError(f"parameter {key!r} needs an integer, got {value!r}") from None
    return params


def resolve_family(args) -> fam.Family:
    name = args.family_name or getattr(args, "family", None)
    if name is None:
        raise UsageError("name a family (e.g. order_one s=1 j=3 m=1) or pass --spec")
    try:
        family = fam.build_family(name, **parse_params(args.params))
    except (TypeError, ValueError) as err:
        raise UsageError(str(err)) from None
    verdict = fam.validate(family)
    if not verdict.ok:
        raise UsageError(f"invalid parameters: {verdict.message}")
    if verdict.message:
        print(f"note: {verdict.message}", file=sys.stderr)
    return family


def resolve_recursion(args) -> tuple[recursion.RecursionSpec, list[int], Optional[fam.Family]]:
    """A recursion plus initial conditions, from a named family or a spec file."""
    if args.spec and args.family_name:
        raise UsageError("pass either a family name or --spec, not both")
    if args.spec:
        with open(args.spec) as handle:
            spec, ic = recursion.from_document(json.load(handle))
        return spec, ic, None
    family = resolve_family(args)
    try:
        ic = fam.standard_ics(family)
    except fam.NoTreeKnown:
        raise UsageError(
            f"{family} has no tree to take initial conditions from; use --spec with explicit ic"
        ) from None
    return fam.recursion_of(family), ic, family


def resolve_tree(args) -> tree.TreeSpec:
    if args.spec and args.family_name:
        raise UsageError("pass either a family name or --spec, not both")
    if args.spec:
        with open(args.spec) as handle:
            return tree.from_document(json.load(handle))
    family = resolve_family(args)
    try:
        return fam.tree_of(family)
    except fam.NoTreeKnown as err:
        raise UsageError(str(err)) from None


# -- output formatting --------------------------------------------------------


def render_sequence(values: Sequence[int], fmt: str) -> str:
    if not values:
        raise UsageError("nothing to write: the sequence is empty")
    if fmt == "bfile":
        return "".join(f"{n} {v}\n" for n, v in enumerate(values, 1))
    if fmt == "csv":
        return "n,value\n" + "".join(f"{n},{v}\n" for n, v in enumerate(values, 1))
    if fmt == "json":
        return json.dumps(list(values)) + "\n"
    if fmt == "table":
        width = len(str(len(values)))
        return "".join(f"{n:>{width}}  {v}\n" for n, v in enumerate(values, 1))
    raise UsageError(f"unknown format {fmt!r}")


def write_output(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands --------------------------------------------------------------


def cmd_eval(args) -> int:
    spec, ic, _ = resolve_recursion(args)
    result = recursion.evaluate(spec, ic, args.n)
    if not result.alive:
        print(f"sequence dies at n = {result.dead_at} ({result.reason.value})", file=sys.stderr)
    write_output(render_sequence(result.values, args.format), args.out)
    return 0


def cmd_tree(args) -> int:
    spec = resolve_tree(args)
    write_output(render_sequence(tree.cell_count_sequence(spec, args.n), args.format), args.out)
    return 0


def cmd_ic(args) -> int:
    family = resolve_family(args)
    count = args.n if args.n else fam.ic_length(family)
    write_output(render_sequence(tree.initial_conditions(fam.tree_of(family), count), args.format), args.out)
    return 0


def cmd_freq(args) -> int:
    spec = resolve_tree(args)
    if args.empirical:
        seq = freq.empirical_frequency(spec, args.empirical)
        if seq.vmax < args.vmax:
            raise UsageError(
                f"only {seq.vmax} values complete within {args.empirical} labels; raise --empirical"
            )
    else:
        seq = freq.closed_form_sequence(spec, args.vmax)
    rows = [(v, seq.entries[v]) for v in range(1, args.vmax + 1)]
    if args.format == "json":
        text = json.dumps({str(v): phi for v, phi in rows}) + "\n"
    elif args.format == "table":
        width = len(str(args.vmax))
        text = "".join(f"{v:>{width}}  {phi}\n" for v, phi in rows)
    else:
        text = "v,phi\n" + "".join(f"{v},{phi}\n" for v, phi in rows)
    write_output(text, args.out)
    return 0


def cmd_verify(args) -> int:
    if args.spec:
        raise UsageError("verify needs a named family: both mechanisms must know it")
    family = resolve_family(args)
    try:
        tspec = fam.tree_of(family)
        ic = fam.standard_ics(family)
    except fam.NoTreeKnown as err:
        raise UsageError(str(err)) from None
    result = recursion.evaluate(fam.recursion_of(family), ic, args.n)
    counts = tree.cell_count_sequence(tspec, args.n)
    if not result.alive:
        print(f"DIVERGE: recursion dies at n = {result.dead_at} ({result.reason.value})")
        return 1
    for n, (a, b) in enumerate(zip(result.values, counts), 1):
        if a != b:
            print(f"DIVERGE at n = {n}: recursion {a}, tree {b}")
            return 1
    print(f"AGREE for n <= {args.n}: recursion matches cell counts")
    return 0


def cmd_prune(args) -> int:
    family = resolve_family(args)
    try:
        tspec = fam.tree_of(family)
    except fam.NoTreeKnown as err:
        raise UsageError(str(err)) from None

    def run_one(n: int) -> tuple[bool, pruning.PruneReport]:
        t = pruning.build_prefix(tspec, n)
        report = pruning.prune_family(family, t)
        rebuilt = pruning.build_prefix(tspec, n - report.removed)
        return pruning.trees_equal(report.result, rebuilt), report

    if args.check:
        seed = args.seed if args.seed is not None else random.randrange(10**9)
        print(f"seed = {seed}", file=sys.stderr)
        rng = random.Random(seed)
        lo = fam.prune_threshold(family)
        hi = max(args.n, lo + 1)
        failures = 0
        for _ in range(args.check):
            n = rng.randint(lo, hi)
            ok, report = run_one(n)
            status = "ok" if ok else "MISMATCH"
            print(f"n = {n}: removed {report.removed}, identity {status}")
            failures += 0 if ok else 1
        return 1 if failures else 0

    ok, report = run_one(args.n)
    print(f"removed {report.removed} labels; result has {report.result.n}")
    print(f"identity {'holds' if ok else 'FAILS'}: pruned tree vs rebuilt prefix")
    for note in report.anomalies:
        print(f"anomaly: {note}")
    if args.trace:
        print(json.dumps({"removed": report.removed, "steps": report.steps}, indent=2))
    return 0 if ok else 1


def cmd_export(args) -> int:
    spec, ic, _ = resolve_recursion(args)
    result = recursion.evaluate(spec, ic, args.n)
    write_output(render_sequence(result.values, args.format), args.out)
    return 0


def cmd_oeis_match(args) -> int:
    spec, ic, _ = resolve_recursion(args)
    values = recursion.evaluate(spec, ic, args.n).values
    path = args.stripped or os.environ.get("NESTREC_OEIS_STRIPPED")
    if not path:
        raise UsageError("no snapshot: pass --stripped or set NESTREC_OEIS_STRIPPED")
    if not os.path.exists(path):
        raise UsageError(f"snapshot not found: {path}")
    matches = match_stripped(values, path)
    for ident in matches:
        print(ident)
    if not matches:
        print("no matches", file=sys.stderr)
    return 0


def match_stripped(values: Sequence[int], path: str) -> list[str]:
    """OEIS identifiers whose stored prefix contains `values` contiguously."""
    if not values:
        raise UsageError("empty query sequence")
    needle = "," + ",".join(str(v) for v in values) + ","
    matches = []
    with open(path) as handle:
        for line in handle:
            if line.startswith("#"):
                continue
            ident, _, body = line.partition(" ")
            if needle in body.strip():
                matches.append(ident)
    return matches


# -- the exploration harness --------------------------------------------------


def parse_grid(text: str) -> dict[str, list[int]]:
    """Parse "s=0,1;j=1..3;m=-2..5" into {"s": [0, 1], "j": [1, 2, 3], ...}."""
    grid = {}
    for clause in text.split(";"):
        key, eq, body = clause.partition("=")
        key = key.strip()
        if not eq or not key:
            raise UsageError(f"expected key=values in grid clause {clause!r}")
        values: list[int] = []
        for part in body.split(","):
            part = part.strip()
            lo, dots, hi = part.partition("..")
            try:
                if dots:
                    values.extend(range(int(lo), int(hi) + 1))
                else:
                    values.append(int(part))
            except ValueError:
                raise UsageError(f"bad grid value {part!r}") from None
        grid[key] = values
    return grid


def grid_points(grid: dict[str, list[int]]) -> list[dict[str, int]]:
    points = [{}]
    for key, values in grid.items():
        points = [dict(point, **{key: v}) for point in points for v in values]
    return points


def adjacent_ics(name: str, point: dict[str, int], length: int) -> list[int]:
    """Initial conditions borrowed from the nearest tree anyone knows.

    Out-of-range parameter points have no tree of their own, so probes run
    them with the cell counts of the closest valid shape, truncated or
    extended to the requested length.  The families without any tree
    construction borrow from the family they coincide with at one corner
    of their parameter space.
    """
    if name == "q_family":
        neighbour = fam.OrderOne(point["s"], point["j"], 0)
    elif name == "c_sjk":
        neighbour = fam.kary_conolly(point["k"])
    else:
        clamped = dict(point)
        if name == "order_one":
            clamped["m"] = min(max(point["m"], 0), point["j"])
        elif name == "superposed":
            clamped["m"] = min(max(point["m"], -point["p"] + 1), point["p"] * point["j"])
        elif name == "kary":
            lo = point["p"] - 1
            hi = point["k"] * point["p"] // (point["k"] - 1) - 1
            clamped["m"] = min(max(point["m"], lo), hi)
        neighbour = fam.build_family(name, **clamped)
    return tree.initial_conditions(fam.tree_of(neighbour), length)


def probe_ic_length(name: str, point: dict[str, int]) -> int:
    if name == "order_one":
        return 5 * point["j"] + 3 * point["m"] + 2 * point["s"]
    if name == "superposed":
        return 5 * point["p"] * point["j"] + 3 * point["m"] + 2 * point["s"]
    if name == "kary":
        k, m, p = point["k"], point["m"], point["p"]
        return 2 * k * (p + m) + p - (k - 1) * m
    if name == "q_family":
        return 5 * point["j"] + 2 * point["s"]
    if name == "c_sjk":
        # scaled so the ICs cover the deepest inner offset k*j
        return 2 * point["k"] * point["j"] + 1 + 2 * point["s"]
    raise UsageError(f"no probe support for family {name!r}")


def explore_rows(name: str, points: list[dict[str, int]], n_max: int, prune_check: bool = False) -> list[dict]:
    """One results row per grid point; all outcomes are data, never errors."""
    rows = []
    for point in points:
        row = {"family": name, **point}
        if name == "neg_gamma":
            rows.append(_neg_gamma_row(row, point, n_max))
            continue
        family = fam.build_family(name, **point)
        verdict = fam.validate(family)
        row["valid"] = "yes" if verdict.ok and not verdict.exploratory else (
            "exploratory" if verdict.ok else "no"
        )
        length = probe_ic_length(name, point)
        if length < 1:
            row.update(survived_to="", dead_reason="ic length not positive", slow="", freq_match="")
            rows.append(row)
            continue
        try:
            ic = adjacent_ics(name, point, length)
        except (ValueError, fam.NoTreeKnown) as err:
            row.update(survived_to="", dead_reason=f"no adjacent tree: {err}", slow="", freq_match="")
            rows.append(row)
            continue
        try:
            rspec = fam.recursion_of(family) if verdict.ok else _unchecked_recursion(name, point)
        except ValueError as err:
            row.update(survived_to="", dead_reason=f"malformed recursion: {err}", slow="", freq_match="")
            rows.append(row)
            continue
        probe = recursion.death_probe(rspec, ic, n_max)
        row["survived_to"] = probe.survived_to
        row["dead_reason"] = probe.reason.value if probe.reason else ""
        values = recursion.evaluate(rspec, ic, n_max).values
        violation = recursion.slowness_violation(values)
        row["slow"] = "yes" if violation is None else f"no(at {violation})"
        row["freq_match"] = _freq_match(name, point, verdict, values)
        if prune_check:
            row["prune_identity"] = _prune_identity(family, verdict, n_max)
        rows.append(row)
    return rows


def _unchecked_recursion(name: str, point: dict[str, int]) -> recursion.RecursionSpec:
    """Offsets for out-of-range points, built without the family range checks."""
    if name == "order_one":
        s, j, m = point["s"], point["j"], point["m"]
        return recursion.RecursionSpec(2, 1, (s, s + j + m), ((j,), (2 * j + m,)))
    if name == "superposed":
        s, j, m, p = point["s"], point["j"], point["m"], point["p"]
        first = tuple(2 * t - 1 + p * (j - 1) for t in range(1, p + 1))
        second = tuple(2 * t - 1 + m + p * (2 * j - 1) for t in range(1, p + 1))
        return recursion.RecursionSpec(2, p, (s, s + p * j + m), (first, second))
    if name == "kary":
        k, m, p = point["k"], point["m"], point["p"]
        outer = tuple((i - 1) * (1 + m) for i in range(1, k + 1))
        inner = tuple(tuple((i - 1) * (1 + m) + t for t in range(1, p + 1)) for i in range(1, k + 1))
        return recursion.RecursionSpec(k, p, outer, inner)
    if name == "q_family":
        s, j, q = point["s"], point["j"], point["q"]
        return recursion.RecursionSpec(2, 1, (s, s + j), ((j,), (2 * j - q,)))
    if name == "c_sjk":
        s, j, k = point["s"], point["j"], point["k"]
        outer = tuple(s + (i - 1) * j for i in range(1, k + 1))
        return recursion.RecursionSpec(k, 1, outer, tuple((i * j,) for i in range(1, k + 1)))
    raise UsageError(f"no probe support for family {name!r}")


def _freq_match(name, point, verdict, values) -> str:
    if not verdict.ok or verdict.exploratory or recursion.slowness_violation(values) is not None:
        return ""
    family = fam.build_family(name, **point)
    empirical = recursion.frequency_of(values)
    if empirical.vmax < 1:
        return ""
    closed = freq.closed_form_sequence(fam.tree_of(family), empirical.vmax)
    report = freq.compare(empirical, closed, empirical.vmax)
    return "yes" if report.agree else f"no(v={report.first_diff})"


def _prune_identity(family, verdict, n_max) -> str:
    try:
        tspec = fam.tree_of(family)
        n = max(n_max, fam.prune_threshold(family))
        t = pruning.build_prefix(tspec, n)
        report = pruning.prune_family(family, t)
        rebuilt = pruning.build_prefix(tspec, n - report.removed)
        ok = pruning.trees_equal(report.result, rebuilt)
        return f"yes(n={n})" if ok else f"no(n={n})"
    except (fam.NoTreeKnown, ValueError) as err:
        return f"skipped({err})"


def _neg_gamma_row(row: dict, point: dict[str, int], n_max: int) -> dict:
    family = fam.NegGammaCandidate(point["k"], point["gamma"], point["delta"])
    verdict = fam.validate(family)
    row["valid"] = "candidate" if verdict.ok else "no"
    if not verdict.ok:
        row.update(survived_to="", dead_reason=verdict.message, slow="", freq_match="")
        return row
    k, gamma, delta = family.k, family.gamma, family.delta
    p = (k - 1) * gamma + delta
    conjectured = tree.TreeSpec(k, 0, 1, 1, k * gamma + delta, p - (k - 1) * gamma)
    ic = tree.initial_conditions(conjectured, 2 * k * (p + p - 1 + gamma) + p - (k - 1) * (p - 1 + gamma))
    rspec = fam.recursion_of(family)
    probe = recursion.death_probe(rspec, ic, n_max)
    row["survived_to"] = probe.survived_to
    row["dead_reason"] = probe.reason.value if probe.reason else ""
    values = recursion.evaluate(rspec, ic, n_max).values
    violation = recursion.slowness_violation(values)
    row["slow"] = "yes" if violation is None else f"no(at {violation})"
    # compare what frequency evidence there is, even from a prefix that
    # later stops being slow
    prefix = values if violation is None else values[: violation - 1]
    row["freq_match"] = ""
    if prefix and prefix[0] == 1:
        empirical = recursion.frequency_of(prefix)
        if empirical.vmax >= 1:
            closed = freq.closed_form_sequence(conjectured, empirical.vmax)
            report = freq.compare(empirical, closed, empirical.vmax)
            verdict = "yes" if report.agree else f"no(v={report.first_diff})"
            scope = "" if violation is None else f"prefix({len(prefix)}):"
            row["freq_match"] = scope + verdict
    return row


def cmd_explore(args) -> int:
    if not args.grid:
        raise UsageError("explore needs --grid, e.g. --grid \"s=0,1;j=1..3;m=-2..5\"")
    name = args.family_name
    if name is None:
        raise UsageError("explore needs a family name")
    points = grid_points(parse_grid(args.grid))
    rows = explore_rows(name, points, args.n, prune_check=args.prune_check)
    columns: list[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, restval="")
    writer.writeheader()
    writer.writerows(rows)
    write_output(buffer.getvalue(), args.out)
    return 0


# -- parser -------------------------------------------------------------------


def add_source_args(sub, with_spec=True):
    sub.add_argument("family_name", nargs="?", help="family name from the catalog")
    sub.add_argument("params", nargs="*", help="family parameters as key=value")
    if with_spec:
        sub.add_argument("--spec", help="JSON spec file instead of a named family")
    else:
        sub.set_defaults(spec=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nestrec",
        description="Slow solutions of nested recursions, computed two ways and cross-checked.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    sub = subparsers.add_parser("eval", help="evaluate a recursion")
    add_source_args(sub)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--format", default="table", choices=["table", "csv", "json", "bfile"])
    sub.add_argument("--out")
    sub.set_defaults(func=cmd_eval)

    sub = subparsers.add_parser("tree", help="cell counting sequence of a tree")
    add_source_args(sub)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--format", default="table", choices=["table", "csv", "json", "bfile"])
    sub.add_argument("--out")
    sub.set_defaults(func=cmd_tree)

    sub = subparsers.add_parser("ic", help="tree-following initial conditions")
    add_source_args(sub, with_spec=False)
    sub.add_argument("--n", type=int, default=0, help="override the standard length")
    sub.add_argument("--format", default="table", choices=["table", "csv", "json", "bfile"])
    sub.add_argument("--out")
    sub.set_defaults(func=cmd_ic)

    sub = subparsers.add_parser("freq", help="frequency sequence, closed form or empirical")
    add_source_args(sub)
    sub.add_argument("--vmax", type=int, required=True)
    sub.add_argument("--empirical", type=int, default=0, help="derive from the first N labels instead")
    sub.add_argument("--format", default="csv", choices=["table", "csv", "json"])
    sub.add_argument("--out")
    sub.set_defaults(func=cmd_freq)

    sub = subparsers.add_parser("verify", help="recursion vs tree cell counts")
    add_source_args(sub)
    sub.add_argument("--n", type=int, required=True)
    sub.set_defaults(func=cmd_verify)

    sub = subparsers.add_parser("prune", help="run a pruning operation and check the identity")
    add_source_args(sub, with_spec=False)
    sub.add_argument("--n", type=int, required=True, help="tree size (or sampling cap with --check)")
    sub.add_argument("--trace", action="store_true", help="dump the label movement log as JSON")
    sub.add_argument("--check", type=int, default=0, help="sample this many n values instead")
    sub.add_argument("--seed", type=int)
    sub.set_defaults(func=cmd_prune)

    sub = subparsers.add_parser("explore", help="sweep a parameter grid, including broken points")
    add_source_args(sub, with_spec=False)
    sub.add_argument("--grid", help="e.g. \"s=0,1;j=1..3;m=-2..5\"")
    sub.add_argument("--n", type=int, default=1000)
    sub.add_argument("--prune-check", action="store_true", dest="prune_check")
    sub.add_argument("--seed", type=int)
    sub.add_argument("--out")
    sub.set_defaults(func=cmd_explore)

    sub = subparsers.add_parser("export", help="write a sequence to a file")
    add_source_args(sub)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--format", default="bfile", choices=["bfile", "csv", "json", "table"])
    sub.add_argument("--out", required=True)
    sub.set_defaults(func=cmd_export)

    sub = subparsers.add_parser("oeis-match", help="search a local OEIS stripped snapshot")
    add_source_args(sub)
    sub.add_argument("--n", type=int, default=40, help="prefix length to search for")
    sub.add_argument("--stripped", help="path to the snapshot (default: NESTREC_OEIS_STRIPPED)")
    sub.set_defaults(func=cmd_oeis_match)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (ValueError, fam.NoTreeKnown, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
