"""Command-line interface: ``symracks <subcommand>``.

Exit codes: 0 success, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import random
import sys
from collections import defaultdict
from typing import Sequence

from . import __version__
from .constructors import conj_subquandle, conjugation_closed_subsets, parse_rack
from .enumeration import (
    LEGENDRIAN_KINDS,
    SYMMETRIC_KINDS,
    InvalidN,
    census_legendrian,
    census_symmetric,
    enumerate_racks,
    sn_class_sizes,
)
from .good import (
    anti_condition,
    bound_report,
    centralizer_condition,
    conj_full,
    conj_group_bound,
    fiber_condition,
    galkin_good_involutions,
    good_involutions_conj,
    good_involutions_core,
    good_involutions_oracle,
)
from .groups import (
    InvalidParameter,
    UnsupportedFamily,
    make_named_group,
    small_groups,
)
from .racks import SizeCap, classify_rack
from . import reference

log = logging.getLogger("symracks")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def render(rows: Sequence[dict], columns: Sequence[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{c: r[c] for c in columns} for r in rows], indent=1)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue().rstrip("\n")
    cells = [[str(c) for c in columns]] + [[_fmt_cell(r[c]) for c in columns] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(columns))]
    lines = [" | ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "-+-".join("-" * w for w in widths))
    return "\n".join(lines)


def _fmt_cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return ", ".join(str(x) for x in v)
    return str(v)


# ---------------------------------------------------------------------------
# result cache
# ---------------------------------------------------------------------------

def _cache_path(cache_dir: str | None, *key) -> str | None:
    if not cache_dir:
        return None
    digest = hashlib.sha256(json.dumps([__version__, *key]).encode()).hexdigest()[:24]
    return os.path.join(cache_dir, f"{digest}.json")


def _cached(cache_dir, key, compute):
    path = _cache_path(cache_dir, *key)
    if path and os.path.exists(path):
        with open(path) as fh:
            return json.load(fh)
    value = compute()
    if path:
        os.makedirs(cache_dir, exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(value, fh)
        os.replace(tmp, path)
    return value


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

def conj_rows(max_order: int, cache_dir=None) -> list[dict]:
    rows = []
    for name in small_groups(max_order):
        G = make_named_group(name)
        if G.is_abelian():
            continue

        def compute(G=G):
            return [len(good_involutions_conj(conj_full(G))), conj_group_bound(G)]

        good, bound = _cached(cache_dir, ("conj-row", name), compute)
        rows.append({"group": name, "order": G.order, "good": good, "bound": bound})
    return rows


def core_rows(max_order: int, cache_dir=None) -> list[dict]:
    rows = []
    for name in small_groups(max_order):
        G = make_named_group(name)
        if G.exponent() <= 2:
            continue

        def compute(G=G):
            goods = good_involutions_core(G)
            report = bound_report(G, goods, aut_cap=0)
            return [len(goods), report.upper_bound]

        good, bound = _cached(cache_dir, ("core-row", name), compute)
        rows.append({"group": name, "order": G.order, "good": good, "bound": bound})
    return rows


def _attach_reference(rows, table):
    ref = {name: (good, bound) for name, _, good, bound in table}
    for r in rows:
        expected = ref.get(r["group"])
        r["reference"] = f"{expected[0]}/{expected[1]}" if expected else "-"
        r["match"] = "-" if not expected else ("yes" if expected == (r["good"], r["bound"]) else "NO")
    return rows


def census_table(which: str, max_order: int, opt_in: bool, workers: int, cache_dir) -> list[dict]:
    kinds = SYMMETRIC_KINDS if which == "census" else LEGENDRIAN_KINDS
    fn = census_symmetric if which == "census" else census_legendrian
    counts = defaultdict(dict)
    for n in range(0, max_order + 1):
        racks = None
        if n:
            racks = enumerate_racks(n, "rack", opt_in=opt_in, workers=workers,
                                    cache_dir=os.path.join(cache_dir, "generation") if cache_dir else None,
                                    progress=log.info)
        for kind in kinds:
            counts[kind][n] = _cached(cache_dir, (which, kind, n), lambda: fn(n, kind, racks=racks))
    return [{"kind": k, **{str(n): counts[k][n] for n in range(max_order + 1)}} for k in kinds]


def cmd_tables(args) -> int:
    which = args.which
    if which in ("census", "legendrian"):
        max_order = 6 if args.max_order is None else args.max_order
        opt_in = args.opt_in_order8 or max_order <= 6
        if max_order > 6 and not args.opt_in_order8:
            raise UsageError("orders above 6 need --opt-in-order8")
        rows = census_table(which, max_order, opt_in, args.workers, args.cache_dir)
        columns = ["kind"] + [str(n) for n in range(max_order + 1)]
        if args.compare:
            ref = reference.SYMMETRIC_CENSUS if which == "census" else reference.LEGENDRIAN_CENSUS
            for r in rows:
                exp = ref[r["kind"]][: max_order + 1]
                r["match"] = "yes" if exp == [r[str(n)] for n in range(max_order + 1)] else "NO"
            columns.append("match")
    elif which == "class-sizes":
        hi = 9 if args.max_order is None else args.max_order
        rows = [{"n": n, "sizes": sn_class_sizes(n, max_n=max(hi, 9))} for n in range(5, hi + 1)]
        columns = ["n", "sizes"]
        if args.compare:
            for r in rows:
                r["match"] = "yes" if reference.CLASS_SIZES.get(r["n"]) == r["sizes"] else "NO"
            columns.append("match")
    elif which in ("conj", "core"):
        default = 22 if which == "conj" else 23
        max_order = default if args.max_order is None else args.max_order
        rows = (conj_rows if which == "conj" else core_rows)(max_order, args.cache_dir)
        columns = ["group", "order", "good", "bound"]
        if args.compare:
            _attach_reference(rows, reference.CONJ_TABLE if which == "conj" else reference.CORE_TABLE)
            columns += ["reference", "match"]
    else:
        raise UsageError(f"unsupported table {which}")
    print(render(rows, columns, args.format))
    return EXIT_OK


# ---------------------------------------------------------------------------
# good
# ---------------------------------------------------------------------------

def _solve(descriptor: str, method: str):
    kind, _, rest = descriptor.partition(":")
    kind = kind.lower()
    R = parse_rack(descriptor)
    if method == "oracle":
        return good_involutions_oracle(R, cap=None), None
    if kind == "conj" and method in ("auto", "alg1"):
        spec = conj_full(make_named_group(rest))
        goods = good_involutions_conj(spec)
        return goods, bound_report(spec, goods, aut_cap=0)
    if kind == "core" and method in ("auto", "alg2"):
        G = make_named_group(rest)
        goods = good_involutions_core(G)
        return goods, bound_report(G, goods, aut_cap=0)
    if kind == "galkin" and method == "auto":
        group, _, c = rest.rpartition(":")
        return galkin_good_involutions(make_named_group(group), int(c)), None
    if kind == "dihedral" and method in ("auto", "alg2"):
        G = make_named_group(f"Z{rest}")
        goods = good_involutions_core(G)
        return goods, bound_report(G, goods, aut_cap=0)
    if method != "auto":
        raise UsageError(f"method {method} does not apply to {descriptor}")
    return good_involutions_oracle(R, cap=None), None


def cmd_good(args) -> int:
    def compute():
        goods, bounds = _solve(args.descriptor, args.method)
        data = goods.to_json(args.descriptor)
        data["bounds"] = bounds.to_json() if bounds else {}
        return data

    data = _cached(args.cache_dir, ("good", args.descriptor, args.method), compute)
    if args.format == "json":
        print(json.dumps(data, indent=1))
        return EXIT_OK
    print(f"rack: {data['rack']}")
    print(f"method: {data['method']}")
    print(f"count: {data['count']}")
    for k, v in data["bounds"].items():
        print(f"{k}: {v}")
    if data["count"] <= args.show:
        labels = _group_labels(args.descriptor)
        for rho in data["involutions"]:
            if labels:
                moved = ", ".join(f"{labels[i]}->{labels[j]}" for i, j in enumerate(rho) if i != j)
                print("  " + (moved or "identity"))
            else:
                print("  " + " ".join(str(v) for v in rho))
    return EXIT_OK


def _group_labels(descriptor: str):
    kind, _, rest = descriptor.partition(":")
    if kind.lower() in ("conj", "core"):
        G = make_named_group(rest)
        return [G.label(g) for g in range(G.order)]
    return None


# ---------------------------------------------------------------------------
# census and class sizes
# ---------------------------------------------------------------------------

def cmd_census(args) -> int:
    args.which = "census" if args.table == "symmetric" else "legendrian"
    return cmd_tables(args)


def cmd_class_sizes(args) -> int:
    ns = args.n or list(range(5, 10))
    rows = [{"n": n, "sizes": sn_class_sizes(n, max_n=max(ns + [9]))} for n in ns]
    print(render(rows, ["n", "sizes"], args.format))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def verify(max_group_order: int, samples: int = 50, seed: int = 0) -> list[dict]:
    """Compare both group algorithms against the oracle and check invariants;
    returns a list of failure witnesses (empty when everything agrees)."""
    failures = []
    rng = random.Random(seed)
    for name in small_groups(max_group_order):
        G = make_named_group(name)
        for X in conjugation_closed_subsets(G):
            spec = conj_subquandle(G, X)
            alg = good_involutions_conj(spec)
            ora = good_involutions_oracle(spec.rack, cap=None)
            if alg.as_set() != ora.as_set():
                failures.append({"check": "conj-vs-oracle", "group": name, "subset": list(X),
                                 "algorithm": len(alg), "oracle": len(ora)})
        core = good_involutions_core(G)
        ora = good_involutions_oracle(core.rack, cap=None)
        if core.as_set() != ora.as_set():
            failures.append({"check": "core-vs-oracle", "group": name,
                             "algorithm": len(core), "oracle": len(ora)})
        for R in (conj_full(G).rack, core.rack):
            goods = good_involutions_oracle(R, cap=None)
            if classify_rack(R).is_faithful and len(goods) > 1:
                failures.append({"check": "faithful-at-most-one", "rack": R.to_json()})
            for _ in range(samples):
                rho = list(range(R.order))
                rng.shuffle(rho)
                conds = [fiber_condition(R, rho), centralizer_condition(R, rho), anti_condition(R, rho)]
                if sum(conds) == 2:
                    failures.append({"check": "two-implies-three", "rack": R.to_json(), "rho": rho})
            for rho in goods.involutions:
                if not anti_condition(R, rho):
                    failures.append({"check": "good-is-anti", "rack": R.to_json(), "rho": list(rho)})
        try:
            report = bound_report(conj_full(G), aut_cap=0)
            report_core = bound_report(G, core, aut_cap=0)
            if not (report.holds() and report_core.holds()):
                raise AssertionError
        except AssertionError:
            failures.append({"check": "bounds", "group": name})
    return failures


def cmd_verify(args) -> int:
    if args.max_order is None:
        args.max_order = 8
    failures = verify(args.max_order, seed=args.seed)
    if failures:
        witness = min(failures, key=lambda f: len(json.dumps(f)))
        print(json.dumps({"status": "fail", "failures": len(failures), "witness": witness}, indent=1))
        return EXIT_FAIL
    print(json.dumps({"status": "ok", "max_group_order": args.max_order}))
    return EXIT_OK


# ---------------------------------------------------------------------------
# scanners
# ---------------------------------------------------------------------------

def scan_conjecture(max_order: int, opt_in: bool = False) -> tuple[int, list]:
    """Connected noninvolutory quandles with two or more good involutions."""
    scanned, hits = 0, []
    for n in range(1, max_order + 1):
        for Q in enumerate_racks(n, "quandle", opt_in=opt_in):
            f = classify_rack(Q)
            if not f.is_connected or f.is_involutory:
                continue
            scanned += 1
            goods = good_involutions_oracle(Q, cap=None)
            if len(goods) >= 2:
                hits.append({"rack": Q.to_json(), "count": len(goods)})
    return scanned, hits


def cmd_scan_conjecture(args) -> int:
    max_order = 6 if args.max_order is None else args.max_order
    if max_order > 6 and not args.opt_in_order8:
        raise UsageError("orders above 6 need --opt-in-order8")
    scanned, hits = scan_conjecture(max_order, opt_in=args.opt_in_order8)
    print(json.dumps({"max_order": max_order, "scanned": scanned, "counterexamples": hits}, indent=1))
    return EXIT_FAIL if hits else EXIT_OK


def triple_report(max_order: int = 22) -> list[dict]:
    """Groups the conjugation-quandle counts by (order, |Z(G)|, classes) and
    flags triples whose groups disagree on the count."""
    from .groups import center, conjugacy_classes

    buckets = defaultdict(list)
    for r in conj_rows(max_order):
        G = make_named_group(r["group"])
        buckets[(G.order, len(center(G)), len(conjugacy_classes(G)))].append((r["group"], r["good"]))
    out = []
    for (n, z, k), members in sorted(buckets.items()):
        out.append({"order": n, "center": z, "classes": k,
                    "groups": [m[0] for m in members], "counts": [m[1] for m in members],
                    "collision": len({m[1] for m in members}) > 1})
    return out


def strictness_report(max_order: int = 22) -> list[dict]:
    """Whether the count is strictly below ``|Z(H)|^k`` when both factors are at least 2."""
    from .groups import center, conjugacy_classes

    out = []
    for r in conj_rows(max_order):
        G = make_named_group(r["group"])
        z, k = len(center(G)), len(conjugacy_classes(G))
        if z >= 2 and k >= 2:
            out.append({"group": r["group"], "good": r["good"], "bound": r["bound"],
                        "strict": r["good"] < r["bound"]})
    return out


def cmd_report(args) -> int:
    max_order = 22 if args.max_order is None else args.max_order
    if args.which == "triples":
        rows = triple_report(max_order)
        cols = ["order", "center", "classes", "groups", "counts", "collision"]
    else:
        rows = strictness_report(max_order)
        cols = ["group", "good", "bound", "strict"]
    print(render(rows, cols, args.format))
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser):
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--format", choices=["csv", "json", "text"], default="text")
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--opt-in-order8", action="store_true",
                   help="allow the long enumeration runs at orders 7 and 8")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symracks", description="Good involutions of finite racks.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", help="reproduce a data table")
    p.add_argument("which", choices=["conj", "core", "census", "legendrian", "class-sizes"])
    p.add_argument("--compare", action="store_true", help="add reference values and a match column")
    _common(p)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("good", help="good involutions of one rack")
    p.add_argument("descriptor", help='e.g. "conj:D4", "core:Z4xZ2", "galkin:Z2:1", "dihedral:7"')
    p.add_argument("--method", choices=["auto", "oracle", "alg1", "alg2"], default="auto")
    p.add_argument("--show", type=int, default=16, help="list mappings when at most this many")
    _common(p)
    p.set_defaults(func=cmd_good)

    p = sub.add_parser("census", help="symmetric or Legendrian census")
    p.add_argument("--table", choices=["symmetric", "legendrian"], default="symmetric")
    p.add_argument("--compare", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("class-sizes", help="selected conjugacy class sizes of S_n")
    p.add_argument("n", type=int, nargs="*")
    _common(p)
    p.set_defaults(func=cmd_class_sizes)

    p = sub.add_parser("verify", help="algorithms against the oracle, plus invariants")
    p.add_argument("--seed", type=int, default=0)
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan-conjecture",
                       help="connected noninvolutory quandles with two or more good involutions")
    _common(p)
    p.set_defaults(func=cmd_scan_conjecture)

    p = sub.add_parser("report", help="data reports on the conjugation-quandle counts")
    p.add_argument("which", choices=["triples", "strictness"])
    _common(p)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, InvalidParameter, UnsupportedFamily, InvalidN, SizeCap, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
