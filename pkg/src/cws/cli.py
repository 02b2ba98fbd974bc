"""Command-line frontend.

Exit codes: 0 for a yes answer (or success), 1 for a no answer (or a failed
check), 2 for any error.  Standard output depends only on the inputs, the seed
and the repeat count; wall-clock times go to standard error, except in
``bench`` whose purpose is timing.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from .battery import random_formula
from .cnf import CnfFormula, parse_dimacs
from .cutcount import DEFAULT_REPEATS
from .graph import Arrangement, Graph, GraphError, cutwidth_of, exact_cutwidth
from .io import format_arrangement, format_graph, parse_arrangement, parse_graph
from .oracles import LimitExceeded, brute_sat, brute_solve, size_limit
from .reductions import GENERATORS, ReductionOutput, generate, validate_structure
from .solve import SOLVERS, solve

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2

ORACLE_PROBLEMS = ("cvc", "cds", "oct", "fvs", "st", "coct", "sat", "nae")


class CliError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(args) -> tuple[Graph, Arrangement | None]:
    g = parse_graph(_read(args.graph))
    order = None
    if getattr(args, "arrangement", None):
        order = parse_arrangement(_read(args.arrangement), g.n)
    return g, order


def _emit(record: dict, fmt: str) -> None:
    out = sys.stdout
    if fmt == "jsonl":
        out.write(json.dumps(record, sort_keys=True) + "\n")
    else:
        for key, value in record.items():
            if isinstance(value, bool):
                value = "yes" if value else "no"
            elif isinstance(value, (list, tuple)):
                value = " ".join(map(str, value))
            out.write(f"{key}={value}\n")


def _elapsed(start: float) -> None:
    sys.stderr.write(f"elapsed={time.perf_counter() - start:.6f}s\n")


# Subcommands

def cmd_solve(args) -> int:
    g, order = _load_graph(args)
    start = time.perf_counter()
    res = solve(args.problem, g, order, args.k, seed=args.seed, repeats=args.repeats)
    record = {
        "answer": res.answer,
        "problem": res.problem,
        "n": g.n,
        "m": g.m,
        "k": args.k,
        "ctw": res.ctw,
        "seed": args.seed,
        "repeats": args.repeats if args.problem != "oct" else 1,
        "repeats_run": res.repeats_run,
        "max_support": res.max_support,
    }
    _emit(record, args.format)
    _elapsed(start)
    return EXIT_YES if res.answer else EXIT_NO


def cmd_oracle(args) -> int:
    start = time.perf_counter()
    if args.problem in ("sat", "nae"):
        if not args.cnf:
            raise CliError("--cnf is required for sat and nae")
        f = parse_dimacs(_read(args.cnf))
        ok, bits = brute_sat(f, args.problem, limit=size_limit(24))
        record = {"answer": ok, "problem": args.problem, "n": f.n, "m": f.m}
        if ok:
            record["assignment"] = [(i + 1) if b else -(i + 1) for i, b in enumerate(bits)]
    else:
        if not args.graph or args.k is None:
            raise CliError("--graph and --k are required for graph problems")
        g, _ = _load_graph(args)
        terminals = [int(t) - 1 for t in args.terminals.split()] if args.terminals else []
        ok, wit = brute_solve(args.problem, g, args.k, terminals)
        record = {"answer": ok, "problem": args.problem, "n": g.n, "m": g.m, "k": args.k}
        if ok:
            record["witness"] = sorted(v + 1 for v in wit)
    _emit(record, args.format)
    _elapsed(start)
    return EXIT_YES if ok else EXIT_NO


def _sidecar(out: ReductionOutput) -> dict:
    return {
        "problem": out.problem,
        "cnf": out.formula.to_dimacs(),
        "budget": out.budget,
        "claimed_bound": out.claimed_bound,
        "closed_form": out.closed_form,
        "reference_budget": out.reference_budget,
        "params": out.params,
        "names": [list(name) for name in out.names],
        "terminals": [v + 1 for v in out.terminals],
        "packing": [[sorted(v + 1 for v in comp), p] for comp, p in out.packing],
    }


def _jsonable_name(name) -> tuple:
    return tuple(tuple(x) if isinstance(x, list) else x for x in name)


def load_instance(prefix: str) -> ReductionOutput:
    """Rebuild a generated instance from the files written by ``generate``."""
    g = parse_graph(_read(prefix + ".graph"))
    order = parse_arrangement(_read(prefix + ".ord"), g.n)
    try:
        budget = int(_read(prefix + ".budget").strip())
        meta = json.loads(_read(prefix + ".json"))
    except (ValueError, json.JSONDecodeError) as exc:
        raise CliError(f"malformed instance files: {exc}") from None
    return ReductionOutput(
        problem=meta["problem"],
        formula=parse_dimacs(meta["cnf"]),
        graph=g,
        arrangement=order,
        budget=budget,
        claimed_bound=meta["claimed_bound"],
        names=tuple(_jsonable_name(nm) for nm in meta["names"]),
        terminals=tuple(v - 1 for v in meta["terminals"]),
        packing=tuple((frozenset(v - 1 for v in comp), p) for comp, p in meta["packing"]),
        closed_form=meta["closed_form"],
        reference_budget=meta["reference_budget"],
        params=meta["params"],
    )


def cmd_generate(args) -> int:
    f = parse_dimacs(_read(args.cnf))
    out = generate(args.problem, f, args.d, args.t0)
    prefix = args.out
    Path(prefix).parent.mkdir(parents=True, exist_ok=True)
    Path(prefix + ".graph").write_text(format_graph(out.graph))
    Path(prefix + ".ord").write_text(format_arrangement(out.arrangement))
    Path(prefix + ".budget").write_text(f"{out.budget}\n")
    extras = ["c terminals (1-indexed)", " ".join(str(v + 1) for v in out.terminals)]
    Path(prefix + ".extras").write_text("\n".join(extras) + "\n")
    Path(prefix + ".json").write_text(json.dumps(_sidecar(out), sort_keys=True, indent=1) + "\n")
    record = {
        "problem": out.problem,
        "n": out.graph.n,
        "m": out.graph.m,
        "budget": out.budget,
        "ctw": cutwidth_of(out.graph, out.arrangement),
        "claimed_bound": out.claimed_bound,
        "prefix": prefix,
    }
    _emit(record, args.format)
    return EXIT_YES


def cmd_verify(args) -> int:
    out = load_instance(args.prefix)
    rep = validate_structure(out)
    if args.format == "jsonl":
        for name, (ok, detail) in rep.checks.items():
            _emit({"check": name, "ok": ok, "detail": detail}, "jsonl")
        _emit({"check": "all", "ok": rep.ok, "detail": ""}, "jsonl")
    else:
        for name, (ok, detail) in rep.checks.items():
            sys.stdout.write(f"{name}={'ok' if ok else 'FAIL'}" + (f" ({detail})" if detail else "") + "\n")
        sys.stdout.write(f"valid={'yes' if rep.ok else 'no'}\n")
    return EXIT_YES if rep.ok else EXIT_NO


def cmd_cutwidth(args) -> int:
    g, order = _load_graph(args)
    if order is not None:
        record = {"cutwidth": cutwidth_of(g, order), "exact": False}
    else:
        width, best = exact_cutwidth(g, limit=size_limit())
        record = {"cutwidth": width, "exact": True, "order": [v + 1 for v in best.order]}
    _emit(record, args.format)
    return EXIT_YES


# Benchmark families: (instance id, problem, formula).
def bench_family(name: str, sizes: Sequence[int] | None = None, seed: int = 0) -> list[tuple[str, str, CnfFormula]]:
    import random

    if name == "cvc":
        sizes = range(2, 6) if sizes is None else sizes
        rng = random.Random(f"bench/cvc/{seed}")
        return [(f"cvc-n{n}", "cvc", random_formula(rng, n, 1, min_width=min(3, n))) for n in sizes]
    if name == "oct":
        sizes = range(2, 7) if sizes is None else sizes
        rng = random.Random(f"bench/oct/{seed}")
        return [(f"oct-n{n}", "oct", random_formula(rng, n, 2, min_width=2)) for n in sizes]
    raise CliError(f"unknown bench family {name!r}; expected cvc or oct")


def run_bench(family: list[tuple[str, str, CnfFormula]], seed: int = 0, repeats: int = 1) -> list[dict]:
    rows = []
    for ident, problem, f in family:
        out = generate(problem, f, 3)
        start = time.perf_counter()
        res = solve(problem, out.graph, out.arrangement, out.budget, seed=seed, repeats=repeats)
        wall = time.perf_counter() - start
        rows.append({
            "id": ident,
            "ctw": res.ctw,
            "pw": res.pw,
            "wall": round(wall, 6),
            "support": res.max_support,
            "support_bound": res.support_bound,
            "answer": res.answer,
        })
    return rows


def cmd_bench(args) -> int:
    sizes = None
    if args.sizes is not None:
        sizes = [int(x) for x in args.sizes.split(",") if x.strip()]
    for row in run_bench(bench_family(args.family, sizes, args.seed), args.seed, args.repeats):
        _emit(row, "jsonl")
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cws", description="Cutwidth-parameterized solvers and instance generators.")
    p.add_argument("--version", action="version", version=f"cws {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("text", "jsonl"), default="text", help="output format")

    s = sub.add_parser("solve", help="decide a problem on a graph with a given arrangement")
    s.add_argument("problem", choices=SOLVERS)
    s.add_argument("--graph", required=True)
    s.add_argument("--arrangement", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--repeats", type=int, default=DEFAULT_REPEATS)
    fmt(s)
    s.set_defaults(func=cmd_solve)

    o = sub.add_parser("oracle", help="brute-force answer (size limit from CWS_LIMIT)")
    o.add_argument("problem", choices=ORACLE_PROBLEMS)
    o.add_argument("--graph")
    o.add_argument("--k", type=int)
    o.add_argument("--terminals", help="space-separated 1-indexed terminals (st)")
    o.add_argument("--cnf")
    fmt(o)
    o.set_defaults(func=cmd_oracle)

    gsp = sub.add_parser("generate", help="build a hardness instance from a CNF formula")
    gsp.add_argument("problem", choices=sorted(GENERATORS))
    gsp.add_argument("--cnf", required=True)
    gsp.add_argument("--d", type=int)
    gsp.add_argument("--t0", type=int, default=1)
    gsp.add_argument("--out", required=True, help="output prefix")
    fmt(gsp)
    gsp.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify-instance", help="structural checks on a generated instance")
    v.add_argument("prefix")
    fmt(v)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("cutwidth", help="cutwidth of an arrangement, or the exact cutwidth")
    c.add_argument("--graph", required=True)
    c.add_argument("--arrangement")
    fmt(c)
    c.set_defaults(func=cmd_cutwidth)

    b = sub.add_parser("bench", help="timing table as JSON lines")
    b.add_argument("family", choices=("cvc", "oct"))
    b.add_argument("--sizes", help="comma-separated variable counts; empty gives an empty table")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--repeats", type=int, default=1)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (CliError, GraphError, LimitExceeded, ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
