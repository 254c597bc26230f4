"""Command-line entry point: ``mfree-fas {solve,verify,exact,stats,gen,bench}``.

Exit codes: 0 ok, 1 certificate violations, 2 input not m-free, 3 parse
error, 4 unsupported m, 5 graph too large for the exact solver, 64 usage
error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import digraph as dg
from .exact import TooLarge, exact_fas_edges, exact_fas_size
from .generators import MODELS, GenSpec, corpus
from .layers import Side, in_layers, out_layers, side_profile
from .pathstats import ExactRatio, NotMFree, s_exact, t_exact, triple_stats
from .report import (ParseError, build_report, dumps, fraction_str, parse_edge_list,
                     render_edge_list, result_from_report)
from .solver import UnsupportedM, solve, verify_certificate

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_NOT_M_FREE = 2
EXIT_PARSE = 3
EXIT_UNSUPPORTED_M = 4
EXIT_TOO_LARGE = 5
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _read_graph(path):
    try:
        text = Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    return parse_edge_list(text)


def _write(text: str, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _girth_len(g):
    found = dg.girth(g)
    return None if found is None else found[0]


def cmd_solve(args) -> int:
    g, spec = _read_graph(args.input)
    t0 = time.perf_counter()
    result = solve(g, args.m, jobs=args.jobs)
    t1 = time.perf_counter()
    problems = verify_certificate(g, args.m, result)
    t2 = time.perf_counter()
    beta = None
    if args.with_exact and g.n <= args.guard_exact:
        beta = exact_fas_size(g, args.guard_exact)
    timing = None
    if args.timing:
        timing = {"solve": round((t1 - t0) * 1000), "verify": round((t2 - t1) * 1000)}
    rep = build_report(g, args.m, result, not problems, girth_len=_girth_len(g),
                       exact_beta=beta, generator=spec, timing=timing)
    _write(dumps(rep), args.output)
    for p in problems:
        print(p, file=sys.stderr)
    return EXIT_OK if not problems else EXIT_VIOLATIONS


def cmd_verify(args) -> int:
    g, _ = _read_graph(args.input)
    try:
        rep = json.loads(Path(args.report).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot load report {args.report}: {exc}") from None
    try:
        result = result_from_report(rep)
    except KeyError as exc:
        raise UsageError(f"report is missing a field: {exc}") from None
    m = args.m if args.m is not None else result.m
    problems = []
    if result.m != m:
        problems.append(f"report m={result.m} differs from --m {m}")
    if rep.get("fas_size") != len(result.edges):
        problems.append(f"fas_size={rep.get('fas_size')} but {len(result.edges)} edges listed")
    problems += verify_certificate(g, m, result)
    for p in problems:
        print(p)
    if not problems:
        print("certificate ok")
    return EXIT_OK if not problems else EXIT_VIOLATIONS


def cmd_exact(args) -> int:
    g, _ = _read_graph(args.input)
    t0 = time.perf_counter()
    beta = exact_fas_size(g, args.guard_exact)
    witness = g.labelled_edges(exact_fas_edges(g, args.guard_exact))
    rep = {"n": g.n, "edge_count": g.num_edges, "gamma": dg.gamma(g), "exact_beta": beta,
           "exact_witness": [list(e) for e in witness]}
    if args.timing:
        rep["wall_time_ms"] = {"exact": round((time.perf_counter() - t0) * 1000)}
    _write(dumps(rep), args.output)
    return EXIT_OK


def stats_table(g, m: int, vertex=None, enum_guard: int = 16) -> list[str]:
    """Rows of per-(v, k) layer counts and ratios for the trimmed graph."""
    witness = dg.check_m_free(g, m)
    if witness is not None:
        raise NotMFree(witness, m)
    h, removed = dg.trim(g)
    lines = [f"# trimmed {len(removed)} vertices; {h.n} remain"]
    index = h.index_of()
    if vertex is not None:
        if vertex not in index:
            lines.append(f"# vertex {vertex} was trimmed")
            return lines
        verts = [index[vertex]]
    else:
        verts = range(h.n)
    exact = triple_stats(h, m) if 0 < h.n <= enum_guard else None
    lines.append("v\tk\t|N+_i|\t|N-_i|\tp\ts_sur\tr'\tt_sur\ts\tt\talpha\tbeta")
    best = None
    for v in verts:
        outs = [len(x) for x in out_layers(h, v, m - 1).layers[1:]]
        ins = [len(x) for x in in_layers(h, v, m - 1).layers[1:]]
        p, s_sur = side_profile(h, v, m, Side.OUT)
        rp, t_sur = side_profile(h, v, m, Side.IN)
        for k in range(1, m - 2):
            i = k - 1
            s = t = "-"
            if exact is not None:
                s, t = s_exact(exact, v, k), t_exact(exact, v, k)
            lines.append("\t".join(map(str, (
                h.labels[v], k, ",".join(map(str, outs)), ",".join(map(str, ins)),
                p[i], s_sur[i], rp[i], t_sur[i], s, t,
                fraction_str(p[i], s_sur[i]) if s_sur[i] else "-",
                fraction_str(rp[i], t_sur[i]) if t_sur[i] else "-"))))
            for side, num, den in ((Side.OUT, p[i], s_sur[i]), (Side.IN, rp[i], t_sur[i])):
                if den == 0:
                    continue
                key = (ExactRatio(num, den), side is Side.IN, v, k)
                if best is None or key[0] < best[0] or (
                        key[0].same_value(best[0]) and key[1:] < best[1:]):
                    best = key
    if best is not None:
        r, is_in, v, k = best
        side = "in" if is_in else "out"
        lines.append(f"# min ratio {fraction_str(r.numerator, r.denominator)} "
                     f"at v={h.labels[v]} k={k} side={side}")
    return lines


def cmd_stats(args) -> int:
    g, _ = _read_graph(args.input)
    if args.m < 4:
        raise UnsupportedM(f"m={args.m}: need m >= 4")
    if args.vertex is not None and not 0 <= args.vertex < g.n:
        raise UsageError(f"vertex {args.vertex} out of range [0, {g.n})")
    _write("\n".join(stats_table(g, args.m, args.vertex, args.guard_enum)) + "\n", args.output)
    return EXIT_OK


def _parse_ints(text):
    if not text:
        return ()
    return tuple(int(x) for x in text.split(","))


def cmd_gen(args) -> int:
    sizes = _parse_ints(args.sizes)
    n = args.n if args.n is not None else (sum(sizes) if sizes else None)
    if n is None:
        raise UsageError("--n is required")
    if sizes and n != sum(sizes):
        raise UsageError(f"--n {n} does not match class sizes summing to {sum(sizes)}")
    try:
        spec = GenSpec(args.model, n, args.m, args.seed, steps=_parse_ints(args.steps),
                       sizes=sizes, p=str(Fraction(args.p)))
        g = spec.build()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(render_edge_list(g, spec), args.output)
    return EXIT_OK


def _bench_row(job):
    spec, guard = job
    g = spec.build()
    result = solve(g, spec.m)
    ok = not verify_certificate(g, spec.m, result)
    beta = exact_fas_size(g, guard) if g.n <= guard else None
    gam = result.gamma_input
    return {
        "model": spec.model, "n": g.n, "m": spec.m, "seed": spec.seed,
        "edges": g.num_edges, "gamma": gam, "fas_size": result.size,
        "bound_value": gam // (spec.m - 2), "exact_beta": beta,
        "ratio": fraction_str(result.size * (spec.m - 2), gam) if gam else "-",
        "certificate_ok": ok,
    }


def bench_rows(specs, guard: int, jobs: int = 1) -> list[dict]:
    work = [(s, guard) for s in specs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_bench_row, work))
    else:
        rows = [_bench_row(w) for w in work]
    rows.sort(key=lambda r: (r["model"], r["n"], r["seed"]))
    return rows


def cmd_bench(args) -> int:
    n_min = args.n if args.n is not None else args.n_min
    n_max = args.n if args.n is not None else args.n_max
    ms = (args.m,) if args.m is not None else (4, 5, 6)
    models = tuple(args.models.split(",")) if args.models else MODELS
    specs = corpus(args.count, args.seed, n_min, n_max, ms, models)
    rows = bench_rows(specs, args.guard_exact, args.jobs)
    cols = ["model", "n", "m", "seed", "edges", "gamma", "fas_size", "bound_value",
            "exact_beta", "ratio", "certificate_ok"]
    out = ["\t".join(cols)]
    for r in rows:
        out.append("\t".join("-" if r[c] is None else str(r[c]) for c in cols))
    _write("\n".join(out) + "\n", args.output)
    return EXIT_OK if all(r["certificate_ok"] for r in rows) else EXIT_VIOLATIONS


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mfree-fas", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, m_required=False):
        p.add_argument("--input", "-i", required=True)
        p.add_argument("--output", "-o")
        p.add_argument("--m", type=int, required=m_required)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--guard-exact", type=int, default=20)
        p.add_argument("--timing", action="store_true", help="add wall-time fields to the output")

    p = sub.add_parser("solve", help="compute a certified feedback arc set")
    common(p, m_required=True)
    p.add_argument("--with-exact", action="store_true", help="also report exact beta if n <= guard")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="replay the certificate in a solve report")
    common(p)
    p.add_argument("--report", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("exact", help="exact minimum feedback arc set")
    common(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("stats", help="per-vertex layer counts and ratios")
    common(p, m_required=True)
    p.add_argument("--vertex", type=int)
    p.add_argument("--guard-enum", type=int, default=16, help="max n for exact path statistics")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("gen", help="write a generated m-free digraph")
    p.add_argument("--model", choices=MODELS, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", help="circulant steps, comma separated")
    p.add_argument("--sizes", help="blow-up class sizes, comma separated")
    p.add_argument("--p", default="0", help="edge probability, e.g. 3/10")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="solve a seeded corpus and tabulate")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int, help="fix n for every instance")
    p.add_argument("--n-min", type=int, default=8)
    p.add_argument("--n-max", type=int, default=40)
    p.add_argument("--models", help=f"comma separated subset of {','.join(MODELS)}")
    p.add_argument("--guard-exact", type=int, default=20)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotMFree as exc:
        print(f"not {exc.m}-free: cycle {' '.join(map(str, exc.witness.vertices))}", file=sys.stderr)
        return EXIT_NOT_M_FREE
    except UnsupportedM as exc:
        print(f"unsupported m: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED_M
    except TooLarge as exc:
        print(f"too large: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
