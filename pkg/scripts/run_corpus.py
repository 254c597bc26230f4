#!/usr/bin/env python3
"""Solve a seeded corpus, check every certificate, compare against the exact optimum.

Writes one JSON line per instance and prints a summary of |X|/beta and
|X|(m-2)/gamma.  Example::

    python3 scripts/run_corpus.py --count 240 --out corpus.jsonl
"""
from __future__ import annotations

import argparse
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass
from fractions import Fraction

from mfree_fas import exact_fas_size, gamma, solve, verify_certificate
from mfree_fas.generators import corpus


@dataclass(frozen=True)
class CorpusRun:
    count: int = 240
    seed: int = 2024
    n_min: int = 8
    n_max: int = 40
    ms: tuple = (4, 5, 6)
    exact_guard: int = 18


def run(cfg: CorpusRun):
    rows = []
    for spec in corpus(cfg.count, cfg.seed, cfg.n_min, cfg.n_max, cfg.ms):
        g = spec.build()
        t0 = time.perf_counter()
        result = solve(g, spec.m)
        elapsed = time.perf_counter() - t0
        beta = exact_fas_size(g, cfg.exact_guard) if g.n <= cfg.exact_guard else None
        rows.append({
            **spec.to_dict(), "edges": g.num_edges, "gamma": gamma(g), "fas_size": result.size,
            "exact_beta": beta, "certificate_ok": not verify_certificate(g, spec.m, result),
            "solve_ms": round(elapsed * 1000, 3),
        })
    return rows


def summarize(rows) -> list[str]:
    vs_opt = Counter(str(Fraction(r["fas_size"], r["exact_beta"]))
                     for r in rows if r["exact_beta"])
    vs_bound = [Fraction(r["fas_size"] * (r["m"] - 2), r["gamma"]) for r in rows if r["gamma"]]
    return [
        f"instances: {len(rows)}",
        f"certificates ok: {sum(r['certificate_ok'] for r in rows)}",
        f"total solve time: {sum(r['solve_ms'] for r in rows):.1f} ms",
        f"|X|/beta: {dict(sorted(vs_opt.items()))}",
        f"max |X|(m-2)/gamma: {max(vs_bound) if vs_bound else '-'}",
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    defaults = CorpusRun()
    ap.add_argument("--count", type=int, default=defaults.count)
    ap.add_argument("--seed", type=int, default=defaults.seed)
    ap.add_argument("--n-min", type=int, default=defaults.n_min)
    ap.add_argument("--n-max", type=int, default=defaults.n_max)
    ap.add_argument("--exact-guard", type=int, default=defaults.exact_guard)
    ap.add_argument("--out", help="JSON-lines output path")
    a = ap.parse_args()
    cfg = CorpusRun(a.count, a.seed, a.n_min, a.n_max, exact_guard=a.exact_guard)
    rows = run(cfg)
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(json.dumps({"config": asdict(cfg)}) + "\n")
            for r in rows:
                fh.write(json.dumps(r) + "\n")
    print("\n".join(summarize(rows)))


if __name__ == "__main__":
    main()
