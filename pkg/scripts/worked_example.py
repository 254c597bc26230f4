#!/usr/bin/env python3
"""Walk the solver through a directed cycle and print every decision.

    python3 scripts/worked_example.py --n 6 --m 4
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from mfree_fas import gamma, solve, verify_certificate
from mfree_fas.cli import stats_table
from mfree_fas.generators import gen_cycle
from mfree_fas.solver import BaseNode, SplitNode, TrimNode


@dataclass(frozen=True)
class Example:
    n: int = 6
    m: int = 4


def describe(node, depth=0) -> list[str]:
    pad = "  " * depth
    if isinstance(node, BaseNode):
        return [f"{pad}base: acyclic on {node.vertices}"]
    if isinstance(node, TrimNode):
        return [f"{pad}trim: removed {node.removed}"] + describe(node.child, depth + 1)
    c = node.candidate
    lines = [
        f"{pad}split at v={c.v} k={c.k} side={c.side.value} ratio={c.numerator}/{c.denominator}",
        f"{pad}  V1={node.v1} V2={node.v2} X3={node.x3}",
        f"{pad}  gamma {node.gamma} = {node.gamma_1} + {node.gamma_2} + {node.missing}",
    ]
    for ch in node.children:
        lines += describe(ch, depth + 1)
    return lines


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=Example.n)
    ap.add_argument("--m", type=int, default=Example.m)
    a = ap.parse_args()
    ex = Example(a.n, a.m)
    g = gen_cycle(ex.n)
    print("\n".join(stats_table(g, ex.m)))
    r = solve(g, ex.m)
    print("\n".join(describe(r.trace)))
    print(f"X={r.edges}  (m-2)|X|={(ex.m - 2) * r.size} <= gamma={gamma(g)}")
    problems = verify_certificate(g, ex.m, r)
    print("certificate ok" if not problems else "\n".join(problems))


if __name__ == "__main__":
    main()
