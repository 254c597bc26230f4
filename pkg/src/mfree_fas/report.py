"""Edge-list files and JSON reports.

Edge-list format::

    # comments run from '#' to end of line; blank lines are ignored
    n 6 m_edges 6
    0 1
    1 2
    ...

The report is a JSON object whose keys are listed in ``REPORT_FIELDS``.
Trace nodes nest depth-first: each node is an object with ``kind`` equal
to ``"base"``, ``"trim"`` or ``"split"``.  Bound quantities are integers
or ``"a/b"`` strings; nothing is rendered as a float.
"""
from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction

from .digraph import Digraph, GraphError
from .generators import GenSpec
from .layers import Side
from .solver import BaseNode, Candidate, FasResult, SplitNode, TraceNode, TrimNode

REPORT_FIELDS = (
    "input_digest", "m", "n", "edge_count", "gamma", "girth", "fas_size", "bound_value",
    "certificate_ok", "exact_beta", "fas_edges", "trace", "generator",
)

_HEADER = re.compile(r"n\s+(\d+)\s+m_edges\s+(\d+)")
_EDGE = re.compile(r"(-?\d+)\s+(-?\d+)")
_GENSPEC_TAG = "genspec "


class ParseError(ValueError):
    pass


def parse_edge_list(text: str) -> tuple[Digraph, GenSpec | None]:
    spec = None
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, _, comment = raw.partition("#")
        comment = comment.strip()
        if comment.startswith(_GENSPEC_TAG):
            try:
                spec = GenSpec.from_dict(json.loads(comment[len(_GENSPEC_TAG):]))
            except (ValueError, KeyError) as exc:
                raise ParseError(f"line {lineno}: bad genspec comment: {exc}") from None
        body = body.strip()
        if body:
            lines.append((lineno, body))
    if not lines:
        raise ParseError("missing header line 'n <N> m_edges <M>'")
    lineno, header = lines[0]
    hm = _HEADER.fullmatch(header)
    if not hm:
        raise ParseError(f"line {lineno}: malformed header {header!r}")
    n, m_edges = int(hm.group(1)), int(hm.group(2))
    if len(lines) - 1 != m_edges:
        raise ParseError(f"header declares {m_edges} edges, found {len(lines) - 1}")
    edges = []
    for lineno, body in lines[1:]:
        em = _EDGE.fullmatch(body)
        if not em:
            raise ParseError(f"line {lineno}: malformed edge {body!r}")
        edges.append((int(em.group(1)), int(em.group(2))))
    try:
        return Digraph.build(n, edges), spec
    except GraphError as exc:
        raise ParseError(str(exc)) from None


def render_edge_list(g: Digraph, spec: GenSpec | None = None, comments=()) -> str:
    out = [f"# {c}" for c in comments]
    if spec is not None:
        out.append(f"# {spec.describe()}")
        out.append(f"# {_GENSPEC_TAG}{json.dumps(spec.to_dict(), sort_keys=True)}")
    out.append(f"n {g.n} m_edges {g.num_edges}")
    out.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(out) + "\n"


def digest(g: Digraph) -> str:
    canonical = render_edge_list(g).encode()
    return "sha256:" + hashlib.sha256(canonical).hexdigest()


def fraction_str(num: int, den: int) -> str:
    if den == 0:
        return "0" if num == 0 else "inf"
    f = Fraction(num, den)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def trace_to_dict(node: TraceNode) -> dict:
    if isinstance(node, BaseNode):
        return {"kind": "base", "vertices": list(node.vertices)}
    if isinstance(node, TrimNode):
        return {"kind": "trim", "removed": list(node.removed), "child": trace_to_dict(node.child)}
    c = node.candidate
    return {
        "kind": "split",
        "candidate": {"v": c.v, "k": c.k, "side": c.side.value, "numerator": c.numerator,
                      "denominator": c.denominator, "ratio": f"{c.numerator}/{c.denominator}"},
        "V1": list(node.v1),
        "V2": list(node.v2),
        "X3": [list(e) for e in node.x3],
        "missing_between": node.missing,
        "gamma": node.gamma,
        "gamma_1": node.gamma_1,
        "gamma_2": node.gamma_2,
        "children": [trace_to_dict(ch) for ch in node.children],
    }


def trace_from_dict(d: dict) -> TraceNode:
    kind = d["kind"]
    if kind == "base":
        return BaseNode(list(d["vertices"]))
    if kind == "trim":
        return TrimNode(list(d["removed"]), trace_from_dict(d["child"]))
    if kind != "split":
        raise ValueError(f"unknown trace node kind {kind!r}")
    c = d["candidate"]
    cand = Candidate(c["v"], int(c["k"]), Side(c["side"]), int(c["numerator"]), int(c["denominator"]))
    return SplitNode(cand, list(d["V1"]), list(d["V2"]), [tuple(e) for e in d["X3"]],
                     int(d["missing_between"]), int(d["gamma"]), int(d["gamma_1"]),
                     int(d["gamma_2"]), [trace_from_dict(ch) for ch in d["children"]])


def build_report(g: Digraph, m: int, result: FasResult, certificate_ok: bool, *,
                 girth_len: int | None, exact_beta: int | None = None,
                 generator: GenSpec | None = None, timing: dict | None = None) -> dict:
    rep = {
        "input_digest": digest(g),
        "m": m,
        "n": g.n,
        "edge_count": g.num_edges,
        "gamma": result.gamma_input,
        "girth": girth_len,
        "fas_size": result.size,
        "bound_value": result.gamma_input // (m - 2),
        "certificate_ok": certificate_ok,
        "exact_beta": exact_beta,
        "fas_edges": [list(e) for e in result.edges],
        "trace": trace_to_dict(result.trace),
        "generator": None if generator is None else generator.to_dict(),
    }
    if timing is not None:
        rep["wall_time_ms"] = timing
    return rep


def result_from_report(rep: dict) -> FasResult:
    if "trace" not in rep or rep["trace"] is None:
        raise KeyError("report has no trace")
    return FasResult([tuple(e) for e in rep.get("fas_edges", [])], trace_from_dict(rep["trace"]),
                     int(rep["m"]), int(rep["gamma"]))


def dumps(rep: dict) -> str:
    return json.dumps(rep, indent=2, ensure_ascii=False) + "\n"
