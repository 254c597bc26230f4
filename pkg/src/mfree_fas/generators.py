"""Seeded generators of m-free digraphs.

Random draws come from numpy's PCG64 bit generator seeded with the given
64-bit integer; only ``random_raw`` 64-bit outputs are consumed, so a
(spec, seed) pair pins the output on every platform.  Edge sampling visits
ordered pairs (u, v), u != v, in row-major order, one draw per pair, and
keeps the pair iff ``draw * den < num * 2**64`` for p = num/den.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .digraph import Digraph, girth

MODELS = ("cycle", "circulant", "blowup", "er_repair")


class BadStep(ValueError):
    pass


class BadSizes(ValueError):
    pass


def rng_stream(seed: int) -> np.random.PCG64:
    return np.random.PCG64(seed & (2**64 - 1))


def _draw(bitgen: np.random.PCG64) -> int:
    return int(bitgen.random_raw())


def _below(bitgen, bound: int) -> int:
    """Uniform integer in [0, bound) by rejection on raw 64-bit draws."""
    limit = (2**64 // bound) * bound
    while True:
        x = _draw(bitgen)
        if x < limit:
            return x % bound


def gen_cycle(n: int) -> Digraph:
    if n < 2:
        raise ValueError("cycle needs n >= 2")
    return Digraph.build(n, [(i, (i + 1) % n) for i in range(n)])


def gen_circulant(n: int, steps) -> Digraph:
    steps = list(steps)
    if not steps or len(set(steps)) != len(steps) or any(not 1 <= s <= n - 1 for s in steps):
        raise BadStep(f"steps {steps} must be distinct and in [1, {n - 1}]")
    return Digraph.build(n, sorted({(i, (i + s) % n) for i in range(n) for s in steps}))


def gen_blowup(base_len: int, sizes, seed: int | None = None) -> Digraph:
    """Blow each vertex of C_base_len up into an independent class; every
    vertex of class i points to every vertex of class i+1.

    With a seed, vertex ids are shuffled by a seeded Fisher-Yates pass.
    """
    sizes = list(sizes)
    if base_len < 3:
        raise ValueError("base_len must be >= 3")
    if len(sizes) != base_len or any(s < 1 for s in sizes):
        raise BadSizes(f"need {base_len} positive class sizes, got {sizes}")
    starts = np.cumsum([0] + sizes).tolist()
    classes = [list(range(starts[i], starts[i + 1])) for i in range(base_len)]
    n = starts[-1]
    perm = list(range(n))
    if seed is not None:
        bg = rng_stream(seed)
        for i in range(n - 1, 0, -1):
            j = _below(bg, i + 1)
            perm[i], perm[j] = perm[j], perm[i]
    edges = [(perm[a], perm[b]) for i in range(base_len)
             for a in classes[i] for b in classes[(i + 1) % base_len]]
    return Digraph.build(n, edges)


def gen_er_repair(n: int, p, m: int, seed: int) -> Digraph:
    """Bernoulli(p) digraph, then repeatedly delete the lexicographically
    smallest edge of a shortest cycle of length <= m until none is left."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"p={p} outside [0, 1]")
    if m < 4:
        raise ValueError("m must be >= 4")
    bg = rng_stream(seed)
    edges = set()
    for u in range(n):
        for v in range(n):
            if u != v and _draw(bg) * p.denominator < p.numerator * 2**64:
                edges.add((u, v))
    g = Digraph.build(n, sorted(edges))
    while True:
        found = girth(g, limit=m)
        if found is None:
            return g
        g = g.remove_edges([min(found[1].edges())])


@dataclass(frozen=True)
class GenSpec:
    model: str
    n: int
    m: int
    seed: int = 0
    steps: tuple[int, ...] = ()
    sizes: tuple[int, ...] = ()
    p: str = "0"

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.model == "circulant" and not self.steps:
            raise BadStep("circulant needs at least one step")
        if self.model == "blowup" and (not self.sizes or any(s < 1 for s in self.sizes)):
            raise BadSizes(f"bad class sizes {self.sizes}")
        if self.model == "er_repair" and not 0 <= Fraction(self.p) <= 1:
            raise ValueError(f"p={self.p} outside [0, 1]")

    def build(self) -> Digraph:
        if self.model == "cycle":
            return gen_cycle(self.n)
        if self.model == "circulant":
            return gen_circulant(self.n, self.steps)
        if self.model == "blowup":
            return gen_blowup(len(self.sizes), self.sizes, self.seed)
        return gen_er_repair(self.n, Fraction(self.p), self.m, self.seed)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["steps"] = list(self.steps)
        d["sizes"] = list(self.sizes)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "GenSpec":
        return cls(model=d["model"], n=int(d["n"]), m=int(d["m"]), seed=int(d.get("seed", 0)),
                   steps=tuple(d.get("steps", ())), sizes=tuple(d.get("sizes", ())),
                   p=str(d.get("p", "0")))

    def describe(self) -> str:
        parts = [f"model={self.model}", f"n={self.n}", f"m={self.m}", f"seed={self.seed}"]
        if self.steps:
            parts.append("steps=" + ",".join(map(str, self.steps)))
        if self.sizes:
            parts.append("sizes=" + ",".join(map(str, self.sizes)))
        if self.model == "er_repair":
            parts.append(f"p={Fraction(self.p)}")
        return " ".join(parts)


def _circulant_spec(n, m, bg):
    # first step set (in draw order) whose circulant has girth > m
    for _ in range(200):
        count = 1 + _below(bg, 2)
        steps = sorted({1 + _below(bg, n - 1) for _ in range(count)})
        found = girth(gen_circulant(n, steps), limit=m)
        if found is None:
            return tuple(steps)
    return (1,)


def corpus(count: int = 200, seed: int = 2024, n_min: int = 8, n_max: int = 40,
           ms=(4, 5, 6), models=MODELS) -> list[GenSpec]:
    """Deterministic mixed list of generator specs.

    Instance i uses model ``models[i % len(models)]`` and
    ``m = ms[(i // len(models)) % len(ms)]``; sizes and parameters are drawn
    from one PCG64 stream seeded with ``seed``.
    """
    bg = rng_stream(seed)
    specs = []
    for i in range(count):
        model = models[i % len(models)]
        m = ms[(i // len(models)) % len(ms)]
        lo = max(n_min, m + 1)
        n = lo + _below(bg, n_max - lo + 1)
        inst_seed = _draw(bg)
        if model == "cycle":
            specs.append(GenSpec("cycle", n, m, inst_seed))
        elif model == "circulant":
            n = max(n, 2 * m + 2)
            if n > n_max:
                n = n_max
            specs.append(GenSpec("circulant", n, m, inst_seed, steps=_circulant_spec(n, m, bg)))
        elif model == "blowup":
            base = m + 1 + _below(bg, 3)
            base = min(base, n)
            sizes = [1] * base
            for _ in range(n - base):
                sizes[_below(bg, base)] += 1
            specs.append(GenSpec("blowup", n, m, inst_seed, sizes=tuple(sizes)))
        else:
            num = 3 + _below(bg, 4)
            specs.append(GenSpec("er_repair", n, m, inst_seed, p=str(Fraction(num, n))))
    return specs
