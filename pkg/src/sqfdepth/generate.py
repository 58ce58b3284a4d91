"""Fixed examples and seeded generators of squarefree ideals.

Structured generators build ideals whose primes sum three at a time to the
whole ring. Every variable of such an ideal is missing from at most two
primes, so the ideal is pinned down by a block of variables per non-covering
pair, optional variables private to one prime, and variables lying in all
primes.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .graph import (
    PrimeSumGraph,
    build_graph,
    complement_spanning_path,
    complement_spanning_tree,
    graph_from_edges,
    is_join_graph,
)
from .ideal import SquarefreeIdeal, normalize, profile, reduce_to_support

MAX_ATTEMPTS = 10_000
TARGETS = ("random", "bigsize2", "join", "chain", "tree", "graph")


class UnknownName(KeyError):
    pass


class UnrealizableGraph(ValueError):
    pass


class GenerationExhausted(RuntimeError):
    pass


def _r(a, b):
    return list(range(a, b + 1))


# 6-vertex minimal triangulation of the real projective plane
RP2_FACETS = (
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6),
)

_CORPUS = {
    "vechi": lambda: SquarefreeIdeal(
        10,
        (_r(1, 7), _r(3, 8), _r(1, 4) + _r(8, 10), [1, 2, 5, 8, 9, 10], _r(5, 10)),
    ),
    "ex3": lambda: SquarefreeIdeal(
        12,
        (
            [1, 4, 5, 6] + _r(9, 12),
            [1] + _r(4, 10),
            [1, 2, 3] + _r(7, 12),
            [1, 2, 3, 6, 7, 8, 11, 12],
            _r(1, 8),
            _r(2, 6) + _r(9, 12),
        ),
    ),
    "rp2": lambda: SquarefreeIdeal(
        6, tuple(frozenset(_r(1, 6)) - frozenset(f) for f in RP2_FACETS)
    ),
    "k3join": lambda: SquarefreeIdeal(6, ([1, 2, 3, 4], [3, 4, 5, 6], [1, 2, 5, 6])),
}

CORPUS_NAMES = tuple(sorted(_CORPUS))


def corpus(name: str) -> SquarefreeIdeal:
    try:
        return _CORPUS[name]()
    except KeyError:
        raise UnknownName(f"unknown corpus instance {name!r}; known: {', '.join(CORPUS_NAMES)}") from None


def assemble(
    s: int,
    blocks: dict,
    private: Optional[dict] = None,
    universal: int = 0,
) -> SquarefreeIdeal:
    """Ideal on ``s`` primes from block sizes per non-covering pair.

    ``blocks`` maps pairs ``(i, j)`` to the number of variables missing from
    exactly ``P_i`` and ``P_j``; ``private`` maps a vertex to variables
    missing only from its prime; ``universal`` variables lie in every prime.
    A vertex whose missing set would sit inside another's gets one extra
    private variable so the family stays irredundant.
    """
    private = dict(private or {})
    missing = {v: set() for v in range(1, s + 1)}
    nxt = 1
    for (i, j) in sorted(blocks):
        size = blocks[(i, j)]
        if size < 1:
            raise ValueError(f"block for {(i, j)} must be nonempty")
        for _ in range(size):
            missing[i].add(nxt)
            missing[j].add(nxt)
            nxt += 1
    has_private = {v for v, c in private.items() if c > 0}
    pad = [
        v
        for v in range(1, s + 1)
        if v not in has_private
        and (not missing[v] or any(u != v and missing[v] <= missing[u] for u in missing))
    ]
    for v in pad:
        private[v] = private.get(v, 0) + 1
    for v in sorted(private):
        for _ in range(private[v]):
            missing[v].add(nxt)
            nxt += 1
    n = nxt - 1 + universal
    everything = frozenset(_r(1, n))
    return SquarefreeIdeal(n, tuple(everything - missing[v] for v in range(1, s + 1)))


def _as_graph(gamma) -> PrimeSumGraph:
    if isinstance(gamma, PrimeSumGraph):
        return gamma
    s, edges = gamma
    return graph_from_edges(s, edges)


def realize_graph(gamma, q: int) -> SquarefreeIdeal:
    """An ideal whose prime-sum graph is ``gamma`` and whose ``q`` is ``q``.

    Each non-edge gets its own block of ``q`` variables; ``gamma`` is a
    :class:`PrimeSumGraph` or a pair ``(s, edges)``.
    """
    g = _as_graph(gamma)
    if q < 1:
        raise UnrealizableGraph(f"q must be >= 1, got {q}")
    if g.s < 3:
        # the support is P_1 + P_2, so two primes always cover it
        raise UnrealizableGraph(f"prime-sum graphs on {g.s} vertices are complete")
    adj = g.complement_adjacency()
    lonely = [v for v, a in adj.items() if not a]
    if lonely:
        raise UnrealizableGraph(
            f"vertices {lonely} are adjacent to every other vertex (complement degree 0)"
        )
    return assemble(g.s, {p: q for p in g.non_edges})


@dataclass(frozen=True)
class GenSpec:
    n: Optional[int]
    s: int
    target: str = "random"
    seed: int = 0
    q: int = 1
    edges: tuple = ()
    max_attempts: int = MAX_ATTEMPTS

    def __post_init__(self):
        if self.target not in TARGETS:
            raise ValueError(f"unknown target {self.target!r}; choose from {TARGETS}")
        if self.s < 1:
            raise ValueError("s must be >= 1")
        if self.target != "graph" and (self.n is None or self.n < 1):
            raise ValueError("n must be >= 1")
        if self.target in ("join", "chain", "tree", "bigsize2") and self.s < 3:
            raise ValueError(f"target {self.target} needs s >= 3")


@dataclass(frozen=True)
class Generated:
    ideal: SquarefreeIdeal
    attempts: int
    spec: GenSpec = field(compare=False)


def _random_family(rng, n, s):
    p = rng.uniform(0.3, 0.85)
    fam = []
    for _ in range(s):
        members = [x for x in range(1, n + 1) if rng.random() < p]
        if not members:
            members = [rng.randint(1, n)]
        fam.append(members)
    return fam


def _random_complement(rng, s, target) -> set:
    verts = _r(1, s)
    if target == "chain":
        order = verts[:]
        rng.shuffle(order)
        return {tuple(sorted(e)) for e in zip(order, order[1:])}
    if target == "tree":
        order = verts[:]
        rng.shuffle(order)
        return {tuple(sorted((v, rng.choice(order[:k])))) for k, v in enumerate(order) if k}
    # join: complement split into at least two pieces
    cut = rng.randint(1, s - 1)
    order = verts[:]
    rng.shuffle(order)
    left, right = order[:cut], order[cut:]
    comp = set()
    for side in (left, right):
        for e in combinations(sorted(side), 2):
            if rng.random() < 0.5:
                comp.add(e)
    return comp


def _structured(rng, n, s, complement_edges, q=1) -> Optional[SquarefreeIdeal]:
    blocks = {e: q for e in complement_edges}
    base = assemble(s, blocks)
    spare = n - base.n
    if spare < 0:
        return None
    private, universal = {}, 0
    for _ in range(spare):
        kind = rng.random()
        if kind < 0.5 and blocks:
            e = rng.choice(sorted(blocks))
            blocks[e] += 1
        elif kind < 0.85:
            v = rng.randint(1, s)
            private[v] = private.get(v, 0) + 1
        else:
            universal += 1
    ideal = assemble(s, blocks, private, universal)
    # padding decisions depend on the private counts; top up to exactly n
    if ideal.n < n:
        ideal = assemble(s, blocks, private, universal + n - ideal.n)
    return ideal if ideal.n == n else None


def _accept(ideal: SquarefreeIdeal, spec: GenSpec) -> bool:
    if ideal.s != spec.s:
        return False
    if spec.target == "random":
        return True
    if ideal.support != frozenset(_r(1, ideal.n)):
        return False
    prof = profile(ideal)
    if prof.bigsize != 2:
        return False
    g = build_graph(ideal)
    if spec.target == "join":
        return is_join_graph(g) is not None
    if spec.target == "chain":
        return complement_spanning_path(g) is not None
    if spec.target == "tree":
        return complement_spanning_tree(g) is not None
    return True


def random_ideal(spec: GenSpec) -> Generated:
    """Seeded instance for ``spec``; never silently changes the target."""
    if spec.target == "graph":
        ideal = realize_graph((spec.s, spec.edges), spec.q)
        if spec.n is not None and ideal.n > spec.n:
            raise GenerationExhausted(f"realization needs n={ideal.n} > {spec.n}")
        return Generated(ideal, 1, spec)
    rng = random.Random(spec.seed)
    for attempt in range(1, spec.max_attempts + 1):
        if spec.target in ("random", "bigsize2"):
            try:
                ideal = normalize(_random_family(rng, spec.n, spec.s), spec.n)
            except ValueError:
                continue
        else:
            ideal = _structured(
                rng, spec.n, spec.s, _random_complement(rng, spec.s, spec.target), spec.q
            )
            if ideal is None:
                continue
        if _accept(ideal, spec):
            return Generated(ideal, attempt, spec)
    raise GenerationExhausted(
        f"no {spec.target} instance with n={spec.n}, s={spec.s} after {spec.max_attempts} attempts"
    )


@dataclass(frozen=True)
class Concatenation:
    ideal: SquarefreeIdeal
    shared: int
    first: tuple
    second: tuple

    def part(self, which: int) -> SquarefreeIdeal:
        idx = self.first if which == 1 else self.second
        return SquarefreeIdeal(self.ideal.n, tuple(self.ideal.primes[i - 1] for i in idx))


def random_concatenation(seed: int, max_vars: int = 9, max_attempts: int = MAX_ATTEMPTS) -> Concatenation:
    """Ideal whose graph is the concatenation of two random graphs at a vertex.

    Cross pairs between the two sides cover the ring; inside each side the
    non-covering pairs are random. The result has bigsize 2.
    """
    rng = random.Random(seed)
    for _ in range(max_attempts):
        s1, s2 = rng.randint(2, 4), rng.randint(2, 4)
        s = s1 + s2 - 1
        v = s1  # first block 1..s1, second block s1..s
        first, second = tuple(_r(1, s1)), tuple(_r(s1, s))
        comp = set()
        for side in (first, second):
            for e in combinations(side, 2):
                if rng.random() < 0.6:
                    comp.add(e)
        if not comp:
            continue
        n = rng.randint(len(comp), max_vars)
        ideal = _structured(rng, n, s, comp)
        if ideal is None or profile(ideal).bigsize != 2:
            continue
        return Concatenation(ideal, v, first, second)
    raise GenerationExhausted("could not build a concatenation instance")


def is_support_full(ideal: SquarefreeIdeal) -> bool:
    reduced, free, _ = reduce_to_support(ideal)
    return free == 0
