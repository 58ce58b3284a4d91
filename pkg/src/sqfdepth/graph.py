"""The prime-sum graph of an ideal and depth read off from it.

Vertices are the primes ``1..s``; ``{i, j}`` is an edge when ``P_i + P_j``
is the whole support. Everything here works on the complement graph, whose
edges are the non-covering pairs, because join graphs, concatenations and
the depth certificates are all statements about complement connectivity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Union

from .ideal import SquarefreeIdeal, profile, reduce_to_support


class PreconditionViolated(ValueError):
    pass


def _pair(i: int, j: int) -> tuple:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class PrimeSumGraph:
    s: int
    edges: frozenset
    deficits: dict = field(compare=False)

    @property
    def non_edges(self) -> list:
        return sorted(self.deficits)

    def has_edge(self, i: int, j: int) -> bool:
        return _pair(i, j) in self.edges

    def neighbors(self, i: int) -> set:
        return {j for j in range(1, self.s + 1) if j != i and self.has_edge(i, j)}

    def complement_adjacency(self) -> dict:
        adj = {v: set() for v in range(1, self.s + 1)}
        for i, j in self.deficits:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def min_deficit(self) -> Optional[int]:
        return min((len(d) for d in self.deficits.values()), default=None)

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "edges": [list(e) for e in sorted(self.edges)],
            "deficits": [
                {"pair": list(p), "missing": sorted(self.deficits[p])}
                for p in self.non_edges
            ],
        }


def graph_from_edges(s: int, edges) -> PrimeSumGraph:
    """An abstract graph on ``1..s`` (non-edges carry an empty deficit)."""
    es = frozenset(_pair(*e) for e in edges)
    deficits = {p: frozenset() for p in combinations(range(1, s + 1), 2) if p not in es}
    return PrimeSumGraph(s, es, deficits)


def build_graph(ideal: SquarefreeIdeal) -> PrimeSumGraph:
    support = ideal.support
    edges, deficits = set(), {}
    for i, j in combinations(range(1, ideal.s + 1), 2):
        missing = support - (ideal.primes[i - 1] | ideal.primes[j - 1])
        if missing:
            deficits[(i, j)] = missing
        else:
            edges.add((i, j))
    return PrimeSumGraph(ideal.s, frozenset(edges), deficits)


def _components(vertices, adj) -> list:
    vertices = sorted(vertices)
    seen, comps = set(), []
    for v in vertices:
        if v in seen:
            continue
        comp, stack = set(), [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.add(u)
            for w in adj[u]:
                if w in vertices and w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def is_join_graph(g: PrimeSumGraph) -> Optional[tuple]:
    """Split ``(A, B)`` with every cross pair an edge, or ``None``.

    ``A`` is the complement component holding vertex 1.
    """
    if g.s < 2:
        return None
    comps = _components(range(1, g.s + 1), g.complement_adjacency())
    if len(comps) < 2:
        return None
    a = frozenset(comps[0])
    return a, frozenset(range(1, g.s + 1)) - a


def good_vertices(g: PrimeSumGraph) -> set:
    """Vertices whose neighbours are pairwise adjacent."""
    good = set()
    for i in range(1, g.s + 1):
        nbrs = sorted(g.neighbors(i))
        if all(g.has_edge(j, k) for j, k in combinations(nbrs, 2)):
            good.add(i)
    return good


def _walk_path(start, adj) -> list:
    order, prev = [start], None
    while True:
        nxt = [w for w in adj[order[-1]] if w != prev]
        if not nxt:
            return order
        prev = order[-1]
        order.append(nxt[0])


def complement_spanning_path(g: PrimeSumGraph) -> Optional[list]:
    """Order ``v_1..v_s`` whose consecutive pairs are exactly the non-edges.

    Of the two orientations, the one where vertex 1 comes earlier is
    returned.
    """
    if g.s < 2:
        return None
    adj = g.complement_adjacency()
    if len(g.deficits) != g.s - 1 or any(len(a) > 2 for a in adj.values()):
        return None
    ends = sorted(v for v, a in adj.items() if len(a) == 1)
    if len(ends) != 2:
        return None
    path = _walk_path(ends[0], adj)
    if len(path) != g.s:
        return None
    rev = path[::-1]
    if path.index(1) != rev.index(1):
        return path if path.index(1) < rev.index(1) else rev
    return min(path, rev)


def complement_spanning_tree(g: PrimeSumGraph) -> Optional[list]:
    """Non-edges as a gluing sequence of two-vertex edgeless graphs.

    Gluing edgeless pairs one at a time along a shared vertex produces
    exactly the graphs whose complement is a spanning tree. Returns the
    pairs in a valid gluing order (breadth first from vertex 1), or ``None``.
    """
    if g.s < 2 or len(g.deficits) != g.s - 1:
        return None
    adj = g.complement_adjacency()
    if len(_components(range(1, g.s + 1), adj)) != 1:
        return None
    order, seen, queue = [], {1}, [1]
    while queue:
        u = queue.pop(0)
        for w in sorted(adj[u]):
            if w not in seen:
                seen.add(w)
                order.append(_pair(u, w))
                queue.append(w)
    return order


def concatenation_split(g: PrimeSumGraph, at: Optional[int] = None) -> Optional[tuple]:
    """Shared vertex ``v`` and blocks ``V1, V2`` realising ``g`` as a concatenation.

    All pairs across ``V1 - {v}`` and ``V2 - {v}`` must be edges, i.e. ``v``
    cuts the complement. The least such ``v`` is used unless ``at`` pins it.
    ``V1`` holds the complement component of the smallest other vertex.
    """
    if g.s < 3:
        return None
    adj = g.complement_adjacency()
    candidates = [at] if at is not None else range(1, g.s + 1)
    for v in candidates:
        rest = [u for u in range(1, g.s + 1) if u != v]
        comps = _components(rest, adj)
        if len(comps) < 2:
            continue
        v1 = frozenset(comps[0]) | {v}
        v2 = frozenset(range(1, g.s + 1)) - comps[0]
        return v, v1, v2
    return None


def is_concatenation(g: PrimeSumGraph, v: int, v1, v2) -> bool:
    v1, v2 = frozenset(v1), frozenset(v2)
    if v1 & v2 != {v} or v1 | v2 != frozenset(range(1, g.s + 1)):
        return False
    if len(v1) < 2 or len(v2) < 2:
        return False
    return all(g.has_edge(a, b) for a in v1 - {v} for b in v2 - {v})


@dataclass(frozen=True)
class JoinSplit:
    blocks: tuple

    kind = "join_split"

    def to_dict(self):
        return {"type": self.kind, "blocks": [sorted(b) for b in self.blocks]}


@dataclass(frozen=True)
class ChainOfPairs:
    pairs: tuple
    path: Optional[tuple] = None

    kind = "chain_of_pairs"

    def to_dict(self):
        return {
            "type": self.kind,
            "pairs": [list(p) for p in self.pairs],
            "path": list(self.path) if self.path is not None else None,
        }


@dataclass(frozen=True)
class Fallback:
    reason: str
    witness: tuple = ()

    kind = "fallback"

    def to_dict(self):
        return {"type": self.kind, "reason": self.reason, "witness": list(self.witness)}


Certificate = Union[JoinSplit, ChainOfPairs, Fallback]


@dataclass(frozen=True)
class DepthVerdict:
    applicable: bool
    reason: Optional[str] = None
    module_depth: Optional[int] = None
    ideal_depth: Optional[int] = None
    reduced_module_depth: Optional[int] = None
    q: Optional[int] = None
    certificate: Optional[Certificate] = None
    free_var_adjustment: int = 0

    def to_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "reason": self.reason,
            "module_depth": self.module_depth,
            "ideal_depth": self.ideal_depth,
            "reduced_module_depth": self.reduced_module_depth,
            "q": self.q,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "free_var_adjustment": self.free_var_adjustment,
        }


def _complement_cycle(g: PrimeSumGraph) -> tuple:
    """Some cycle of the complement graph, assumed to exist."""
    adj = g.complement_adjacency()
    parent = {}
    for root in range(1, g.s + 1):
        if root in parent:
            continue
        parent[root] = None
        stack = [root]
        while stack:
            u = stack.pop()
            for w in sorted(adj[u]):
                if w == parent[u]:
                    continue
                if w in parent:
                    # back edge u-w closes a cycle through their common ancestor
                    pu, pw = [u], [w]
                    while pu[-1] is not None:
                        pu.append(parent[pu[-1]])
                    while pw[-1] is not None:
                        pw.append(parent[pw[-1]])
                    common = next(x for x in pu if x in pw)
                    cyc = pu[: pu.index(common) + 1] + pw[: pw.index(common)][::-1]
                    return tuple(cyc)
                parent[w] = u
                stack.append(w)
    return ()


def depth_by_theorem(ideal: SquarefreeIdeal) -> DepthVerdict:
    """Depth of ``S/I`` and of ``I`` read off the prime-sum graph.

    Works after dropping free variables; covers every ideal whose primes sum
    three at a time to the support (reduced bigsize at most two).
    """
    reduced, free, _ = reduce_to_support(ideal)
    if reduced.s == 1:
        module = free
        return DepthVerdict(
            applicable=True,
            module_depth=module,
            ideal_depth=module + 1,
            reduced_module_depth=0,
            certificate=Fallback("single prime"),
            free_var_adjustment=free,
        )

    prof = profile(reduced)
    g = build_graph(reduced)
    if prof.bigsize >= 3:
        return DepthVerdict(
            applicable=False,
            reason=f"bigsize={prof.bigsize}",
            q=prof.q,
            free_var_adjustment=free,
        )

    def verdict(reduced_depth, cert):
        return DepthVerdict(
            applicable=True,
            module_depth=reduced_depth + free,
            ideal_depth=reduced_depth + free + 1,
            reduced_module_depth=reduced_depth,
            q=prof.q,
            certificate=cert,
            free_var_adjustment=free,
        )

    split = is_join_graph(g)
    if split is not None:
        return verdict(1, JoinSplit(split))
    q = prof.q
    pairs = complement_spanning_tree(g)
    if q > 1 and pairs is not None:
        path = complement_spanning_path(g)
        return verdict(1 + q, ChainOfPairs(tuple(pairs), tuple(path) if path else None))
    if pairs is not None:
        return verdict(2, Fallback("q=1", (q,)))
    return verdict(2, Fallback("complement has a cycle", _complement_cycle(g)))


def three_prime_formula(ideal: SquarefreeIdeal) -> int:
    """Ideal depth of a three-prime ideal with exactly one covering pair.

    ``2 + min`` of the two deficit dimensions at the vertex off the edge,
    plus the free variables.
    """
    reduced, free, _ = reduce_to_support(ideal)
    if reduced.s != 3:
        raise PreconditionViolated(f"need exactly 3 primes, got {reduced.s}")
    g = build_graph(reduced)
    if len(g.edges) != 1:
        raise PreconditionViolated(
            f"need exactly one covering pair, got {len(g.edges)}"
        )
    (a, b), = g.edges
    (c,) = {1, 2, 3} - {a, b}
    return 2 + min(len(g.deficits[_pair(c, a)]), len(g.deficits[_pair(c, b)])) + free


def export_dot(g: PrimeSumGraph, deficits: bool = False) -> str:
    lines = ["graph G {"]
    for v in range(1, g.s + 1):
        lines.append(f'  {v} [label="{v}"];')
    for i, j in sorted(g.edges):
        lines.append(f"  {i} -- {j};")
    if deficits:
        for i, j in g.non_edges:
            label = ",".join(str(x) for x in sorted(g.deficits[(i, j)]))
            lines.append(f'  {i} -- {j} [style=dashed, label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
