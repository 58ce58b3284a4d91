"""Stanley depth of squarefree monomial ideals by interval partitions.

The squarefree supports lying in ``I`` form an upward closed family of
subsets of ``[n]``. A partition of that family into intervals ``[A, B]``
is a Stanley decomposition ``I = sum x_A K[x_j : j in B]`` and its Stanley
depth is ``min |B|``.

To decide ``sdepth >= d`` it suffices to cover every support of size below
``d`` by intervals whose top has exactly ``d`` elements: a wider interval
splits into such intervals plus singletons of size at least ``d``. The
search always extends the smallest uncovered support, which then has to be
the bottom of the new interval. When the backtracking spends its node
allowance, the same covering problem goes to an integer program (HiGHS via
scipy), which settles the instances where the search tree blows up.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from math import ceil, comb
from typing import Optional

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import coo_matrix

from .homology import BudgetExceeded
from .ideal import (
    SquarefreeIdeal,
    canonical_key,
    colon_variable,
    profile,
    reduce_to_support,
    restrict,
)

DEFAULT_BUDGET_MS = 60_000
MAX_EXACT_ELEMENTS = 1024
MAX_POSET_VARS = 16
SEARCH_NODE_LIMIT = 20_000


class UnknownVariable(ValueError):
    pass


def _mask(vs) -> int:
    out = 0
    for x in vs:
        out |= 1 << x
    return out


def _unmask(m: int) -> frozenset:
    out, x = [], 0
    while m:
        if m & 1:
            out.append(x)
        m >>= 1
        x += 1
    return frozenset(out)


def _popcount(m: int) -> int:
    return bin(m).count("1")


def _submasks(t: int):
    sub = t
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & t


@dataclass(frozen=True)
class CharPoset:
    """Supports of the squarefree monomials of ``I``, canonically ordered."""

    n: int
    elements: tuple

    def __len__(self):
        return len(self.elements)

    def __contains__(self, sigma):
        return frozenset(sigma) in self._lookup

    @property
    def _lookup(self):
        return frozenset(self.elements)

    def level_counts(self) -> list:
        counts = [0] * (self.n + 1)
        for e in self.elements:
            counts[len(e)] += 1
        return counts


def char_poset(ideal: SquarefreeIdeal, max_vars: int = MAX_POSET_VARS) -> CharPoset:
    if ideal.n > max_vars:
        raise BudgetExceeded(f"n={ideal.n} exceeds the poset cap of {max_vars} variables")
    prime_masks = [_mask(p) for p in ideal.primes]
    elems = []
    for size in range(1, ideal.n + 1):
        for combo in combinations(range(1, ideal.n + 1), size):
            m = _mask(combo)
            if all(m & p for p in prime_masks):
                elems.append(frozenset(combo))
    return CharPoset(ideal.n, tuple(sorted(elems, key=canonical_key)))


@dataclass(frozen=True)
class IntervalPartition:
    intervals: tuple

    @property
    def sdepth(self) -> int:
        return min(len(b) for _, b in self.intervals)

    def to_json(self) -> list:
        """Stanley decomposition reading: ``x_u * K[Z]`` per interval."""
        return [{"u": sorted(a), "Z": sorted(b)} for a, b in self.intervals]


def verify_partition(poset: CharPoset, partition: IntervalPartition) -> bool:
    elements = poset._lookup
    intervals = list(partition.intervals)
    if sum(2 ** (len(b) - len(a)) for a, b in intervals) != len(elements):
        return False
    seen = set()
    for a, b in intervals:
        a, b = frozenset(a), frozenset(b)
        if not a <= b or a not in elements:
            return False
        rest = sorted(b - a)
        for k in range(len(rest) + 1):
            for extra in combinations(rest, k):
                sigma = a | frozenset(extra)
                if sigma in seen or sigma not in elements:
                    return False
                seen.add(sigma)
    return seen == elements


FEASIBLE, INFEASIBLE, UNKNOWN = "feasible", "infeasible", "unknown"


@dataclass(frozen=True)
class SearchResult:
    status: str
    d: int
    partition: Optional[IntervalPartition] = None
    elapsed_ms: float = 0.0
    nodes: int = 0

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE


def _counting_ok(counts, d) -> bool:
    """Level-count condition for covering everything below ``d`` by
    intervals with ``d``-element tops."""
    starts = []
    for a in range(d):
        x = counts[a] - sum(xb * comb(d - b, a - b) for b, xb in enumerate(starts))
        if x < 0:
            return False
        starts.append(x)
    return sum(starts) <= counts[d]


class _Search:
    def __init__(self, ideal: SquarefreeIdeal, d: int, deadline: float, node_limit=None):
        self.n, self.d, self.deadline = ideal.n, d, deadline
        self.node_limit = node_limit
        self.full = _mask(range(1, ideal.n + 1))
        prime_masks = [_mask(p) for p in ideal.primes]
        self.low, self.counts = [], [0] * (d + 1)
        self.tops_available = 0
        for size in range(1, d + 1):
            for combo in combinations(range(1, ideal.n + 1), size):
                m = _mask(combo)
                if all(m & p for p in prime_masks):
                    self.counts[size] += 1
                    if size < d:
                        self.low.append(m)
        self.nodes = 0

    def candidates(self, sigma: int, covered: int) -> list:
        free = [x for x in range(1, self.n + 1) if not sigma >> x & 1]
        out = []
        for extra in combinations(free, self.d - _popcount(sigma)):
            t = _mask(extra)
            if all(not covered >> (sigma | sub) & 1 for sub in _submasks(t)):
                out.append(t)
        return out

    def run(self) -> tuple:
        """Returns ``(status, intervals)``; intervals are ``(A, B)`` masks."""
        if not _counting_ok(self.counts, self.d):
            return INFEASIBLE, None
        covered, counts, failed = 0, list(self.counts), set()
        low, d = self.low, self.d
        frames = []  # [sigma, candidates, next index, applied t, ptr]

        def next_uncovered(ptr):
            while ptr < len(low) and covered >> low[ptr] & 1:
                ptr += 1
            return ptr

        def push(ptr) -> bool:
            if covered in failed or not _counting_ok(counts, d):
                return False
            sigma = low[ptr]
            frames.append([sigma, self.candidates(sigma, covered), 0, None, ptr])
            return True

        ptr = next_uncovered(0)
        if ptr == len(low):
            return FEASIBLE, []
        push(ptr)
        while frames:
            self.nodes += 1
            if self.nodes & 255 == 0 and time.perf_counter() > self.deadline:
                return UNKNOWN, None
            if self.node_limit is not None and self.nodes > self.node_limit:
                return UNKNOWN, None
            frame = frames[-1]
            sigma, cands, idx, applied, fptr = frame
            if applied is not None:
                for sub in _submasks(applied):
                    covered &= ~(1 << (sigma | sub))
                    counts[_popcount(sigma | sub)] += 1
                frame[3] = None
            if idx == len(cands):
                failed.add(covered)
                frames.pop()
                continue
            t = cands[idx]
            frame[2] = idx + 1
            for sub in _submasks(t):
                covered |= 1 << (sigma | sub)
                counts[_popcount(sigma | sub)] -= 1
            frame[3] = t
            ptr = next_uncovered(fptr)
            if ptr == len(low):
                return FEASIBLE, [(f[0], f[0] | f[3]) for f in frames]
            push(ptr)
        return INFEASIBLE, None


def _milp_search(ideal: SquarefreeIdeal, d: int, deadline: float) -> tuple:
    """The level-``d`` covering problem as a 0/1 program.

    One variable per interval ``[A, A + T]`` with ``|A| < d`` and
    ``|A + T| = d``; supports below ``d`` are covered exactly once, supports
    of size ``d`` at most once.
    """
    prime_masks = [_mask(p) for p in ideal.primes]
    elems = []
    for size in range(1, d + 1):
        for combo in combinations(range(1, ideal.n + 1), size):
            m = _mask(combo)
            if all(m & p for p in prime_masks):
                elems.append(m)
    index = {m: i for i, m in enumerate(elems)}
    rows, cols, intervals = [], [], []
    for a in elems:
        k = _popcount(a)
        if k >= d:
            continue
        free = [x for x in range(1, ideal.n + 1) if not a >> x & 1]
        for extra in combinations(free, d - k):
            t = _mask(extra)
            for sub in _submasks(t):
                rows.append(index[a | sub])
                cols.append(len(intervals))
            intervals.append((a, a | t))
    if not intervals:
        return FEASIBLE, []
    matrix = coo_matrix(
        (np.ones(len(rows)), (rows, cols)), shape=(len(elems), len(intervals))
    ).tocsr()
    lower = np.array([1.0 if _popcount(m) < d else 0.0 for m in elems])
    remaining = deadline - time.perf_counter()
    if remaining <= 0:
        return UNKNOWN, None
    res = milp(
        np.zeros(len(intervals)),
        constraints=LinearConstraint(matrix, lower, np.ones(len(elems))),
        integrality=np.ones(len(intervals)),
        bounds=Bounds(0, 1),
        options={"time_limit": remaining, "presolve": True},
    )
    if res.status == 0:
        chosen = [iv for iv, x in zip(intervals, res.x) if x > 0.5]
        return FEASIBLE, chosen
    if res.status == 2:
        return INFEASIBLE, None
    return UNKNOWN, None


def _singletons_above(ideal: SquarefreeIdeal, d: int, used: set) -> list:
    prime_masks = [_mask(p) for p in ideal.primes]
    out = []
    for size in range(d, ideal.n + 1):
        for combo in combinations(range(1, ideal.n + 1), size):
            m = _mask(combo)
            if m not in used and all(m & p for p in prime_masks):
                out.append((m, m))
    return out


def sdepth_at_least(
    ideal: SquarefreeIdeal,
    d: int,
    budget_ms: float = DEFAULT_BUDGET_MS,
    deadline: Optional[float] = None,
) -> SearchResult:
    """Decide whether some interval partition has all tops of size ``>= d``."""
    start = time.perf_counter()
    if not 1 <= d:
        raise ValueError(f"target must be >= 1, got {d}")
    if d > ideal.n:
        return SearchResult(INFEASIBLE, d)
    if deadline is None:
        deadline = start + budget_ms / 1000
    search = _Search(ideal, d, deadline, node_limit=SEARCH_NODE_LIMIT)
    status, intervals = search.run()
    if status == UNKNOWN and time.perf_counter() < deadline:
        status, intervals = _milp_search(ideal, d, deadline)
    elapsed = (time.perf_counter() - start) * 1000
    if status != FEASIBLE:
        return SearchResult(status, d, None, elapsed, search.nodes)
    used = set()
    for a, b in intervals:
        for sub in _submasks(b & ~a):
            used.add(a | sub)
    intervals = intervals + _singletons_above(ideal, d, used)
    intervals.sort(key=lambda ab: (canonical_key(_unmask(ab[0])), canonical_key(_unmask(ab[1]))))
    partition = IntervalPartition(tuple((_unmask(a), _unmask(b)) for a, b in intervals))
    return SearchResult(FEASIBLE, d, partition, elapsed, search.nodes)


def size_lower_bound(ideal: SquarefreeIdeal) -> int:
    return 1 + profile(ideal).size


def prime_sdepth(n: int, height: int) -> int:
    """Stanley depth of a monomial prime of the given height in ``n`` variables."""
    return n - height + ceil(height / 2)


@dataclass(frozen=True)
class SdepthResult:
    value: int
    partition: IntervalPartition
    upper_checked: str  # status of the search at value + 1
    elapsed_ms: float = 0.0
    levels: dict = field(default_factory=dict, compare=False)


def sdepth_exact(
    ideal: SquarefreeIdeal,
    budget_ms: float = DEFAULT_BUDGET_MS,
    max_elements: int = MAX_EXACT_ELEMENTS,
) -> SdepthResult:
    """Largest ``d`` admitting a partition, with a verified certificate.

    Starts at the proven lower bound ``1 + size`` and climbs until a level
    is infeasible; any unknown level raises :class:`BudgetExceeded`.
    """
    start = time.perf_counter()
    poset = char_poset(ideal)
    if len(poset) > max_elements:
        raise BudgetExceeded(
            f"poset has {len(poset)} elements, above the exact-search cap {max_elements}"
        )
    deadline = start + budget_ms / 1000
    d = size_lower_bound(ideal)
    levels = {}
    best = sdepth_at_least(ideal, d, deadline=deadline)
    levels[d] = best.status
    if not best.feasible:
        raise BudgetExceeded(f"could not certify the lower bound {d} within budget")
    while True:
        nxt = sdepth_at_least(ideal, d + 1, deadline=deadline)
        levels[d + 1] = nxt.status
        if nxt.status == UNKNOWN:
            raise BudgetExceeded(f"search at d={d + 1} ran out of budget")
        if not nxt.feasible:
            break
        best, d = nxt, d + 1
    if not verify_partition(poset, best.partition):
        raise AssertionError("solver produced an invalid interval partition")
    elapsed = (time.perf_counter() - start) * 1000
    return SdepthResult(d, best.partition, levels[d + 1], elapsed, levels)


def sdepth_lower_bound(
    ideal: Optional[SquarefreeIdeal],
    n: int,
    budget_ms: float = 2_000,
    recursion_budget: int = 0,
) -> int:
    """A proven lower bound for ``sdepth`` of ``ideal`` in ``n`` variables.

    ``None`` is the unit ideal. Uses the prime closed form when applicable,
    otherwise climbs from ``1 + size`` with budgeted partition searches.
    """
    if ideal is None:
        return n
    if ideal.s == 1:
        return prime_sdepth(n, len(ideal.primes[0]))
    best = size_lower_bound(ideal)
    deadline = time.perf_counter() + budget_ms / 1000
    while best < n and ideal.n <= MAX_POSET_VARS:
        res = sdepth_at_least(ideal, best + 1, deadline=deadline)
        if not res.feasible:
            break
        best += 1
    if recursion_budget > 0:
        for x in sorted(ideal.support):
            best = max(
                best,
                split_variable_bound(ideal, x, recursion_budget - 1, budget_ms=budget_ms),
            )
    return best


def split_variable_bound(
    ideal: SquarefreeIdeal,
    x: int,
    recursion_budget: int = 0,
    budget_ms: float = 2_000,
) -> int:
    """``min`` of bounds for ``I ∩ K[x_j : j != x]`` and ``I : x``.

    As vector spaces ``I`` is the direct sum of the part free of ``x`` and
    ``x (I : x)``, so any pair of Stanley decompositions of the two pieces
    glues into one of ``I``.
    """
    if x not in ideal.support:
        raise UnknownVariable(f"variable {x} is not in the support")
    branches = []
    without = restrict(ideal, {x})
    # the budget covers both branches together
    budget_ms = budget_ms / 2 if without is not None else budget_ms
    if without is not None:
        # drop x from the ambient ring
        keep = [y for y in range(1, ideal.n + 1) if y != x]
        relabel = {y: i for i, y in enumerate(keep, start=1)}
        smaller = SquarefreeIdeal(
            ideal.n - 1, tuple(frozenset(relabel[y] for y in p) for p in without.primes)
        )
        branches.append(sdepth_lower_bound(smaller, ideal.n - 1, budget_ms, recursion_budget))
    colon = colon_variable(ideal, x)
    branches.append(sdepth_lower_bound(colon, ideal.n, budget_ms, recursion_budget))
    return min(branches)


def support_reduced_sdepth(ideal: SquarefreeIdeal, **kwargs) -> int:
    """``sdepth`` computed on the support plus the number of free variables."""
    reduced, free, _ = reduce_to_support(ideal)
    return sdepth_exact(reduced, **kwargs).value + free
