"""Squarefree monomial ideals given by their minimal primes.

A prime ``(x_i : i in P)`` is stored as a ``frozenset`` of 1-based variable
indices. An ideal is the intersection of an irredundant family of such
primes inside ``K[x_1, ..., x_n]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

VariableSet = frozenset


class IdealError(ValueError):
    """Base class for malformed ideal input."""


class EmptyFamily(IdealError):
    pass


class IndexOutOfRange(IdealError):
    pass


class NotIrredundant(IdealError):
    pass


def canonical_key(vs: Iterable[int]) -> tuple:
    members = sorted(vs)
    return (len(members), members)


def canonical_sort(sets: Iterable[Iterable[int]]) -> list[frozenset]:
    return sorted((frozenset(s) for s in sets), key=canonical_key)


def complement(vs: Iterable[int], n: int) -> frozenset:
    return frozenset(range(1, n + 1)) - frozenset(vs)


def _check_range(vs: Iterable[int], n: int) -> frozenset:
    vs = frozenset(vs)
    for x in vs:
        if not isinstance(x, int) or isinstance(x, bool) or x < 1 or x > n:
            raise IndexOutOfRange(f"variable index {x!r} outside [1..{n}]")
    return vs


@dataclass(frozen=True)
class SquarefreeIdeal:
    """``I = P_1 ∩ ... ∩ P_s`` in ``n`` variables.

    The constructor validates but keeps the given prime order, so fixtures
    can keep their own labelling of the primes. Use :func:`normalize` for the
    lenient, canonically ordered constructor.
    """

    n: int
    primes: tuple

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise IdealError(f"ambient variable count must be >= 1, got {self.n!r}")
        primes = tuple(_check_range(p, self.n) for p in self.primes)
        if not primes:
            raise EmptyFamily("an ideal needs at least one prime")
        for p in primes:
            if not p:
                raise EmptyFamily("primes must be nonempty")
        for i, p in enumerate(primes):
            for j, q in enumerate(primes):
                if i != j and p <= q:
                    raise NotIrredundant(
                        f"prime {sorted(p)} is contained in prime {sorted(q)}"
                    )
        object.__setattr__(self, "primes", primes)

    @property
    def s(self) -> int:
        return len(self.primes)

    @property
    def support(self) -> frozenset:
        return frozenset().union(*self.primes)

    @property
    def free_variables(self) -> frozenset:
        return complement(self.support, self.n)

    def to_dict(self) -> dict:
        return {"n": self.n, "primes": [sorted(p) for p in self.primes]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def relabel(self, perm: dict) -> "SquarefreeIdeal":
        """Apply a permutation of the variables, given as ``old -> new``."""
        return SquarefreeIdeal(
            self.n, tuple(frozenset(perm[x] for x in p) for p in self.primes)
        )

    def __repr__(self):
        return f"SquarefreeIdeal(n={self.n}, primes={[sorted(p) for p in self.primes]})"


def normalize(raw_primes: Iterable[Iterable[int]], n: int) -> SquarefreeIdeal:
    """Drop empty sets and non-minimal primes, then sort canonically."""
    if not isinstance(n, int) or n < 1:
        raise IdealError(f"ambient variable count must be >= 1, got {n!r}")
    sets = {_check_range(p, n) for p in raw_primes}
    sets.discard(frozenset())
    minimal = [p for p in sets if not any(q < p for q in sets)]
    if not minimal:
        raise EmptyFamily("no nonempty prime remains after reduction")
    return SquarefreeIdeal(n, tuple(canonical_sort(minimal)))


def parse_ideal(data) -> SquarefreeIdeal:
    """Parse the JSON ideal format ``{"n": int, "primes": [[int, ...], ...]}``.

    Inner lists must be strictly increasing; the family must already be
    irredundant. Prime order is preserved.
    """
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise IdealError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or "n" not in data or "primes" not in data:
        raise IdealError('expected an object with keys "n" and "primes"')
    n, primes = data["n"], data["primes"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise IdealError('"n" must be an integer')
    if not isinstance(primes, list):
        raise IdealError('"primes" must be a list of lists')
    out = []
    for p in primes:
        if not isinstance(p, list):
            raise IdealError('"primes" must be a list of lists')
        if any(b <= a for a, b in zip(p, p[1:])):
            raise IdealError(f"prime {p} is not strictly increasing")
        out.append(p)
    return SquarefreeIdeal(n, tuple(out))


@dataclass(frozen=True)
class IdealProfile:
    support: frozenset
    h: int
    v: int
    t: int
    size: int
    bigsize: int
    q: Optional[int]

    def to_dict(self) -> dict:
        return {
            "support": sorted(self.support),
            "h": self.h,
            "v": self.v,
            "t": self.t,
            "size": self.size,
            "bigsize": self.bigsize,
            "q": self.q,
        }


def sum_of(ideal: SquarefreeIdeal, indices: Iterable[int]) -> frozenset:
    """Variables of ``sum(P_i for i in indices)``, indices 1-based."""
    indices = list(indices)
    if not indices:
        raise IndexOutOfRange("need at least one prime index")
    out = set()
    for i in indices:
        if not 1 <= i <= ideal.s:
            raise IndexOutOfRange(f"prime index {i} outside [1..{ideal.s}]")
        out |= ideal.primes[i - 1]
    return frozenset(out)


def _min_cover_count(primes, support) -> int:
    for e in range(1, len(primes) + 1):
        for combo in combinations(primes, e):
            if frozenset().union(*combo) == support:
                return e
    raise AssertionError("the whole family always covers its support")


def _all_cover_count(primes, support) -> int:
    for e in range(1, len(primes) + 1):
        if all(frozenset().union(*combo) == support for combo in combinations(primes, e)):
            return e
    raise AssertionError("the whole family always covers its support")


def profile(ideal: SquarefreeIdeal) -> IdealProfile:
    support = ideal.support
    h = len(support)
    v = _min_cover_count(ideal.primes, support)
    t = _all_cover_count(ideal.primes, support)
    deficits = [
        ideal.n - len(p | q)
        for p, q in combinations(ideal.primes, 2)
        if p | q != support
    ]
    return IdealProfile(
        support=support,
        h=h,
        v=v,
        t=t,
        size=v + (ideal.n - h) - 1,
        bigsize=t + (ideal.n - h) - 1,
        q=min(deficits) if deficits else None,
    )


def contains_monomial(ideal: SquarefreeIdeal, sigma: Iterable[int]) -> bool:
    """Whether ``x_sigma`` lies in the ideal, i.e. sigma meets every prime."""
    sigma = frozenset(sigma)
    return all(sigma & p for p in ideal.primes)


def min_generators(ideal: SquarefreeIdeal) -> list[frozenset]:
    """Minimal transversals of the prime family (Berge's incremental scheme)."""
    transversals = {frozenset()}
    for p in ideal.primes:
        grown = set()
        for t in transversals:
            if t & p:
                grown.add(t)
            else:
                grown.update(t | {x} for x in p)
        transversals = {t for t in grown if not any(u < t for u in grown)}
    return canonical_sort(transversals)


def reduce_to_support(ideal: SquarefreeIdeal) -> tuple[SquarefreeIdeal, int, dict]:
    """Relabel the support as ``1..h``.

    Returns the reduced ideal, the number of free variables dropped, and the
    map from old to new indices.
    """
    support = sorted(ideal.support)
    relabel = {x: i for i, x in enumerate(support, start=1)}
    reduced = SquarefreeIdeal(
        len(support), tuple(frozenset(relabel[x] for x in p) for p in ideal.primes)
    )
    return reduced, ideal.n - len(support), relabel


def restrict(ideal: SquarefreeIdeal, drop: Iterable[int]) -> Optional[SquarefreeIdeal]:
    """``I ∩ K[x_j : j not in drop]`` with the ambient ring kept at ``n``.

    Returns ``None`` when the intersection is the zero ideal, which happens
    exactly when some prime lies inside the dropped variables.
    """
    drop = frozenset(drop)
    cut = [p - drop for p in ideal.primes]
    if any(not p for p in cut):
        return None
    return normalize(cut, ideal.n)


def colon_variable(ideal: SquarefreeIdeal, x: int) -> Optional[SquarefreeIdeal]:
    """``I : x_x``; ``None`` stands for the unit ideal."""
    keep = [p for p in ideal.primes if x not in p]
    if not keep:
        return None
    return SquarefreeIdeal(ideal.n, tuple(keep))
