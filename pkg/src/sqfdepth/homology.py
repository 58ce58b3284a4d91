"""Depth of ``S/I`` from reduced homology of the Stanley-Reisner complex.

Betti numbers come from Hochster's formula
``beta_{i,sigma}(S/I) = dim H~_{|sigma|-i-1}(Delta|_sigma)``; projective
dimension is the largest ``i`` with a nonzero entry and Auslander-Buchsbaum
turns it into depth. All ranks are exact: integer fraction-free elimination
over the rationals, modular elimination over ``F_p``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Iterable, Optional

from .ideal import SquarefreeIdeal, complement, reduce_to_support

DEFAULT_MAX_VARS = 16


class BudgetExceeded(RuntimeError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if not isinstance(c, int) or (c != 0 and not _is_prime(c)):
            raise ValueError(f"characteristic must be 0 or a prime, got {c!r}")

    def __str__(self):
        return f"char{self.characteristic}"


def _as_field(field) -> FieldSpec:
    return field if isinstance(field, FieldSpec) else FieldSpec(field)


# --- exact rank ------------------------------------------------------------


def _rank_gf2(rows: Iterable[int]) -> int:
    basis = {}
    for r in rows:
        while r:
            low = r & -r
            if low in basis:
                r ^= basis[low]
            else:
                basis[low] = r
                break
    return len(basis)


def _rank_mod_p(rows: Iterable[dict], p: int) -> int:
    pivots = {}
    for row in rows:
        row = {c: v % p for c, v in row.items() if v % p}
        while row:
            col = min(row)
            prow = pivots.get(col)
            if prow is None:
                inv = pow(row[col], -1, p)
                pivots[col] = {c: v * inv % p for c, v in row.items()}
                break
            b = row[col]
            for c, v in prow.items():
                nv = (row.get(c, 0) - b * v) % p
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return len(pivots)


def _rank_rational(rows: Iterable[dict]) -> int:
    pivots = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            col = min(row)
            prow = pivots.get(col)
            if prow is None:
                pivots[col] = row
                break
            a, b = prow[col], row[col]
            # row <- a*row - b*prow keeps integers and kills column col
            new = {c: a * v for c, v in row.items()}
            for c, v in prow.items():
                nv = new.get(c, 0) - b * v
                if nv:
                    new[c] = nv
                else:
                    new.pop(c, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                new = {c: v // g for c, v in new.items()}
            row = new
    return len(pivots)


def matrix_rank(rows: list, characteristic: int) -> int:
    """Rank of a sparse integer matrix given as rows ``{col: value}``."""
    if characteristic == 2:
        return _rank_gf2(sum(1 << c for c, v in r.items() if v % 2) for r in rows)
    if characteristic:
        return _rank_mod_p(rows, characteristic)
    return _rank_rational(rows)


# --- simplicial complexes --------------------------------------------------


def _bits(vs: Iterable[int]) -> int:
    out = 0
    for x in vs:
        out |= 1 << x
    return out


def _members(mask: int) -> list:
    out, x = [], 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return out


def _maximal(masks) -> list:
    masks = sorted(set(masks), key=lambda m: -bin(m).count("1"))
    out = []
    for m in masks:
        if not any(m & f == m for f in out):
            out.append(m)
    return out


@dataclass(frozen=True)
class SimplicialComplex:
    """Complex given by its facets; ``facets == ()`` is the void complex."""

    vertices: frozenset
    facets: tuple

    @classmethod
    def from_facets(cls, facets, vertices=None) -> "SimplicialComplex":
        fs = [frozenset(f) for f in facets]
        fs = [f for f in fs if not any(f < g for g in fs)]
        fs = sorted(set(fs), key=lambda f: (len(f), sorted(f)))
        vs = frozenset(vertices) if vertices is not None else frozenset().union(*fs)
        return cls(vs, tuple(fs))

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def faces(self) -> dict:
        """Faces grouped by dimension, including the empty face in degree -1."""
        return _faces_by_dim([_bits(f) for f in self.facets])

    def f_vector(self) -> list:
        by_dim = self.faces()
        return [len(by_dim.get(k, ())) for k in range(-1, self.dim + 1)]


def _faces_by_dim(facet_masks) -> dict:
    faces = set()
    for f in facet_masks:
        members = _members(f)
        for k in range(len(members) + 1):
            for c in combinations(members, k):
                faces.add(sum(1 << x for x in c))
    by_dim = {}
    for f in faces:
        by_dim.setdefault(bin(f).count("1") - 1, []).append(f)
    for k in by_dim:
        by_dim[k].sort()
    return by_dim


def boundary_rows(by_dim: dict, k: int) -> list:
    """Rows of the boundary map from k-faces to (k-1)-faces, signed."""
    target = {f: i for i, f in enumerate(by_dim.get(k - 1, ()))}
    rows = []
    for face in by_dim.get(k, ()):
        row = {}
        for pos, x in enumerate(_members(face)):
            row[target[face & ~(1 << x)]] = -1 if pos % 2 else 1
        rows.append(row)
    return rows


def _homology_from_faces(by_dim: dict, p: int) -> dict:
    if not by_dim:
        return {}
    top = max(by_dim)
    ranks = {k: matrix_rank(boundary_rows(by_dim, k), p) for k in range(0, top + 1)}
    dims = {}
    for k in range(-1, top + 1):
        nullity = len(by_dim[k]) - ranks.get(k, 0)
        dims[k] = nullity - ranks.get(k + 1, 0)
    return dims


def reduced_homology_dims(complex_: SimplicialComplex, field=0) -> dict:
    """``{k: dim H~_k}`` for ``k = -1..dim``; the void complex gives ``{}``."""
    p = _as_field(field).characteristic
    return _homology_from_faces(complex_.faces(), p)


def check_complex(complex_: SimplicialComplex, field=0) -> None:
    """Assert boundary-of-boundary and the reduced Euler identity."""
    p = _as_field(field).characteristic
    by_dim = complex_.faces()
    for k in range(1, max(by_dim, default=0) + 1):
        outer = boundary_rows(by_dim, k)
        inner = boundary_rows(by_dim, k - 1)
        for row in outer:
            composed = {}
            for c, v in row.items():
                for c2, v2 in inner[c].items():
                    composed[c2] = composed.get(c2, 0) + v * v2
            assert not any(composed.values()), f"boundary squared nonzero in degree {k}"
    dims = _homology_from_faces(by_dim, p)
    euler_faces = sum((-1) ** k * len(fs) for k, fs in by_dim.items())
    euler_homology = sum((-1) ** k * d for k, d in dims.items())
    assert euler_faces == euler_homology, "reduced Euler characteristic mismatch"


def stanley_reisner(ideal: SquarefreeIdeal) -> SimplicialComplex:
    """Facets are the complements of the primes."""
    return SimplicialComplex.from_facets(
        [complement(p, ideal.n) for p in ideal.primes], vertices=range(1, ideal.n + 1)
    )


# --- Betti numbers and depth ----------------------------------------------


@dataclass(frozen=True)
class BettiTable:
    entries: dict
    field: FieldSpec
    n: int

    @property
    def projective_dimension(self) -> int:
        return max(i for i, _ in self.entries)

    def totals(self) -> dict:
        out = {}
        for (i, _), b in self.entries.items():
            out[i] = out.get(i, 0) + b
        return dict(sorted(out.items()))

    def to_dict(self) -> dict:
        ordered = sorted(self.entries.items(), key=lambda kv: (kv[0][0], len(kv[0][1]), sorted(kv[0][1])))
        return {
            "characteristic": self.field.characteristic,
            "projective_dimension": self.projective_dimension,
            "totals": {str(i): b for i, b in self.totals().items()},
            "entries": [
                {"i": i, "sigma": sorted(sigma), "beta": b} for (i, sigma), b in ordered
            ],
        }


def hochster_betti(
    ideal: SquarefreeIdeal,
    field=0,
    max_vars: int = DEFAULT_MAX_VARS,
    self_check: bool = False,
) -> BettiTable:
    """Multigraded Betti numbers of ``S/I`` via Hochster's formula.

    Subsets whose induced complex is a cone are skipped; cones are acyclic.
    With ``self_check`` every homology computation also verifies the
    boundary-of-boundary and Euler identities.
    """
    fs = _as_field(field)
    n = ideal.n
    if n > max_vars:
        raise BudgetExceeded(f"n={n} exceeds the subset cap of {max_vars} variables")
    facet_masks = [_bits(complement(p, n)) for p in ideal.primes]
    entries = {(0, frozenset()): 1}
    cache = {}
    for size in range(1, n + 1):
        for combo in combinations(range(1, n + 1), size):
            sigma = sum(1 << x for x in combo)
            restricted = _maximal(f & sigma for f in facet_masks)
            if restricted == [0]:
                entries[(size, frozenset(combo))] = 1
                continue
            apex = sigma
            for f in restricted:
                apex &= f
            if apex:
                continue
            key = tuple(sorted(restricted))
            dims = cache.get(key)
            if dims is None:
                by_dim = _faces_by_dim(restricted)
                dims = _homology_from_faces(by_dim, fs.characteristic)
                if self_check:
                    check_complex(
                        SimplicialComplex.from_facets([_members(f) for f in restricted]),
                        fs,
                    )
                cache[key] = dims
            for k, d in dims.items():
                if d:
                    entries[(size - k - 1, frozenset(combo))] = d
    return BettiTable(entries, fs, n)


@dataclass(frozen=True)
class OracleResult:
    module_depth: int
    ideal_depth: int
    projective_dimension: int
    field: FieldSpec
    betti: Optional[BettiTable] = field(default=None, compare=False, repr=False)

    def __iter__(self):
        return iter((self.module_depth, self.ideal_depth))


def depth_oracle(
    ideal: SquarefreeIdeal,
    field=0,
    max_vars: int = DEFAULT_MAX_VARS,
    self_check: bool = False,
) -> OracleResult:
    """``depth S/I = n - pd(S/I)`` and ``depth I = depth S/I + 1``.

    When the ideal has free variables the support-reduced ideal is solved as
    well and the two answers are required to differ by exactly the number of
    free variables.
    """
    fs = _as_field(field)
    table = hochster_betti(ideal, fs, max_vars=max_vars, self_check=self_check)
    pd = table.projective_dimension
    module = ideal.n - pd
    reduced, free, _ = reduce_to_support(ideal)
    if free:
        rtable = hochster_betti(reduced, fs, max_vars=max_vars)
        if reduced.n - rtable.projective_dimension + free != module:
            raise AssertionError("free-variable reduction changed the depth")
    return OracleResult(module, module + 1, pd, fs, table)
