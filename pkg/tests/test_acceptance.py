"""Acceptance criteria 1-9.

Each criterion is one test. Sub-checks are collected so a failing criterion
reports everything that went wrong, and a one-line PASS/FAIL summary per
criterion is printed at the end of the run (see conftest.py).
"""
import random
import time
from itertools import combinations
from math import ceil

import pytest

import brute
from sqfdepth.generate import (
    GenerationExhausted,
    GenSpec,
    corpus,
    random_concatenation,
    random_ideal,
    realize_graph,
)
from sqfdepth.graph import (
    ChainOfPairs,
    JoinSplit,
    build_graph,
    complement_spanning_path,
    depth_by_theorem,
    good_vertices,
)
from sqfdepth.homology import SimplicialComplex, check_complex, depth_oracle, reduced_homology_dims
from sqfdepth.ideal import SquarefreeIdeal, profile, reduce_to_support
from sqfdepth.sdepth import prime_sdepth, sdepth_exact, split_variable_bound

pytestmark = pytest.mark.acceptance


class Checks:
    def __init__(self):
        self.failures = []

    def __call__(self, ok, what):
        if not ok:
            self.failures.append(what)

    def done(self):
        assert not self.failures, "; ".join(self.failures)


def _pairs(*codes):
    return {tuple(int(c) for c in code) for code in codes}


def test_criterion_1_vechi():
    check, start = Checks(), time.perf_counter()
    ideal = corpus("vechi")
    prof = profile(ideal)
    check((prof.size, prof.bigsize, prof.q) == (1, 2, 2), f"profile {prof}")
    g = build_graph(ideal)
    check(set(g.edges) == _pairs("13", "15", "35", "14", "23", "24"), f"edges {sorted(g.edges)}")
    check(good_vertices(g) == {5}, f"good vertices {good_vertices(g)}")
    check(depth_by_theorem(ideal).ideal_depth == 4, "theorem depth")
    for c in (0, 2):
        d = depth_oracle(ideal, c, self_check=True).ideal_depth
        check(d == 4, f"oracle char {c} gave {d}")
    elapsed = time.perf_counter() - start
    check(elapsed < 10, f"runtime {elapsed:.1f}s")
    check.done()


def test_criterion_2_ex3():
    check, start = Checks(), time.perf_counter()
    ideal = corpus("ex3")
    prof = profile(ideal)
    check(prof.bigsize == 2 == prof.q, f"bigsize {prof.bigsize}, q {prof.q}")
    path = complement_spanning_path(build_graph(ideal))
    check(path == [6, 1, 2, 5, 4, 3], f"complement path {path}")
    check(depth_by_theorem(ideal).ideal_depth == 4, "theorem depth")
    for c in (0, 2):
        d = depth_oracle(ideal, c).ideal_depth
        check(d == 4, f"oracle char {c} gave {d}")
    elapsed = time.perf_counter() - start
    check(elapsed < 60, f"runtime {elapsed:.1f}s")
    bound = split_variable_bound(ideal, 1)
    check(bound >= 4, f"split bound at x1 is {bound}")
    check.done()


def test_criterion_3_rp2():
    check, start = Checks(), time.perf_counter()
    ideal = corpus("rp2")
    d0 = depth_oracle(ideal, 0, self_check=True).ideal_depth
    d2 = depth_oracle(ideal, 2, self_check=True).ideal_depth
    check((d0, d2) == (4, 3), f"oracle depths char0={d0} char2={d2}")
    prof = profile(ideal)
    check(prof.size == 2, f"size {prof.size}")
    # stated value; the definition gives 5 (see the decisions ledger)
    check(prof.bigsize == 3, f"bigsize {prof.bigsize}, expected 3")
    check(not depth_by_theorem(ideal).applicable, "theorem verdict applicable")
    elapsed = time.perf_counter() - start
    check(elapsed < 5, f"runtime {elapsed:.1f}s")
    check.done()


def _bigsize2_instances(count=200, seed=2024):
    """Seeded support-reduced bigsize-2 instances with n <= 9, s <= 6."""
    rng = random.Random(seed)
    targets = ("bigsize2", "join", "chain", "tree", "graph")
    out, k = [], 0
    while len(out) < count:
        k += 1
        target = targets[k % len(targets)]
        s = rng.randint(3, 6)
        n = rng.randint(s, 9)
        q = rng.choice((1, 2, 3)) if target in ("chain", "tree") else 1
        try:
            if target == "graph":
                pairs = list(combinations(range(1, s + 1), 2))
                edges = [p for p in pairs if rng.random() < 0.5]
                ideal = realize_graph((s, edges), rng.choice((1, 2)))
            else:
                ideal = random_ideal(GenSpec(n=n, s=s, target=target, seed=rng.randrange(10**9), q=q, max_attempts=2000)).ideal
        except (GenerationExhausted, ValueError):
            continue
        if ideal.n > 9 or ideal.s > 6:
            continue
        reduced, free, _ = reduce_to_support(ideal)
        if free or profile(ideal).bigsize != 2:
            continue
        out.append(ideal)
    return out


@pytest.fixture(scope="module")
def bigsize2_cases():
    start = time.perf_counter()
    cases = []
    for ideal in _bigsize2_instances():
        cases.append(
            (
                ideal,
                depth_by_theorem(ideal),
                depth_oracle(ideal, 0).ideal_depth,
                depth_oracle(ideal, 2).ideal_depth,
            )
        )
    return cases, time.perf_counter() - start


def test_criterion_4_characteristic_independence(bigsize2_cases):
    check = Checks()
    cases, elapsed = bigsize2_cases
    check(len(cases) >= 200, f"only {len(cases)} instances")
    for ideal, verdict, d0, d2 in cases:
        check(
            verdict.applicable and verdict.ideal_depth == d0 == d2,
            f"{ideal}: theorem {verdict.ideal_depth}, char0 {d0}, char2 {d2}",
        )
    check(elapsed < 600, f"runtime {elapsed:.1f}s")
    check.done()


def _complement_triangle(g):
    return any(
        not g.has_edge(a, b) and not g.has_edge(a, c) and not g.has_edge(b, c)
        for a, b, c in combinations(range(1, g.s + 1), 3)
    )


def test_criterion_5_trichotomy(bigsize2_cases):
    check = Checks()
    cases, _ = bigsize2_cases
    kinds, triangles = set(), 0
    for ideal, verdict, d0, _ in cases:
        value = d0 - 1  # reduced module depth from the oracle (no free variables)
        q = verdict.q
        check(value in {1, 2, 1 + q}, f"{ideal}: module depth {value} with q={q}")
        join = isinstance(verdict.certificate, JoinSplit)
        chain = isinstance(verdict.certificate, ChainOfPairs)
        check(join == (value == 1), f"{ideal}: JoinSplit={join} but value {value}")
        check(chain == (q > 1 and value == 1 + q), f"{ideal}: ChainOfPairs={chain}, value {value}, q {q}")
        kinds.add(type(verdict.certificate).__name__)
        if _complement_triangle(build_graph(ideal)):
            triangles += 1
            check(value <= 2, f"{ideal}: complement triangle but value {value}")
    check(kinds >= {"JoinSplit", "ChainOfPairs", "Fallback"}, f"certificate kinds seen {kinds}")
    check(triangles > 0, "no complement-triangle instance in the sample")
    check.done()


def test_criterion_6_concatenation_law():
    check, start = Checks(), time.perf_counter()
    for seed in range(20):
        cat = random_concatenation(seed)
        whole = depth_oracle(cat.ideal).ideal_depth
        parts = [depth_oracle(cat.part(k)).ideal_depth for k in (1, 2)]
        check(whole == min(parts), f"seed {seed}: whole {whole}, parts {parts}")
    elapsed = time.perf_counter() - start
    check(elapsed < 300, f"runtime {elapsed:.1f}s")
    check.done()


def test_criterion_7_stanley_conjecture():
    check, start = Checks(), time.perf_counter()
    rng = random.Random(77)
    targets = ("bigsize2", "join", "chain", "tree")
    done, k = 0, 0
    while done < 50 and k < 400:
        k += 1
        s = rng.randint(3, 5)
        n = rng.randint(s + 1, 8)
        try:
            ideal = random_ideal(
                GenSpec(n=n, s=s, target=targets[k % 4], seed=rng.randrange(10**9), q=rng.choice((1, 2)), max_attempts=2000)
            ).ideal
        except GenerationExhausted:
            continue
        if ideal.n > 8 or profile(ideal).bigsize > 2:
            continue
        sd = sdepth_exact(ideal, budget_ms=120_000).value
        depth = depth_oracle(ideal).ideal_depth
        size = profile(ideal).size
        check(sd >= depth, f"{ideal}: sdepth {sd} < depth {depth}")
        check(sd >= 1 + size, f"{ideal}: sdepth {sd} < 1 + size {size}")
        done += 1
    check(done >= 50, f"only {done} instances")
    elapsed = time.perf_counter() - start
    check(elapsed < 900, f"runtime {elapsed:.1f}s")
    check.done()


def test_criterion_8_solver_calibration():
    check = Checks()
    for n in range(2, 7):
        full = frozenset(range(1, n + 1))
        got = sdepth_exact(SquarefreeIdeal(n, (full,))).value
        exhaustive = brute.best_partition_depth(brute.poset([full], n))
        check(got == exhaustive == ceil(n / 2), f"maximal ideal n={n}: {got}, exhaustive {exhaustive}")
    for n in range(1, 7):
        for h in range(1, n + 1):
            got = sdepth_exact(SquarefreeIdeal(n, (list(range(1, h + 1)),))).value
            check(got == prime_sdepth(n, h), f"prime n'={n} h'={h}: {got} vs {prime_sdepth(n, h)}")
    check.done()


def test_criterion_9_oracle_self_checks():
    check = Checks()
    # fixtures: simplices and sphere boundaries over several fields
    for k in range(0, 6):
        verts = list(range(1, k + 2))
        for c in (0, 2, 3):
            simplex = SimplicialComplex.from_facets([verts])
            check_complex(simplex, c)
            check(not any(reduced_homology_dims(simplex, c).values()), f"simplex {k} char {c}")
            if k:
                sphere = SimplicialComplex.from_facets([[v for v in verts if v != w] for w in verts])
                check_complex(sphere, c)
                dims = {d: m for d, m in reduced_homology_dims(sphere, c).items() if m}
                check(dims == {k - 1: 1}, f"sphere {k - 1} char {c}: {dims}")
    # every induced complex of these ideals runs through the boundary and Euler checks
    ideals = [corpus(name) for name in ("vechi", "rp2", "k3join")]
    ideals += _bigsize2_instances(count=30, seed=9)
    for ideal in ideals:
        for c in (0, 2):
            depth_oracle(ideal, c, self_check=True)
        # support-reduction additivity, with two free variables added
        padded = SquarefreeIdeal(ideal.n + 2, ideal.primes)
        reduced, free, _ = reduce_to_support(padded)
        got = depth_oracle(padded, 0, self_check=True).module_depth
        base = depth_oracle(reduced, 0).module_depth
        check(got == base + free, f"{ideal}: padded {got} vs {base}+{free}")
    check.done()
