import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import brute
from sqfdepth.generate import RP2_FACETS, corpus
from sqfdepth.homology import (
    BudgetExceeded,
    FieldSpec,
    SimplicialComplex,
    check_complex,
    depth_oracle,
    hochster_betti,
    matrix_rank,
    reduced_homology_dims,
    stanley_reisner,
)
from sqfdepth.ideal import SquarefreeIdeal, normalize, profile, reduce_to_support

FIELDS = [0, 2, 3]


def _nonzero(dims):
    return {k: d for k, d in dims.items() if d}


@pytest.fixture(params=FIELDS)
def char(request):
    return request.param


def test_hollow_triangle(char):
    tri = SimplicialComplex.from_facets([[1, 2], [2, 3], [1, 3]])
    assert _nonzero(reduced_homology_dims(tri, char)) == {1: 1}


def test_two_points(char):
    pts = SimplicialComplex.from_facets([[1], [2]])
    assert _nonzero(reduced_homology_dims(pts, char)) == {0: 1}


@pytest.mark.parametrize("k", range(0, 5))
def test_simplex_and_sphere(k, char):
    verts = list(range(1, k + 2))
    simplex = SimplicialComplex.from_facets([verts])
    assert _nonzero(reduced_homology_dims(simplex, char)) == {}
    check_complex(simplex, char)
    if k >= 1:
        sphere = SimplicialComplex.from_facets(
            [[v for v in verts if v != w] for w in verts]
        )
        assert _nonzero(reduced_homology_dims(sphere, char)) == {k - 1: 1}
        check_complex(sphere, char)


def test_empty_face_only():
    # {emptyset}: H~_{-1} = 1
    assert _nonzero(reduced_homology_dims(SimplicialComplex.from_facets([[]]), 0)) == {-1: 1}


def test_rp2_structure():
    rp2 = SimplicialComplex.from_facets(RP2_FACETS)
    assert rp2.f_vector() == [1, 6, 15, 10]
    f = rp2.f_vector()
    assert f[1] - f[2] + f[3] == 1
    check_complex(rp2, 0)
    check_complex(rp2, 2)


@pytest.mark.parametrize("char, expected", [(0, {}), (3, {}), (2, {1: 1, 2: 1})])
def test_rp2_homology(char, expected):
    rp2 = SimplicialComplex.from_facets(RP2_FACETS)
    assert _nonzero(reduced_homology_dims(rp2, char)) == expected
    assert _nonzero(brute.reduced_homology(RP2_FACETS, char)) == expected


def test_stanley_reisner():
    assert sorted(map(sorted, stanley_reisner(SquarefreeIdeal(2, ([1], [2]))).facets)) == [[1], [2]]
    sizes = sorted(len(f) for f in stanley_reisner(corpus("vechi")).facets)
    assert sizes == [3, 3, 4, 4, 4]
    rp2 = stanley_reisner(corpus("rp2"))
    assert {frozenset(f) for f in rp2.facets} == {frozenset(f) for f in RP2_FACETS}


def test_field_spec():
    with pytest.raises(ValueError):
        FieldSpec(4)
    with pytest.raises(ValueError):
        FieldSpec(-2)
    assert FieldSpec(7).characteristic == 7


@pytest.mark.parametrize(
    "rows, ncols",
    [
        ([{0: 2, 1: 4}, {0: 1, 1: 2}], 2),
        ([{0: 1, 1: 1, 2: 0}, {0: 0, 1: 1, 2: 1}, {0: 1, 1: 0, 2: -1}], 3),
        ([{0: 3, 2: 6}, {1: 5}, {0: 6, 1: 5, 2: 12}], 3),
        ([{0: 2}, {1: 2}], 2),
    ],
)
@pytest.mark.parametrize("p", [0, 2, 3, 5])
def test_matrix_rank_against_sympy(rows, ncols, p):
    assert matrix_rank([dict(r) for r in rows], p) == brute.rank(rows, ncols, p)


def test_betti_principal():
    table = hochster_betti(SquarefreeIdeal(2, ([1], [2])))
    assert table.entries == {(0, frozenset()): 1, (1, frozenset({1, 2})): 1}


def test_betti_maximal_two_vars():
    table = hochster_betti(SquarefreeIdeal(2, ([1, 2],)))
    assert table.entries == {
        (0, frozenset()): 1,
        (1, frozenset({1})): 1,
        (1, frozenset({2})): 1,
        (2, frozenset({1, 2})): 1,
    }


def test_ex3_projective_dimension():
    assert hochster_betti(corpus("ex3"), 0).projective_dimension == 9


@pytest.mark.parametrize(
    "name, char, depth",
    [("vechi", 0, 4), ("vechi", 2, 4), ("rp2", 0, 4), ("rp2", 2, 3), ("ex3", 0, 4)],
)
def test_depth_oracle_corpus(name, char, depth):
    assert depth_oracle(corpus(name), char).ideal_depth == depth


def test_depth_principal():
    res = depth_oracle(SquarefreeIdeal(2, ([1], [2])))
    assert (res.module_depth, res.ideal_depth) == (1, 2)


def test_budget_cap():
    with pytest.raises(BudgetExceeded):
        hochster_betti(SquarefreeIdeal(17, ([1],)))


@st.composite
def small_ideals(draw, max_n=6, max_s=4):
    n = draw(st.integers(1, max_n))
    s = draw(st.integers(1, max_s))
    fam = [draw(st.sets(st.integers(1, n), min_size=1, max_size=n)) for _ in range(s)]
    return normalize(fam, n)


@settings(max_examples=40, deadline=None)
@given(small_ideals(), st.sampled_from([0, 2]))
def test_pd_matches_unpruned_hochster(ideal, char):
    table = hochster_betti(ideal, char, self_check=True)
    assert table.projective_dimension == brute.projective_dimension(list(ideal.primes), ideal.n, char)


@settings(max_examples=40, deadline=None)
@given(small_ideals(max_n=7))
def test_free_variable_additivity(ideal):
    reduced, free, _ = reduce_to_support(ideal)
    assert depth_oracle(reduced).module_depth + free == depth_oracle(ideal).module_depth


@settings(max_examples=40, deadline=None)
@given(small_ideals(max_n=7))
def test_lyubeznik_bound(ideal):
    assert depth_oracle(ideal).ideal_depth >= 1 + profile(ideal).size


@pytest.mark.parametrize("char", [0, 2])
def test_rp2_pd_matches_unpruned_hochster(char):
    rp2 = corpus("rp2")
    pd = brute.projective_dimension(list(rp2.primes), 6, char)
    assert depth_oracle(rp2, char).projective_dimension == pd
