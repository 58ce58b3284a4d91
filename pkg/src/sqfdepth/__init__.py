"""Depth, prime-sum graphs and Stanley depth of squarefree monomial ideals."""

__version__ = "0.1.0"

from .graph import (  # noqa: E402
    DepthVerdict,
    PrimeSumGraph,
    build_graph,
    complement_spanning_path,
    complement_spanning_tree,
    concatenation_split,
    depth_by_theorem,
    export_dot,
    good_vertices,
    is_join_graph,
    three_prime_formula,
)
from .homology import (  # noqa: E402
    BettiTable,
    BudgetExceeded,
    FieldSpec,
    SimplicialComplex,
    depth_oracle,
    hochster_betti,
    reduced_homology_dims,
    stanley_reisner,
)
from .ideal import (  # noqa: E402
    IdealProfile,
    SquarefreeIdeal,
    contains_monomial,
    min_generators,
    normalize,
    parse_ideal,
    profile,
    sum_of,
)
from .sdepth import (  # noqa: E402
    char_poset,
    size_lower_bound,
    sdepth_at_least,
    sdepth_exact,
    split_variable_bound,
    verify_partition,
)
from .generate import GenSpec, corpus, random_ideal, realize_graph  # noqa: E402
