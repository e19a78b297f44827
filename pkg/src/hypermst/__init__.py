"""Random minimum spanning subgraphs of complete t-uniform hypergraphs."""

from .algorithms import (
    AlgorithmResult,
    brute_force_msp,
    clique_expand_oracle,
    clique_lower,
    hypergraph_connected,
    kruskal_upper,
)
from .core import DisjointSetForest, HyperEdge, dsf_count_distinct, dsf_merge, dsf_new, make_edge
from .process import (
    ProcessConfig,
    ProcessTrace,
    WeightDistribution,
    generate_trace,
    inverse_cdf,
    sample_edge_stream,
    sorted_weights,
)
from .theory import (
    BetaSolution,
    TheoryConstants,
    beta_of_c,
    bound_constants,
    decay_surrogate,
    f_ratio,
    prefix_integral,
    zeta3,
)

__version__ = "0.1.0"
