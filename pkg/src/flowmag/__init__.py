"""Entropy-based magnitude invariants of digraphs and flow graphs."""

from .cover import (
    CoverBall,
    ball_magnitude,
    ball_size_power_formula,
    ball_sizes,
    build_ball,
    log_ball_magnitude,
    polyforest_magnitude,
    volume_entropy_sequence,
)
from .exceptions import (
    CertificationError,
    DivergenceError,
    FlowGraphError,
    FlowmagError,
    ParseError,
    PreconditionError,
    SchemaError,
    ShapeError,
    SizeError,
)
from .features import (
    CorrelationReport,
    ExperimentConfig,
    FeatureConfig,
    FeatureTable,
    feature_table,
    pearson,
    run_experiment,
    trial,
)
from .flow import (
    FlowGraph,
    TropicalMatrix,
    parallel_compose,
    principal_solutions,
    series_compose,
    subflow_hom,
    tropical_magnitude,
    tropical_similarity_matrix,
    validate_flow,
)
from .graph import (
    Digraph,
    bernoulli_edge_subsample,
    classify,
    count_walks,
    dumps_edge_list,
    erdos_renyi,
    largest_weak_component,
    load_digraph,
    reverse,
    shortest_path_matrix,
)
from .metric import magnitude_function, similarity_matrix, weighting
from .spectral import (
    char_poly,
    katz_centrality,
    spectral_radius,
    topological_entropy,
    zeta_denominator,
)

__version__ = "0.1.0"
