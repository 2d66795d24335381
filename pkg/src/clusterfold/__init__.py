"""Finite-type cluster combinatorics and folding along admissible diagram automorphisms."""

from .cartan import (
    Bipartition,
    CartanMatrix,
    DiagramAutomorphism,
    ExchangeMatrix,
    ValuedQuiver,
    bipartite_orientation,
    bipartition,
    cartan_from_label,
    check_admissible,
    fold_matrix,
    parse_cycles,
    quiver_matrix_bijection,
)
from .clusters import (
    ExchangeGraph,
    Seed,
    clusters_bruteforce,
    exchange_graph,
    exchange_partner,
    initial_seed,
    is_cluster,
    mutate_matrix,
    mutate_seed,
)
from .folding import (
    PRESETS,
    FoldingContext,
    composed_mutation_formula,
    fold_seed,
    folding_context,
    orbit_mutation,
    verify_fold_mutation,
    verify_phi,
)
from .roots import (
    CompatibilityTable,
    RootSystem,
    compatibility_degree,
    compatibility_table,
    fold_root,
    folding_degree_check,
    positive_roots,
    root_system,
    sigma_i,
    sigma_on_roots,
    tau,
)

__version__ = "0.1.0"
