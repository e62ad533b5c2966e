"""Localized topological features for graph nodes and node pairs.

Extended persistence diagrams over k-hop vicinity graphs, persistence
images, structure-augmented PI+ vectors, curvature / spectral / distance
filter functions, and an expressiveness lab for separation experiments.
"""

from .curvature import CurvatureWeights, ollivier_ricci
from .filters import (EDGE_MODES, Filtration, VertexFilter, extend_to_edges,
                      normalize, pairwise_sum_filter, spd_filter,
                      tuple_distance_filter)
from .graph import (Graph, GraphError, VicinityGraph, connected_components,
                    from_edge_list, hop_distances, k_hop_vicinity,
                    pair_vicinity, weighted_distances)
from .image import (FeatureVector, PersistenceImageConfig, StructuralCounts,
                    persistence_image, pi_plus, pi_vector, structural_counts,
                    weight_alpha)
from .io import load_graph, read_edge_list, read_graph_json, write_graph_json
from .lab import (CfiGraph, EpdSignature, cfi_graph, epd_signature,
                  figure2_example, random_regular, rook_4x4, shrikhande,
                  theorem4_K)
from .persistence import (PersistenceDiagram, PersistencePoint, betti_numbers,
                          extended_pd, ordinary_pd0)
from .pipeline import (FeatureMatrix, PipelineConfig, default_k,
                       node_features, pair_features)
from .reduction import matrix_reduction_epd
from .spectral import hks_filter, normalized_laplacian
from .wl import WlColoring, wl_distinguishes, wl_refine

__version__ = "0.1.0"

__all__ = [
    "CfiGraph", "CurvatureWeights", "EDGE_MODES", "EpdSignature",
    "FeatureMatrix", "FeatureVector", "Filtration", "Graph", "GraphError",
    "PersistenceDiagram", "PersistenceImageConfig", "PersistencePoint",
    "PipelineConfig", "StructuralCounts", "VertexFilter", "VicinityGraph",
    "WlColoring", "betti_numbers", "cfi_graph", "connected_components",
    "default_k", "epd_signature", "extend_to_edges", "extended_pd",
    "figure2_example", "from_edge_list", "hks_filter", "hop_distances",
    "k_hop_vicinity", "load_graph", "matrix_reduction_epd", "node_features",
    "normalize", "normalized_laplacian", "ollivier_ricci", "ordinary_pd0",
    "pair_features", "pair_vicinity", "pairwise_sum_filter",
    "persistence_image", "pi_plus", "pi_vector", "random_regular",
    "read_edge_list", "read_graph_json", "rook_4x4", "shrikhande",
    "spd_filter", "structural_counts", "theorem4_K", "tuple_distance_filter",
    "weight_alpha", "weighted_distances", "wl_distinguishes", "wl_refine",
    "write_graph_json", "__version__",
]
