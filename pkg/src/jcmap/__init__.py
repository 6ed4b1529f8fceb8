"""Reproducible hierarchical journal classification from citation matrices."""

from .clustering import ClusterConfig, QualityScore, cluster, modularity, vos_quality
from .graph import (
    CitationGraph,
    CleaningReport,
    SymmetricGraph,
    clean,
    connected_components,
    extract_subnetwork,
    filter_min_weight,
    largest_component,
    remove_loops,
    symmetrize,
)
from .hierarchy import ClusterTree, DecomposeConfig, compare_external, decompose, relabel, tree_to_partition
from .layout import MapLayout, kamada_kawai, vos_layout
from .netstats import NetworkStats, clustering_coefficient, network_stats
from .partition import Partition
from .partition_stats import AssociationReport, StabilityReport, association, stability
from .synth import PlantedSpec, planted_partition

__version__ = "0.1.0"

__all__ = [
    "AssociationReport",
    "CitationGraph",
    "CleaningReport",
    "ClusterConfig",
    "ClusterTree",
    "DecomposeConfig",
    "MapLayout",
    "NetworkStats",
    "Partition",
    "PlantedSpec",
    "QualityScore",
    "StabilityReport",
    "SymmetricGraph",
    "association",
    "clean",
    "cluster",
    "clustering_coefficient",
    "compare_external",
    "connected_components",
    "decompose",
    "extract_subnetwork",
    "filter_min_weight",
    "kamada_kawai",
    "largest_component",
    "modularity",
    "network_stats",
    "planted_partition",
    "relabel",
    "remove_loops",
    "stability",
    "symmetrize",
    "tree_to_partition",
    "vos_layout",
    "vos_quality",
]
