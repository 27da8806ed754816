"""Incremental connectivity queries for disk intersection graphs with arbitrary radii."""

from .awnn import AwnnEntry, AwnnStructure, ScanAwnn, TieredAwnn
from .component_tree import ComponentTree, MergeReport, TreeStats, Violation
from .connectivity import DiskConnectivity, Stats
from .dsu import DsuForest
from .geometry import Point, Site, disks_intersect, euclidean_distance, weighted_distance
from .oracle import BruteForceOracle, GeneratorConfig, bfs_components, generate

__all__ = [
    "AwnnEntry",
    "AwnnStructure",
    "ScanAwnn",
    "TieredAwnn",
    "ComponentTree",
    "MergeReport",
    "TreeStats",
    "Violation",
    "DiskConnectivity",
    "Stats",
    "DsuForest",
    "Point",
    "Site",
    "disks_intersect",
    "euclidean_distance",
    "weighted_distance",
    "BruteForceOracle",
    "GeneratorConfig",
    "bfs_components",
    "generate",
]

__version__ = "0.1.0"
