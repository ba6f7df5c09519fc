"""Clustering algorithms over dissimilarity matrices or feature vectors."""

from .birch import birch
from .genie import genie, gini_index, mst_edges
from .hac import hac
from .kmeans import kmeans
from .kmedoids import kmedoids
from .kshape import kshape, znorm
from .partition import ALGO_KINDS, HAC_LINKAGES, AlgoSpec, cluster, embed_rows, parse_algo, relabel
from .spectral import spectral

__all__ = [
    "ALGO_KINDS",
    "HAC_LINKAGES",
    "AlgoSpec",
    "birch",
    "cluster",
    "embed_rows",
    "genie",
    "gini_index",
    "hac",
    "kmeans",
    "kmedoids",
    "kshape",
    "mst_edges",
    "parse_algo",
    "relabel",
    "spectral",
    "znorm",
]
