"""Representation methods mapping a 48-sample DLP to a feature vector (or, for
SAX, a symbol string with its own distances)."""

from .bof import BOF_FEATURE_NAMES, BofModel, bof_apply, bof_features, bof_fit
from .dwt import dwt, dwt_max_level, dwt_reconstruct
from .images import gaf, mtf
from .linear import PcaModel, paa, pca_apply, pca_fit
from .sax import sax, sax_distance
from .specs import RepSpec, parse_rep, represent_dataset

__all__ = [
    "BOF_FEATURE_NAMES",
    "BofModel",
    "bof_apply",
    "bof_features",
    "bof_fit",
    "dwt",
    "dwt_max_level",
    "dwt_reconstruct",
    "gaf",
    "mtf",
    "PcaModel",
    "paa",
    "pca_apply",
    "pca_fit",
    "sax",
    "sax_distance",
    "RepSpec",
    "parse_rep",
    "represent_dataset",
]
