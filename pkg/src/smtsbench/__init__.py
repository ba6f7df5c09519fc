"""Benchmark toolkit for clustering smart-meter daily load profiles.

Generates labeled synthetic 48-sample daily load profiles, computes
time-series dissimilarities under many measures and representations, clusters
them with a range of algorithms, and scores label recovery with external
validity indices across systematic dataset-property sweeps.
"""

from .core import (
    CURVE_LEN,
    N_SAMPLES,
    OUTLIER_LABEL,
    LabeledDataset,
    SeedSpec,
    make_rng,
    minmax_normalize,
)

__version__ = "0.1.0"

__all__ = [
    "CURVE_LEN",
    "N_SAMPLES",
    "OUTLIER_LABEL",
    "LabeledDataset",
    "SeedSpec",
    "make_rng",
    "minmax_normalize",
    "__version__",
]
