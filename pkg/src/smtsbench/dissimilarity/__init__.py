"""Distance measures over raw DLPs and the pairwise-matrix builder."""

from .measures import (
    DatasetContext,
    MeasureSpec,
    dissimilarity,
    fd,
    make_context,
    pairwise_matrix,
    parse_measure,
    sbd,
)

__all__ = [
    "DatasetContext",
    "MeasureSpec",
    "dissimilarity",
    "fd",
    "make_context",
    "pairwise_matrix",
    "parse_measure",
    "sbd",
]
