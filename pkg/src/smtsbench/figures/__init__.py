"""Figure rendering for benchmark reports.

Consumes the delimited files under a report's figures_data/ directory and
renders them with matplotlib; each image gets a JSON sidecar recording the
plotted geometry so plots can be verified without image comparison.
"""

from .io import FigureDataError, read_rows, write_geometry
from .plots import RENDERERS, heatmap, rank_diagram, render, scatter, sweep_lines

__all__ = [
    "FigureDataError",
    "RENDERERS",
    "heatmap",
    "rank_diagram",
    "read_rows",
    "render",
    "scatter",
    "sweep_lines",
    "write_geometry",
]
