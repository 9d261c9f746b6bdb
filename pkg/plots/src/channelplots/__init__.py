"""Batch figure rendering for channel-reconstruction sweep CSVs."""

from .errors import ChannelPlotsError, EmptySelection, MissingColumn
from .figures import (
    CurveCoverage,
    FigureSpec,
    KIND_ERROR_VS_N,
    KIND_ERROR_VS_T,
    plot_error_vs_n,
    plot_error_vs_t,
    render,
)
from .reader import SweepRow, apply_filters, read_rows

__version__ = "0.1.0"
