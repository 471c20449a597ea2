"""
Utility modules for iadmm-deblur
"""

from .files import ImageSource, expand_image_sources, format_size, sidecar_path
from .metrics import StopDecision, StopReason, is_exact_restoration, real_error, residual, should_stop, snr
from .traces import TRACE_COLUMNS, TableWriter, TraceWriter, read_table, read_trace

__all__ = [
    "ImageSource",
    "expand_image_sources",
    "format_size",
    "sidecar_path",
    "StopDecision",
    "StopReason",
    "is_exact_restoration",
    "real_error",
    "residual",
    "should_stop",
    "snr",
    "TRACE_COLUMNS",
    "TableWriter",
    "TraceWriter",
    "read_table",
    "read_trace",
]
