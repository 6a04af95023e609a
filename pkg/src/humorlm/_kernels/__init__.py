"""Kernel backend selection.

The compiled extension is used when it imported cleanly; otherwise the
pure-Python implementation takes over with identical semantics. Set
HUMORLM_PURE=1 to force the pure backend regardless.
"""

import os

from . import _pure

_impl = _pure
if not os.environ.get("HUMORLM_PURE"):
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        pass

accumulate_counts = _impl.accumulate_counts
tally_suffixes = _impl.tally_suffixes
context_stats = _impl.context_stats
interpolate_grams = _impl.interpolate_grams
backoff_weights = _impl.backoff_weights
log10_values = _impl.log10_values
score_sequence_ids = _impl.score_sequence_ids


def backend_name() -> str:
    return "pure" if _impl is _pure else "compiled"
