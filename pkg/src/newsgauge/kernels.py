"""Backend selection for the tree split-scan kernel.

Imports the compiled extension when it built successfully, otherwise the
numpy fallback.  Set ``NEWSGAUGE_PURE_PYTHON=1`` to force the fallback (used
by the test suite and the benchmark to compare both paths).
"""

import os

import numpy as np

from . import _split_np

if os.environ.get("NEWSGAUGE_PURE_PYTHON"):
    _impl = _split_np
    BACKEND = "numpy"
else:
    try:
        from . import _splitc as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _split_np
        BACKEND = "numpy"


def best_gini_split(values, ones, total_ones, min_leaf):
    """Best split of a sorted column against a binary target.

    Returns ``(pos, threshold, cost)``; ``pos`` is the index of the last
    left-hand row, -1 if no valid split exists.
    """
    values = np.ascontiguousarray(values, dtype=np.float64)
    ones = np.ascontiguousarray(ones, dtype=np.int64)
    return _impl.best_gini_split(values, ones, int(total_ones), int(min_leaf))


def best_mse_split(values, grad, min_leaf):
    """Best split of a sorted column against a real-valued target."""
    values = np.ascontiguousarray(values, dtype=np.float64)
    grad = np.ascontiguousarray(grad, dtype=np.float64)
    return _impl.best_mse_split(values, grad, int(min_leaf))
