"""Numpy fallback for the split-scan kernel.

Mirrors ``_splitc.pyx`` operation for operation: integer class counts stay
exact until the final float division, and running sums use ``np.cumsum``
(sequential accumulation, same order as the compiled loop), so both backends
pick bit-identical splits.
"""

import numpy as np


def best_gini_split(values, ones, total_ones, min_leaf):
    n = values.shape[0]
    if n < 2:
        return -1, 0.0, 0.0
    nl = np.arange(1, n, dtype=np.int64)
    nr = n - nl
    l1 = np.cumsum(ones[:-1], dtype=np.int64)
    l0 = nl - l1
    r1 = total_ones - l1
    r0 = nr - r1
    cost = (nl - (l0 * l0 + l1 * l1) / nl) + (nr - (r0 * r0 + r1 * r1) / nr)
    valid = (values[:-1] != values[1:]) & (nl >= min_leaf) & (nr >= min_leaf)
    if not valid.any():
        return -1, 0.0, 0.0
    cost = np.where(valid, cost, np.inf)
    best_i = int(np.argmin(cost))  # first minimum -> lowest threshold
    return best_i, (values[best_i] + values[best_i + 1]) / 2.0, float(cost[best_i])


def best_mse_split(values, grad, min_leaf):
    n = values.shape[0]
    if n < 2:
        return -1, 0.0, 0.0
    s = np.cumsum(grad)
    q = np.cumsum(grad * grad)
    ts = s[-1]
    tq = q[-1]
    nl = np.arange(1, n, dtype=np.int64)
    nr = n - nl
    sl = s[:-1]
    ql = q[:-1]
    dl = ts - sl
    cost = (ql - sl * sl / nl) + ((tq - ql) - dl * dl / nr)
    valid = (values[:-1] != values[1:]) & (nl >= min_leaf) & (nr >= min_leaf)
    if not valid.any():
        return -1, 0.0, 0.0
    cost = np.where(valid, cost, np.inf)
    best_i = int(np.argmin(cost))
    return best_i, (values[best_i] + values[best_i + 1]) / 2.0, float(cost[best_i])
