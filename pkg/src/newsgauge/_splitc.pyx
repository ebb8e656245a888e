# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan for the best axis-aligned split of one sorted feature column.

Both functions receive a column already sorted ascending together with the
per-row targets in the same order, and return ``(pos, threshold, cost)`` where
``pos`` is the index of the last left-hand row (-1 when no valid split
exists).  Candidate thresholds are midpoints between consecutive distinct
values; ties on cost keep the lowest threshold because the scan only accepts
strictly better candidates.

The arithmetic here is kept expression-for-expression identical to the numpy
fallback in ``_split_np.py`` so both backends grow identical trees.
"""


def best_gini_split(const double[::1] values, const long long[::1] ones,
                    long long total_ones, long long min_leaf):
    """Minimise size-weighted Gini impurity for a binary 0/1 target."""
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t i, best_i = -1
    cdef long long l1 = 0, l0, r1, r0, nl, nr
    cdef double cost, best_cost = 0.0
    cdef bint found = False

    for i in range(n - 1):
        l1 += ones[i]
        if values[i] == values[i + 1]:
            continue
        nl = i + 1
        nr = n - nl
        if nl < min_leaf or nr < min_leaf:
            continue
        l0 = nl - l1
        r1 = total_ones - l1
        r0 = nr - r1
        cost = (<double> nl - (<double> (l0 * l0 + l1 * l1)) / <double> nl) \
             + (<double> nr - (<double> (r0 * r0 + r1 * r1)) / <double> nr)
        if not found or cost < best_cost:
            found = True
            best_cost = cost
            best_i = i

    if not found:
        return -1, 0.0, 0.0
    return best_i, (values[best_i] + values[best_i + 1]) / 2.0, best_cost


def best_mse_split(const double[::1] values, const double[::1] grad,
                   long long min_leaf):
    """Minimise summed squared error of a real-valued target."""
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t i, best_i = -1
    cdef long long nl, nr
    cdef double sl = 0.0, ql = 0.0, ts = 0.0, tq = 0.0
    cdef double cost, best_cost = 0.0, dl, dr
    cdef bint found = False

    for i in range(n):
        ts += grad[i]
        tq += grad[i] * grad[i]

    for i in range(n - 1):
        sl += grad[i]
        ql += grad[i] * grad[i]
        if values[i] == values[i + 1]:
            continue
        nl = i + 1
        nr = n - nl
        if nl < min_leaf or nr < min_leaf:
            continue
        dl = ts - sl
        cost = (ql - sl * sl / <double> nl) \
             + ((tq - ql) - dl * dl / <double> nr)
        if not found or cost < best_cost:
            found = True
            best_cost = cost
            best_i = i

    if not found:
        return -1, 0.0, 0.0
    return best_i, (values[best_i] + values[best_i + 1]) / 2.0, best_cost
