"""Pure-Python (numpy) fallback for the compiled kernels in ``_kernels.pyx``.

Arithmetic order matches the compiled version, so both produce identical
decisions and iteration counts.
"""

from __future__ import annotations

import numpy as np


def syndrome(row_ptr, col_idx, bits):
    rows = row_ptr.size - 1
    edge_rows = np.repeat(np.arange(rows), np.diff(row_ptr))
    ones = np.bincount(edge_rows, weights=(np.asarray(bits)[col_idx] & 1), minlength=rows)
    return (ones.astype(np.int64) & 1).astype(np.uint8)


def _padded_rows(row_ptr):
    deg = np.diff(row_ptr)
    dmax = int(deg.max()) if deg.size else 0
    slots = np.arange(dmax)
    valid = slots[None, :] < deg[:, None]
    idx = np.where(valid, row_ptr[:-1, None] + slots[None, :], 0)
    return idx, valid


def check_update(v2c_rows, valid):
    """Min-sum check-node rule on a padded ``(rows, dmax)`` block of messages.

    Each output excludes its own input: magnitude is the minimum over the
    other entries and sign the product of the other signs.
    """
    mags = np.where(valid, np.abs(v2c_rows), np.inf)
    negs = np.where(valid, v2c_rows < 0, False)
    sgn = np.bitwise_xor.reduce(negs, axis=1)
    rows = np.arange(mags.shape[0])
    pos = np.argmin(mags, axis=1)
    min1 = mags[rows, pos]
    mags[rows, pos] = np.inf
    min2 = mags.min(axis=1)
    out_mag = np.where(np.arange(mags.shape[1])[None, :] == pos[:, None], min2[:, None], min1[:, None])
    return np.where(sgn[:, None] ^ negs, -out_mag, out_mag)


def check_node_update(msgs):
    """Check-to-variable messages for a single check with incoming ``msgs``."""
    msgs = np.asarray(msgs, dtype=float)[None, :]
    return check_update(msgs, np.ones_like(msgs, dtype=bool))[0]


def minsum(row_ptr, col_idx, col_ptr, edge_of_csc, llr, max_iter, clip, hard):
    rows = row_ptr.size - 1
    cols = col_ptr.size - 1
    edge_rows = np.repeat(np.arange(rows), np.diff(row_ptr))
    idx, valid = _padded_rows(row_ptr)

    def syndrome_zero(h):
        if col_idx.size == 0:
            return True
        par = np.bincount(edge_rows, weights=h[col_idx], minlength=rows)
        return not (par.astype(np.int64) & 1).any()

    hard[:] = llr < 0
    v2c = llr[col_idx].astype(float)
    c2v = np.empty_like(v2c)
    ok = syndrome_zero(hard)
    it = 0
    while not ok and it < max_iter:
        it += 1
        if rows and idx.shape[1]:
            vals = check_update(v2c[idx], valid)
            c2v[idx[valid]] = vals[valid]
        # accumulate column sums in CSC edge order, starting from 0.0
        s = np.zeros(cols)
        if c2v.size:
            s = np.bincount(col_idx[edge_of_csc], weights=c2v[edge_of_csc], minlength=cols)
        total = llr + s
        hard[:] = total < 0
        v2c = np.clip(total[col_idx] - c2v, -clip, clip)
        ok = syndrome_zero(hard)
    return it, bool(ok)
