"""Brute-force kernel: scan every cover set on ``size`` ranks.

Bit ``k`` of a mask switches on the ``k``-th pair ``(a, b)``, ``a < b``, in
lexicographic order.  A mask survives when its covers are irredundant and
every lower set is a contiguous block of ranks.

The scan is the one genuinely hot loop in the package (``2**28`` masks at
size 8), so it is compiled with numba when available.  Set
``ORDFOR_DISABLE_NUMBA=1`` to force the vectorised numpy path.
"""

import os

import numpy as np

CHUNK = 1 << 20

_disabled = os.environ.get("ORDFOR_DISABLE_NUMBA", "").lower() in ("1", "true", "yes")

try:
    if _disabled:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag
    HAVE_NUMBA = False


def pair_table(size):
    pairs = [(a, b) for a in range(size) for b in range(a + 1, size)]
    pa = np.array([p[0] for p in pairs], dtype=np.int64)
    pb = np.array([p[1] for p in pairs], dtype=np.int64)
    return pa, pb


def _scan_numpy(size, start, stop, pa, pb):
    masks = np.arange(start, stop, dtype=np.int64)
    ok = np.ones(masks.shape, dtype=bool)
    down = np.zeros((masks.size, size), dtype=np.int64)
    for b in range(size):
        ks = np.nonzero(pb == b)[0]
        present = [(masks >> k) & 1 == 1 for k in ks]
        d = np.full(masks.shape, 1 << b, dtype=np.int64)
        for k, on in zip(ks, present):
            d |= np.where(on, down[:, pa[k]], 0)
        for k, on in zip(ks, present):
            a = pa[k]
            for k2, on2 in zip(ks, present):
                if k2 == k:
                    continue
                hit = on & on2 & ((down[:, pa[k2]] >> a) & 1 == 1)
                ok &= ~hit
        low = d & -d
        ok &= ((d + low) & d) == 0
        down[:, b] = d
    return masks[ok]


def _by_parent(size, pb):
    # pair indices grouped by upper element: order[off[b]:off[b + 1]]
    order = np.argsort(pb, kind="stable").astype(np.int64)
    off = np.zeros(size + 1, dtype=np.int64)
    for b in range(size):
        off[b + 1] = off[b] + np.count_nonzero(pb == b)
    return order, off


def _scan_python(size, start, stop, pa, order, off, out):
    # reference loop body; compiled by numba into _scan_jit
    down = np.zeros(size, dtype=np.int64)
    count = 0
    for mask in range(start, stop):
        good = True
        for b in range(size):
            d = np.int64(1) << b
            for i in range(off[b], off[b + 1]):
                k = order[i]
                if (mask >> k) & 1:
                    a = pa[k]
                    for i2 in range(off[b], off[b + 1]):
                        k2 = order[i2]
                        if k2 != k and (mask >> k2) & 1 and (down[pa[k2]] >> a) & 1:
                            good = False
                            break
                    if not good:
                        break
                    d |= down[a]
            if not good:
                break
            low = d & -d
            if ((d + low) & d) != 0:
                good = False
                break
            down[b] = d
        if good:
            out[count] = mask
            count += 1
    return count


if HAVE_NUMBA:
    _scan_jit = njit(cache=False, nogil=True)(_scan_python)


def scan_range(size, start, stop, use_numba=None):
    """Valid masks in ``[start, stop)`` as an int64 array."""
    if use_numba is None:
        use_numba = HAVE_NUMBA
    pa, pb = pair_table(size)
    if use_numba:
        if not HAVE_NUMBA:
            raise RuntimeError("numba requested but unavailable or disabled")
        order, off = _by_parent(size, pb)
        out = np.empty(stop - start, dtype=np.int64)
        n = _scan_jit(size, start, stop, pa, order, off, out)
        return out[:n].copy()
    return _scan_numpy(size, start, stop, pa, pb)


def forest_masks(size, use_numba=None):
    """Every valid cover-set mask on ``size`` ranks, in increasing order."""
    total = 1 << (size * (size - 1) // 2)
    parts = [
        scan_range(size, s, min(s + CHUNK, total), use_numba)
        for s in range(0, total, CHUNK)
    ]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def mask_to_covers(size, mask):
    pa, pb = pair_table(size)
    return tuple(
        (int(pa[k]), int(pb[k])) for k in range(pa.shape[0]) if (int(mask) >> k) & 1
    )
