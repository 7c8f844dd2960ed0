"""Vectorised level construction for avoidance classes.

A level of length-n permutations is held as a sorted ``uint64`` array of
keys: entry ``j`` (0-based value) sits in nibble ``n-1-j``, so numeric key
order is lexicographic order within one length.  Lengths up to 16 fit.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

MAX_LENGTH = 16


def weights(n: int) -> np.ndarray:
    return (np.uint64(1) << (np.uint64(4) * np.arange(n - 1, -1, -1, dtype=np.uint64)))


def encode(rows: np.ndarray) -> np.ndarray:
    """(N, n) array of 0-based values -> (N,) keys."""
    n = rows.shape[1]
    return (rows.astype(np.uint64) * weights(n)).sum(axis=1, dtype=np.uint64)


def decode(keys: np.ndarray, n: int) -> np.ndarray:
    shifts = np.uint64(4) * np.arange(n - 1, -1, -1, dtype=np.uint64)
    return ((keys[:, None] >> shifts) & np.uint64(15)).astype(np.uint8)


def encode_perms(perms, n: int) -> np.ndarray:
    if not perms:
        return np.empty(0, dtype=np.uint64)
    rows = np.array([[x - 1 for x in p] for p in perms], dtype=np.uint8).reshape(-1, n)
    return np.unique(encode(rows))


def decode_perms(keys: np.ndarray, n: int) -> list[tuple[int, ...]]:
    rows = decode(keys, n).astype(np.int64) + 1
    return [tuple(r) for r in rows.tolist()]


def extension_keys(parent: np.ndarray, n: int) -> np.ndarray:
    """Distinct keys of all one-point extensions of a length-n level."""
    rows = decode(parent, n)
    m = n + 1
    w = weights(m)
    found = []
    for v in range(m):
        lifted = (rows + (rows >= v)).astype(np.uint64)
        batch = []
        for j in range(m):
            # positions before j keep weight index, positions from j shift by one
            key = (lifted[:, :j] * w[:j]).sum(axis=1, dtype=np.uint64)
            key += np.uint64(v) * w[j]
            key += (lifted[:, j:] * w[j + 1:]).sum(axis=1, dtype=np.uint64)
            batch.append(key)
        found.append(np.unique(np.concatenate(batch)))
    return np.unique(np.concatenate(found))


def _closed_mask(cand: np.ndarray, parent_sorted: np.ndarray, m: int) -> np.ndarray:
    rows = decode(cand, m)
    ok = np.ones(len(cand), dtype=bool)
    idx = np.arange(m)
    for k in range(m):
        keep = idx != k
        sub = rows[:, keep]
        sub = sub - (sub > rows[:, k:k + 1])
        key = encode(sub)
        pos = np.searchsorted(parent_sorted, key)
        pos[pos == len(parent_sorted)] = 0
        ok &= parent_sorted[pos] == key
        if not ok.any():
            break
    return ok


def next_level(parent: np.ndarray, n: int, forbidden: np.ndarray,
               threads: int = 1, chunk: int = 1 << 18) -> np.ndarray:
    """Length n+1 members: extensions whose whole shadow lies in ``parent``.

    A candidate whose every one-point deletion is a member avoids every basis
    element shorter than itself, so only same-length basis elements
    (``forbidden``) still need excluding.
    """
    m = n + 1
    if len(parent) == 0:
        return parent
    cand = extension_keys(parent, n)
    if len(forbidden):
        cand = cand[~np.isin(cand, forbidden)]
    pieces = [cand[s:s + chunk] for s in range(0, len(cand), chunk)]
    if threads > 1 and len(pieces) > 1:
        with ThreadPoolExecutor(threads) as ex:
            masks = list(ex.map(lambda c: _closed_mask(c, parent, m), pieces))
    else:
        masks = [_closed_mask(c, parent, m) for c in pieces]
    if not masks:
        return cand
    return cand[np.concatenate(masks)]
