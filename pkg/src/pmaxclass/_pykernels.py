"""Numpy implementations of the table kernels (fallback for ``_ckernels``)."""
from __future__ import annotations

import numpy as np


def closure(table, seed, gens):
    return closure_with(lambda a, b: table[a, b], table.shape[0], seed, gens)


def closure_with(mul, n, seed, gens):
    """Breadth-first closure of ``seed | {0}`` under right multiplication by ``gens``.

    ``mul`` takes two broadcastable index arrays. Works for any group, with or
    without a materialized table.
    """
    mask = np.zeros(n, dtype=bool)
    mask[0] = True
    seed = np.asarray(seed, dtype=np.int64)
    mask[seed] = True
    gens = np.asarray(gens, dtype=np.int64)
    frontier = np.flatnonzero(mask)
    while frontier.size and gens.size:
        nxt = np.asarray(mul(frontier[:, None], gens[None, :])).ravel()
        nxt = np.unique(nxt)
        nxt = nxt[~mask[nxt]]
        mask[nxt] = True
        frontier = nxt
    return mask


def extend_hom(src, tgt, gens, imgs):
    n = src.shape[0]
    out = np.full(n, -1, dtype=np.int64)
    out[0] = 0
    gens = np.asarray(gens, dtype=np.int64)
    imgs = np.asarray(imgs, dtype=np.int64)
    frontier = np.array([0], dtype=np.int64)
    while frontier.size:
        ys = src[frontier[:, None], gens[None, :]].ravel()
        vs = tgt[out[frontier][:, None], imgs[None, :]].ravel()
        known = out[ys] >= 0
        if np.any(out[ys[known]] != vs[known]):
            return None
        ys, vs = ys[~known], vs[~known]
        # first occurrence wins; every other proposal must agree with it
        uniq, first = np.unique(ys, return_index=True)
        out[uniq] = vs[first]
        if np.any(out[ys] != vs):
            return None
        frontier = uniq
    if np.any(out < 0):
        return None
    return out


def element_orders(table):
    n = table.shape[0]
    ar = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    orders[0] = 1
    power = ar.copy()
    k = 1
    todo = ar[1:]
    while todo.size:
        k += 1
        power[todo] = table[power[todo], todo]
        done = power[todo] == 0
        orders[todo[done]] = k
        todo = todo[~done]
    return orders


def find_nonassociative(table):
    n = table.shape[0]
    for a in range(n):
        left = table[table[a], :]          # (a*b)*c
        right = table[a][table]            # a*(b*c)
        bad = np.argwhere(left != right)
        if bad.size:
            b, c = bad[0]
            return (a, int(b), int(c))
    return None


def conjugacy_class_ids(table, inv):
    n = table.shape[0]
    ar = np.arange(n)
    out = np.full(n, -1, dtype=np.int64)
    for x in range(n):
        if out[x] >= 0:
            continue
        out[table[table[inv, x], ar]] = x
    return out
