"""Pure numpy versions of the Cayley-table loops in ``_kernels.pyx``."""
from __future__ import annotations

import numpy as np


def element_orders(table: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    idx = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    cur = idx.copy()
    for t in range(1, n + 1):
        hit = (cur == 0) & (orders == 0)
        orders[hit] = t
        if orders.all():
            return orders
        cur = table[cur, idx]
    raise ValueError(f"some element has no finite order within {n} steps")


def power_arcs(table: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    idx = np.arange(n)
    arcs = np.zeros((n, n), dtype=bool)
    cur = idx.copy()
    # after exp(G) steps every cyclic subgroup is fully marked
    for _ in range(n):
        arcs[idx, cur] = True
        cur = table[cur, idx]
        if np.array_equal(cur, idx):
            break
    np.fill_diagonal(arcs, False)
    return arcs


def associativity_witness(table: np.ndarray, limit: int = -1):
    n = table.shape[0]
    if limit < 0 or limit > n:
        limit = n
    for a in range(limit):
        left = table[table[a]]  # left[b, c] = (ab)c
        right = table[a][table]  # right[b, c] = a(bc)
        bad = np.argwhere(left != right)
        if len(bad):
            b, c = bad[0]
            return (a, int(b), int(c))
    return None
