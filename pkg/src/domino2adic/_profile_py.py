"""Broken-profile kernel on numpy object arrays (Python integers, no compilation)."""

from __future__ import annotations

import numpy as np


def limbs_needed(rows: int, cols: int) -> int:
    return ((rows * cols + cols) // 2 + 2) // 32 + 1


def count_profile(rows: int, cols: int) -> int:
    """Number of domino tilings of a rows x cols board; cols is the frontier width.

    Bit c of the profile says the next cell in column c is already covered.
    Each step pulls the new table from the old one, one cell at a time.
    """
    if rows <= 0 or cols <= 0:
        return 1
    if rows * cols % 2:
        return 0
    w, h = cols, rows
    size = 1 << w
    t = np.arange(size, dtype=np.int64)
    columns = []
    for c in range(w):
        bc = 1 << c
        covered = t[(t & bc) != 0]
        free_ = t[(t & bc) == 0]
        horiz = free_[(free_ & (bc << 1)) != 0] if c + 1 < w else None
        columns.append((bc, covered, free_, horiz))

    cur = np.zeros(size, dtype=object)
    cur[0] = 1
    for r in range(h):
        vertical = r + 1 < h
        for bc, covered, free_, horiz in columns:
            nxt = np.empty(size, dtype=object)
            nxt[covered] = cur[covered ^ bc] if vertical else 0
            nxt[free_] = cur[free_ | bc]
            if horiz is not None:
                nxt[horiz] += cur[horiz ^ (bc << 1)]
            cur = nxt
    return int(cur[0])
