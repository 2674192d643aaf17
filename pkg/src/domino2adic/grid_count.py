"""Exact domino-tiling counts of rectangular boards.

Two independent counters:

* :func:`count_tilings` -- broken-profile DP, one cell at a time, over a
  bitmask frontier of width ``min(rows, cols)``.  The inner loop runs in a
  compiled kernel when ``domino2adic._profile`` was built, otherwise in a
  numpy-object-array fallback; both are exact.
* :func:`count_tilings_transfer` -- row-to-row transfer matrix, built by
  enumerating the fillings of one row.  Pure Python, used as an oracle.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Union

from . import _profile_py
from .cyclotomic import BudgetExceededError, IdentityCheckError
from .padics import isqrt_exact, val2_int

try:
    if os.environ.get("DOMINO2ADIC_PURE"):
        raise ImportError("compiled kernel disabled by DOMINO2ADIC_PURE")
    from . import _profile as _profile_c
except ImportError:
    _profile_c = None

KERNELS: dict[str, Callable[[int, int], int]] = {"python": _profile_py.count_profile}
if _profile_c is not None:
    KERNELS["compiled"] = _profile_c.count_profile

DEFAULT_KERNEL = "compiled" if "compiled" in KERNELS else "python"

DEFAULT_MAX_WIDTH = 24
DEFAULT_MEMORY_LIMIT = 4 << 30


class NotAPerfectSquareError(IdentityCheckError):
    pass


@dataclass(frozen=True)
class BoardDims:
    rows: int
    cols: int

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"board sides must be >= 1, got {self.rows}x{self.cols}")


@dataclass(frozen=True)
class Budget:
    max_width: int = DEFAULT_MAX_WIDTH
    memory_limit: int = DEFAULT_MEMORY_LIMIT


@dataclass(frozen=True)
class TilingFactorization:
    n: int
    count: int
    two_exponent: int
    odd_root: int


def estimate_memory(width: int, height: int, kernel: str = DEFAULT_KERNEL) -> int:
    """Bytes held by the two profile tables."""
    limbs = _profile_py.limbs_needed(height, width)
    per_state = 8 * limbs if kernel == "compiled" else 8 + 28 + 4 * limbs
    return 2 * (1 << width) * per_state


def count_tilings(
    dims: Union[BoardDims, tuple[int, int]],
    *,
    kernel: Optional[str] = None,
    budget: Budget = Budget(),
) -> int:
    if not isinstance(dims, BoardDims):
        dims = BoardDims(*dims)
    if dims.rows * dims.cols % 2:
        return 0
    width, height = sorted((dims.rows, dims.cols))
    kernel = kernel or DEFAULT_KERNEL
    if kernel not in KERNELS:
        raise ValueError(f"unknown kernel {kernel!r}; available: {sorted(KERNELS)}")
    if width > budget.max_width:
        raise BudgetExceededError(
            f"frontier width {width} exceeds the configured maximum {budget.max_width}"
        )
    need = estimate_memory(width, height, kernel)
    if need > budget.memory_limit:
        raise BudgetExceededError(
            f"profile tables need ~{need >> 20} MiB, limit is {budget.memory_limit >> 20} MiB"
        )
    return KERNELS[kernel](height, width)


def _row_transitions(width: int) -> list[list[int]]:
    """For each mask of pre-covered cells, the masks of cells pushed into the next row."""
    table: list[list[int]] = []
    for covered in range(1 << width):
        out: list[int] = []

        def fill(c: int, cov: int, down: int) -> None:
            if c == width:
                out.append(down)
                return
            bit = 1 << c
            if cov & bit:
                fill(c + 1, cov, down)
                return
            fill(c + 1, cov | bit, down | bit)
            if c + 1 < width and not cov & (bit << 1):
                fill(c + 2, cov | bit | (bit << 1), down)

        fill(0, covered, 0)
        table.append(out)
    return table


@lru_cache(maxsize=32)
def _transitions(width: int) -> list[list[int]]:
    return _row_transitions(width)


def count_tilings_transfer(dims: Union[BoardDims, tuple[int, int]]) -> int:
    """Same count via the row transfer matrix (independent of the profile DP)."""
    if not isinstance(dims, BoardDims):
        dims = BoardDims(*dims)
    if dims.rows * dims.cols % 2:
        return 0
    width, height = sorted((dims.rows, dims.cols))
    trans = _transitions(width)
    state = {0: 1}
    for _ in range(height):
        nxt: dict[int, int] = {}
        for mask, ways in state.items():
            for down in trans[mask]:
                nxt[down] = nxt.get(down, 0) + ways
        state = nxt
    return state.get(0, 0)


def factor_square_count(
    n: int, *, kernel: Optional[str] = None, budget: Budget = Budget()
) -> TilingFactorization:
    """Split the 2n x 2n count as 2^v * r^2 with r odd."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return TilingFactorization(0, 1, 0, 1)
    count = count_tilings(BoardDims(2 * n, 2 * n), kernel=kernel, budget=budget)
    v = val2_int(count)
    root = isqrt_exact(count >> v)
    if root is None:
        raise NotAPerfectSquareError(
            f"odd part of the {2 * n}x{2 * n} count ({count >> v}) is not a perfect square"
        )
    return TilingFactorization(n, count, v, root)
