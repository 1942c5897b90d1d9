"""Blade sign tables and float product kernels.

The blade basis of the real Clifford algebra with e_j^2 = -1 is indexed
by m-bit masks (bit j-1 set iff the generator e_j is a factor).  A blade
product e_a e_b lands on mask ``a ^ b`` with a sign from reordering the
concatenated factors plus one -1 per repeated generator.

Float-mode products run through a compiled Cython kernel when the
extension built, and through a numpy fallback otherwise.  Exact-rational
products never go through these kernels.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

try:
    from . import _product_cy as _impl

    BACKEND = "cython"
except ImportError:  # extension not built
    from . import _product_py as _impl

    BACKEND = "python"

from . import _product_py

MAX_DIM = 12


def reorder_sign(a: int, b: int) -> int:
    """Sign from sorting the concatenation of blade ``a`` and blade ``b``.

    Counts pairs (i in a, j in b) with i > j; each costs one transposition.
    """
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


def blade_sign(a: int, b: int) -> int:
    """Total sign of e_a e_b, including e_j^2 = -1 for repeated generators."""
    sign = reorder_sign(a, b)
    if (a & b).bit_count() & 1:
        sign = -sign
    return sign


class BladeTables:
    """Precomputed product tables for one algebra dimension m."""

    __slots__ = ("m", "n", "signs", "idxl", "signl", "grades")

    def __init__(self, m: int):
        if not 1 <= m <= MAX_DIM:
            raise ValueError(f"algebra dimension m={m} outside [1, {MAX_DIM}]")
        n = 1 << m
        signs = np.empty((n, n), dtype=np.int8)
        for i in range(n):
            for j in range(n):
                signs[i, j] = blade_sign(i, j)
        cols = np.arange(n)
        idxl = cols[:, None] ^ cols[None, :]
        self.m = m
        self.n = n
        self.signs = signs
        self.idxl = idxl.astype(np.intp)
        self.signl = signs[idxl, cols[None, :]].astype(np.float64)
        self.grades = np.array([i.bit_count() for i in range(n)], dtype=np.intp)


@lru_cache(maxsize=None)
def tables(m: int) -> BladeTables:
    return BladeTables(m)


def gp_floats(x: np.ndarray, y: np.ndarray, tab: BladeTables) -> np.ndarray:
    """Geometric product of float coefficient vectors (selected backend)."""
    if BACKEND == "cython":
        return _impl.gp(x, y, tab.signs)
    return _impl.gp(x, y, tab.idxl, tab.signl)


def gp_floats_batch(X: np.ndarray, Y: np.ndarray, tab: BladeTables) -> np.ndarray:
    """Row-wise geometric product of (B, 2**m) float arrays."""
    if BACKEND == "cython":
        return _impl.gp_batch(np.ascontiguousarray(X), np.ascontiguousarray(Y), tab.signs)
    return _impl.gp_batch(X, Y, tab.idxl, tab.signl)


def gp_floats_reference(x: np.ndarray, y: np.ndarray, tab: BladeTables) -> np.ndarray:
    """Always the pure-numpy path; used to cross-check the compiled kernel."""
    return _product_py.gp(x, y, tab.idxl, tab.signl)
