"""Pure-numpy geometric-product kernels (fallback backend).

Both kernels consume the precomputed left-translation tables from
:mod:`axialmono.kernels`: ``idxl[c, j] = c ^ j`` and
``signl[c, j] = sign(c ^ j, j)``, so that

    (x y)[c] = sum_j signl[c, j] * x[c ^ j] * y[j].
"""

from __future__ import annotations

import numpy as np


def gp(x, y, idxl, signl):
    """Geometric product of two coefficient vectors of length 2**m."""
    return (signl * x[idxl]) @ y


def gp_batch(X, Y, idxl, signl):
    """Row-wise geometric product of two (B, 2**m) coefficient arrays."""
    return np.einsum("cj,bcj,bj->bc", signl, X[:, idxl], Y, optimize=True)
