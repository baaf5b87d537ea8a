"""Exhaustive residue-search kernels and a batched Hilbert symbol combiner.

Every routine has a numba-compiled body and a pure-numpy twin. The compiled
path is used unless ``QME_DISABLE_NUMBA`` is set to a truthy value or numba
cannot be imported; ``BACKEND`` reports which one is active.
"""
import os
from functools import lru_cache

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None

_DISABLED = os.environ.get("QME_DISABLE_NUMBA", "").lower() not in ("", "0", "false", "no")
HAVE_NUMBA = njit is not None
BACKEND = "numba" if HAVE_NUMBA and not _DISABLED else "numpy"


# -- numpy path ---------------------------------------------------------------

def square_table_np(m):
    """Boolean mask over Z/m: ``mask[r]`` iff r is a square mod m."""
    t = np.arange(m, dtype=np.int64)
    mask = np.zeros(m, dtype=np.bool_)
    mask[(t * t) % m] = True
    return mask


@lru_cache(maxsize=64)
def _square_residues(m):
    return np.unique(np.arange(m, dtype=np.int64) ** 2 % m)


def affine_square_hit_np(c0, c1, m, squares):
    """True iff c0 + c1*t^2 is a square mod m for some t in Z/m."""
    # t^2 ranges over the square residues, so search those only
    vals = (c0 + c1 * _square_residues(m)) % m
    return bool(squares[vals].any())


def split_mask_np(d, ell):
    """``mask[x]`` iff x^2 == d mod ell, for x in Z/ell."""
    x = np.arange(ell, dtype=np.int64)
    return (x * x - d) % ell == 0


def hilbert_grid_np(alpha, eps_a, t_a, beta, eps_b, t_b, c):
    """Outer combination of per-value parity bits into a +-1 matrix.

    Entry (i, j) is (-1)^e with e = c*alpha_i*beta_j + eps_i*eps_j
    + alpha_i*t_j + beta_j*t_i (mod 2); inputs are 0/1 uint8 vectors.
    """
    e = (alpha[:, None] & beta[None, :]) * np.uint8(c & 1)
    e ^= eps_a[:, None] & eps_b[None, :]
    e ^= alpha[:, None] & t_b[None, :]
    e ^= t_a[:, None] & beta[None, :]
    return (1 - 2 * e.astype(np.int8)).astype(np.int8)


# -- numba path ---------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def square_table_nb(m):
        mask = np.zeros(m, dtype=np.bool_)
        for t in range(m):
            mask[(t * t) % m] = True
        return mask

    @njit(cache=True)
    def affine_square_hit_nb(c0, c1, m, squares):
        for t in range(m):
            if squares[(c0 + c1 * ((t * t) % m)) % m]:
                return True
        return False

    @njit(cache=True)
    def split_mask_nb(d, ell):
        mask = np.zeros(ell, dtype=np.bool_)
        for x in range(ell):
            if (x * x - d) % ell == 0:
                mask[x] = True
        return mask

    @njit(cache=True)
    def hilbert_grid_nb(alpha, eps_a, t_a, beta, eps_b, t_b, c):
        out = np.empty((alpha.shape[0], beta.shape[0]), dtype=np.int8)
        c &= 1
        for i in range(alpha.shape[0]):
            for j in range(beta.shape[0]):
                e = (c & alpha[i] & beta[j]) ^ (eps_a[i] & eps_b[j]) \
                    ^ (alpha[i] & t_b[j]) ^ (t_a[i] & beta[j])
                out[i, j] = 1 - 2 * e
        return out

else:  # pragma: no cover
    hilbert_grid_nb = hilbert_grid_np
    square_table_nb = square_table_np
    affine_square_hit_nb = affine_square_hit_np
    split_mask_nb = split_mask_np


if BACKEND == "numba":
    _square_table = square_table_nb
    affine_square_hit = affine_square_hit_nb
    split_mask = split_mask_nb
    hilbert_grid = hilbert_grid_nb
else:
    _square_table = square_table_np
    affine_square_hit = affine_square_hit_np
    split_mask = split_mask_np
    hilbert_grid = hilbert_grid_np


@lru_cache(maxsize=64)
def square_table(m):
    table = _square_table(m)
    table.setflags(write=False)
    return table
