# -*- coding: utf-8 -*-
# Copyright 2026 Rumma & Ko Ltd
# License: GNU Affero General Public License v3 (see file COPYING for details)

"""
Normalized coordinate grids and their random Fourier feature embedding.

>>> g = make_grid(2, 2)
>>> g.coords.tolist()
[[0.0, 0.0], [0.0, 0.5], [0.5, 0.0], [0.5, 0.5]]

>>> ffm = FourierFeatureMap(np.eye(2))
>>> print(np.round(embed(CoordinateGrid(1, 1, [[0.5, 0.25]]), ffm), 12))
[[-1.  0.  0.  1.]]

"""

import numpy as np

from inrecon.errors import InvalidInputError, InvalidParameterError
from inrecon.utils import make_rng


class CoordinateGrid(object):
    """
    Pixel coordinates ``(i / H, j / W)`` in row-major order, one row of
    :attr:`coords` per pixel.
    """

    def __init__(self, H, W, coords):
        self.H = H
        self.W = W
        self.coords = np.asarray(coords, dtype=float).reshape(-1, 2)

    def __len__(self):
        return self.coords.shape[0]


def make_grid(H, W):
    if H < 1 or W < 1:
        raise InvalidParameterError("Grid must be at least 1x1")
    x = np.arange(H) / H
    y = np.arange(W) / W
    xx, yy = np.meshgrid(x, y, indexing='ij')
    return CoordinateGrid(H, W, np.stack([xx.ravel(), yy.ravel()], axis=1))


class FourierFeatureMap(object):
    """
    A fixed real matrix `B` of shape ``(E, 2)``.  It is never trained;
    :meth:`create` draws its entries from ``N(0, sigma**2)``.
    """

    def __init__(self, B, sigma=None, seed=None):
        B = np.asarray(B, dtype=float)
        if B.ndim != 2 or B.shape[1] != 2:
            raise InvalidInputError(
                "B must have shape (E, 2), got {}".format(B.shape))
        self.B = B
        self.sigma = sigma
        self.seed = seed

    @classmethod
    def create(cls, embed_size=256, sigma=10.0, seed=0):
        if embed_size < 1:
            raise InvalidParameterError("embed_size must be positive")
        if not sigma > 0:
            raise InvalidParameterError("sigma must be positive")
        rng = make_rng(seed)
        B = rng.standard_normal((embed_size, 2)) * sigma
        return cls(B, sigma, seed)

    @property
    def embed_size(self):
        return self.B.shape[0]

    @property
    def out_dim(self):
        return 2 * self.B.shape[0]


def embed(grid, ffm):
    """Return ``[cos(2 pi B c), sin(2 pi B c)]`` for every coordinate."""
    proj = 2 * np.pi * grid.coords @ ffm.B.T
    return np.concatenate([np.cos(proj), np.sin(proj)], axis=1)
