# -*- coding: utf-8 -*-
# Copyright 2026 Rumma & Ko Ltd
# License: GNU Affero General Public License v3 (see file COPYING for details)

"""
Undersampling masks and the operators that apply them.

A uniform Cartesian mask keeps every `R`-th phase-encode line plus a
centered block of `acs` calibration lines:

>>> m = uniform_cartesian_mask(4, 20, R=5, acs=4)
>>> m.lines
[0, 5, 8, 9, 10, 11, 15]
>>> int(m.sampled.sum())
28

A pointwise mask draws a fixed number of k-space points with a density
that follows a Gaussian centered on the k-space center:

>>> g = gaussian_pointwise_mask(64, 64, rate=0.25, seed=3)
>>> int(g.sampled.sum())
1024

"""

import numpy as np

from inrecon.errors import InvalidInputError, InvalidParameterError
from inrecon.kspace import KspaceVolume
from inrecon.utils import make_rng

CARTESIAN = 'cartesian-lines'
POINTWISE = 'pointwise'

# relative to the peak weight 1 at the k-space center
WEIGHT_FLOOR = 1e-12


class SamplingMask(object):
    """
    A boolean ``(H, W)`` array of sampled k-space locations plus the
    parameters it was built from.
    """

    def __init__(self, sampled, kind=POINTWISE, R=None, acs=None,
                 rate=None, seed=None, axis=1):
        sampled = np.asarray(sampled).astype(bool)
        if sampled.ndim != 2:
            raise InvalidInputError(
                "Mask must be two-dimensional, got shape {}".format(
                    sampled.shape))
        if not sampled.any():
            raise InvalidParameterError("Mask samples no location")
        self.sampled = sampled
        self.kind = kind
        self.R = R
        self.acs = acs
        self.rate = rate
        self.seed = seed
        self.axis = axis

    def __repr__(self):
        return "SamplingMask({}, {}x{}, {} of {} sampled)".format(
            self.kind, self.shape[0], self.shape[1],
            int(self.sampled.sum()), self.sampled.size)

    @property
    def shape(self):
        return self.sampled.shape

    @property
    def complement(self):
        return ~self.sampled

    @property
    def lines(self):
        "Sampled phase-encode line indices (Cartesian masks only)."
        if self.kind != CARTESIAN:
            raise InvalidInputError("A pointwise mask has no lines")
        other = 1 - self.axis
        return [int(i) for i in np.flatnonzero(self.sampled.all(axis=other))]

    @property
    def sampling_rate(self):
        return float(self.sampled.mean())


def as_mask_array(m):
    "Return the boolean array of a :class:`SamplingMask` or an array."
    if isinstance(m, SamplingMask):
        return m.sampled
    return np.asarray(m).astype(bool)


def cartesian_lines(n, R, acs, offset=0):
    if not 1 <= R <= n:
        raise InvalidParameterError(
            "Acceleration R={} outside [1, {}]".format(R, n))
    if not 0 <= acs <= n:
        raise InvalidParameterError(
            "ACS line count {} outside [0, {}]".format(acs, n))
    if not 0 <= offset < R:
        raise InvalidParameterError(
            "Offset {} outside [0, {})".format(offset, R))
    start = n // 2 - acs // 2
    lines = set(range(offset, n, R)) | set(range(start, start + acs))
    return sorted(lines)


def uniform_cartesian_mask(H, W, R, acs, axis=1, offset=0):
    """
    Sample every `R`-th line along `axis` (0 for rows, 1 for columns)
    starting at `offset`, together with `acs` central lines.
    """
    if axis not in (0, 1):
        raise InvalidParameterError("axis must be 0 or 1")
    n = (H, W)[axis]
    lines = cartesian_lines(n, int(R), int(acs), int(offset))
    sampled = np.zeros((H, W), dtype=bool)
    if axis == 1:
        sampled[:, lines] = True
    else:
        sampled[lines, :] = True
    return SamplingMask(sampled, CARTESIAN, R=int(R), acs=int(acs), axis=axis)


def gaussian_pointwise_mask(H, W, rate, sigma_frac=0.15, seed=0):
    """
    Select ``round(rate * H * W)`` distinct points without replacement,
    weighted by a 2D Gaussian of standard deviation
    ``sigma_frac * (H, W)`` around the k-space center.

    Weights are floored at `WEIGHT_FLOOR`, so rate 1 selects every point
    and points far outside the Gaussian are drawn uniformly.
    """
    if not 0 < rate <= 1:
        raise InvalidParameterError(
            "Sampling rate {} outside (0, 1]".format(rate))
    if not sigma_frac > 0:
        raise InvalidParameterError("sigma_frac must be positive")
    count = max(1, int(round(rate * H * W)))
    i = np.arange(H)[:, None] - H // 2
    j = np.arange(W)[None, :] - W // 2
    weights = np.exp(-0.5 * ((i / (sigma_frac * H)) ** 2
                             + (j / (sigma_frac * W)) ** 2))
    weights = np.maximum(weights, WEIGHT_FLOOR).reshape(-1)
    rng = make_rng(seed)
    chosen = rng.choice(H * W, count, replace=False, p=weights / weights.sum())
    sampled = np.zeros(H * W, dtype=bool)
    sampled[chosen] = True
    return SamplingMask(sampled.reshape(H, W), POINTWISE, rate=rate,
                        seed=seed)


def _check_shape(k, mask):
    shape = k.shape if isinstance(k, KspaceVolume) else np.shape(k)[-2:]
    if tuple(shape) != mask.shape:
        raise InvalidInputError(
            "k-space grid {} does not match mask {}".format(
                tuple(shape), mask.shape))


def apply_mask(k, m):
    """
    Keep the sampled entries of `k` and set all others to exactly zero.

    `k` is a :class:`KspaceVolume` or an array whose last two axes match
    the mask; the result has the same type.
    """
    mask = as_mask_array(m)
    _check_shape(k, mask)
    if isinstance(k, KspaceVolume):
        return k.with_data(np.where(mask, k.data, 0))
    return np.where(mask, k, 0)


def apply_complement(k, m):
    "Like :func:`apply_mask` for the unsampled locations."
    mask = ~as_mask_array(m)
    _check_shape(k, mask)
    if isinstance(k, KspaceVolume):
        return k.with_data(np.where(mask, k.data, 0))
    return np.where(mask, k, 0)
