# -*- coding: utf-8 -*-
# Copyright 2026 Rumma & Ko Ltd
# License: GNU Affero General Public License v3 (see file COPYING for details)

"""
Image quality metrics on magnitude images.

>>> ref = np.array([[1.0, 2.0], [3.0, 4.0]])
>>> rlne(ref, ref), rlne(np.zeros((2, 2)), ref), rlne(2 * ref, ref)
(0.0, 1.0, 1.0)
>>> psnr(ref, ref)
inf
>>> print(round(psnr(np.zeros((2, 2)), np.ones((2, 2))), 12))
0.0

"""

import math
from dataclasses import dataclass

import numpy as np
from skimage.metrics import peak_signal_noise_ratio, structural_similarity

from inrecon.errors import InvalidInputError
from inrecon.kspace import EPS_DIV

WIN_SIGMA = 1.5
WIN_SIZE = 11  # what skimage derives from WIN_SIGMA


@dataclass
class MetricReport:
    psnr: float
    ssim: float
    rlne: float

    def as_row(self):
        return [repr(self.psnr), repr(self.ssim), repr(self.rlne)]


def _magnitude(a):
    a = np.asarray(a)
    return np.abs(a) if np.iscomplexobj(a) else a.astype(float)


def _pair(recon, ref):
    recon = _magnitude(recon)
    ref = _magnitude(ref)
    if recon.shape != ref.shape:
        raise InvalidInputError("Cannot compare shapes {} and {}".format(
            recon.shape, ref.shape))
    return recon, ref


def rlne(recon, ref):
    """``||recon - ref|| / ||ref||``"""
    recon, ref = _pair(recon, ref)
    norm = np.linalg.norm(ref)
    if norm == 0:
        raise InvalidInputError("RLNE needs a nonzero reference")
    return float(np.linalg.norm(recon - ref) / norm)


def psnr(recon, ref):
    """
    ``20 log10(max(ref) / RMSE)`` in dB; ``math.inf`` for an exact match.
    """
    recon, ref = _pair(recon, ref)
    peak = float(ref.max())
    if not peak > 0:
        raise InvalidInputError("PSNR needs a reference with a positive maximum")
    if np.array_equal(recon, ref):
        return math.inf
    return float(peak_signal_noise_ratio(ref, recon, data_range=peak))


def ssim(recon, ref):
    """
    Mean structural similarity with an 11x11 Gaussian window
    (sigma 1.5), computed on images divided by the larger of their two
    maxima.  Pixels closer than 5 to the border are not averaged.
    """
    recon, ref = _pair(recon, ref)
    if min(ref.shape) < WIN_SIZE:
        raise InvalidInputError("Image {} is smaller than the {}x{} window".format(
            ref.shape, WIN_SIZE, WIN_SIZE))
    peak = max(float(recon.max()), float(ref.max()))
    if peak > 0:
        recon = recon / peak
        ref = ref / peak
    return float(structural_similarity(
        recon, ref, gaussian_weights=True, sigma=WIN_SIGMA,
        use_sample_covariance=False, data_range=1.0))


def evaluate(recon, ref):
    """Return a :class:`MetricReport` comparing two magnitude images."""
    return MetricReport(psnr(recon, ref), ssim(recon, ref), rlne(recon, ref))


def sensitivity_error(estimated, reference, eps=EPS_DIV):
    """
    RLNE between estimated and reference sensitivity maps on the support
    of the reference, after fitting one complex factor per coil (maps are
    only defined up to such a factor).
    """
    estimated = np.asarray(estimated)
    reference = np.asarray(reference)
    if estimated.shape != reference.shape:
        raise InvalidInputError("Cannot compare shapes {} and {}".format(
            estimated.shape, reference.shape))
    support = np.sqrt(np.sum(np.abs(reference) ** 2, axis=0)) >= eps
    if not support.any():
        raise InvalidInputError("Reference maps have no support")
    num = 0.0
    den = 0.0
    for e, r in zip(estimated, reference):
        e = e[support]
        r = r[support]
        ee = np.vdot(e, e)
        alpha = np.vdot(e, r) / ee if abs(ee) > 0 else 0.0
        num += float(np.sum(np.abs(alpha * e - r) ** 2))
        den += float(np.sum(np.abs(r) ** 2))
    return math.sqrt(num / den)
