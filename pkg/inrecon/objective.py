# -*- coding: utf-8 -*-
# Copyright 2026 Rumma & Ko Ltd
# License: GNU Affero General Public License v3 (see file COPYING for details)

"""
The reconstruction objective and its gradients.

All loss functions return ``(value, gradient)``.  The gradient of a real
loss `L` with respect to a complex array `z` is ``dL/dRe(z) + 1j *
dL/dIm(z)``.  Moduli inside the gradients are smoothed as
``sqrt(|z|**2 + EPS**2)``; reported values are not smoothed.

>>> print(tv(np.array([[0.0, 1.0], [2.0, 3.0]]))[0])
6.0
>>> print(round(sens_reg_low_rank(np.ones((1, 2, 2)))[0], 12))
2.0

"""

from collections import Counter
from dataclasses import dataclass

import numpy as np

from inrecon.errors import InvalidInputError, InvalidParameterError, NumericalError
from inrecon.kspace import KspaceVolume, fft2c, ifft2c
from inrecon.sampling import as_mask_array

EPS = 1e-8

REG_KINDS = ('none', 'l1_fourier', 'low_rank', 'tv')

# short names accepted on the command line
REG_ALIASES = {'none': 'none', 'l1f': 'l1_fourier', 'lr': 'low_rank',
               'tv': 'tv', 'l1_fourier': 'l1_fourier', 'low_rank': 'low_rank'}

# how often each sensitivity regularizer was evaluated
evaluations = Counter()


@dataclass
class LossWeights:
    lambda1: float = 5e-4
    lambda2: float = 5e-4
    reg_kind: str = 'tv'
    dc_norm: str = 'l1'

    def __post_init__(self):
        if self.lambda1 < 0 or self.lambda2 < 0:
            raise InvalidParameterError("Regularization weights must be >= 0")
        kind = REG_ALIASES.get(self.reg_kind)
        if kind is None:
            raise InvalidParameterError(
                "Unknown regularizer {!r}".format(self.reg_kind))
        self.reg_kind = kind
        if self.dc_norm not in ('l1', 'l2'):
            raise InvalidParameterError(
                "Unknown data-consistency norm {!r}".format(self.dc_norm))


@dataclass
class LossReport:
    dc: float
    image_tv: float
    sens_reg: float
    total: float

    def terms(self):
        return dict(dc=self.dc, image_tv=self.image_tv,
                    sens_reg=self.sens_reg, total=self.total)


def _smooth_sign(z):
    return z / np.sqrt(np.abs(z) ** 2 + EPS ** 2)


def forward_model(x, s, m):
    """
    Predicted k-space ``U F (s_j * x)`` for every coil, shape ``(N, H, W)``.
    """
    x = np.asarray(x)
    s = np.asarray(s)
    if s.ndim != 3 or s.shape[1:] != x.shape:
        raise InvalidInputError(
            "Sensitivities {} do not match image {}".format(s.shape, x.shape))
    mask = as_mask_array(m)
    if mask.shape != x.shape:
        raise InvalidInputError(
            "Mask {} does not match image {}".format(mask.shape, x.shape))
    return np.where(mask, fft2c(s * x), 0)


def dc_loss(pred, y, m, norm='l1'):
    """
    Data consistency over the sampled locations: the sum of moduli of
    ``y - pred`` (``norm='l1'``) or half the sum of their squares
    (``norm='l2'``).  Returns the value and the gradient w.r.t. `pred`.
    """
    mask = as_mask_array(m)
    r = np.where(mask, pred - y, 0)
    if norm == 'l2':
        return 0.5 * float(np.sum(np.abs(r) ** 2)), r
    grad = np.where(mask, _smooth_sign(r), 0)
    return float(np.sum(np.abs(r))), grad


def tv(img):
    """
    Anisotropic total variation over the last two axes: the moduli of
    forward differences along rows and columns, without wraparound.
    Leading axes (coils) are summed.
    """
    img = np.asarray(img)
    d0 = np.diff(img, axis=-2)
    d1 = np.diff(img, axis=-1)
    value = float(np.sum(np.abs(d0)) + np.sum(np.abs(d1)))
    u0 = _smooth_sign(d0)
    u1 = _smooth_sign(d1)
    grad = np.zeros(img.shape, dtype=np.result_type(img, float))
    grad[..., 1:, :] += u0
    grad[..., :-1, :] -= u0
    grad[..., :, 1:] += u1
    grad[..., :, :-1] -= u1
    return value, grad


def sens_reg_l1_fourier(s):
    "Sum over coils of the L1 norm of each map's centered spectrum."
    evaluations['l1_fourier'] += 1
    k = fft2c(s)
    return float(np.sum(np.abs(k))), ifft2c(_smooth_sign(k))


def sens_reg_low_rank(s):
    "Sum over coils of the nuclear norm of each map."
    evaluations['low_rank'] += 1
    s = np.asarray(s)
    value = 0.0
    grad = np.zeros(s.shape, dtype=np.result_type(s, float))
    for j, sj in enumerate(s):
        try:
            U, sv, Vh = np.linalg.svd(sj, full_matrices=False)
        except np.linalg.LinAlgError as e:
            raise NumericalError(
                "SVD did not converge for coil {}: {}".format(j, e))
        value += float(np.sum(sv))
        grad[j] = U @ Vh
    return value, grad


def sens_reg_tv(s):
    "Total variation of every coil map, summed."
    evaluations['tv'] += 1
    return tv(s)


SENS_REGULARIZERS = {
    'l1_fourier': sens_reg_l1_fourier,
    'low_rank': sens_reg_low_rank,
    'tv': sens_reg_tv,
}


def total_loss(x, s, y, m, weights):
    """
    Evaluate ``L_DC + lambda1 * TV(x) + lambda2 * R(s)``.

    Returns a :class:`LossReport` and the gradients with respect to the
    image `x` (``(H, W)``) and the maps `s` (``(N, H, W)``).  The
    sensitivity regularizer is not evaluated when `lambda2` is zero or
    its kind is ``'none'``.
    """
    if isinstance(y, KspaceVolume):
        y = y.data
    pred = forward_model(x, s, m)
    dc, g_pred = dc_loss(pred, y, m, weights.dc_norm)
    g_coil = ifft2c(g_pred)
    g_x = np.sum(np.conj(s) * g_coil, axis=0)
    g_s = np.conj(x) * g_coil

    image_tv, g_tv = tv(x)
    g_x = g_x + weights.lambda1 * g_tv

    sens_reg = 0.0
    if weights.lambda2 > 0 and weights.reg_kind != 'none':
        sens_reg, g_reg = SENS_REGULARIZERS[weights.reg_kind](s)
        g_s = g_s + weights.lambda2 * g_reg

    total = dc + weights.lambda1 * image_tv + weights.lambda2 * sens_reg
    return LossReport(dc, image_tv, sens_reg, total), g_x, g_s
