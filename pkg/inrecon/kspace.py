# -*- coding: utf-8 -*-
# Copyright 2026 Rumma & Ko Ltd
# License: GNU Affero General Public License v3 (see file COPYING for details)

"""
Complex k-space containers, centered orthonormal Fourier operators,
coil combination and normalization.

Images are complex :mod:`numpy` arrays of shape ``(H, W)``; coil stacks
have shape ``(N, H, W)``.  The transforms act on the last two axes, so
they accept both.  DC sits at ``(H // 2, W // 2)``.

>>> x = np.full((4, 4), 2.0 + 0j)
>>> k = fft2c(x)
>>> print(k[2, 2].real, np.count_nonzero(np.abs(k) > 1e-12))
8.0 1
>>> print(np.allclose(ifft2c(k), x))
True

>>> print(sos(np.array([[[3.0]], [[4j]]]))[0, 0])
5.0

"""

import numpy as np

from inrecon.errors import InvalidInputError
from inrecon.utils import check_finite

AXES = (-2, -1)

EPS_DIV = 1e-8


def fft2c(img):
    """Centered orthonormal 2D DFT over the last two axes."""
    img = np.asarray(img)
    check_finite(img, "image")
    tmp = np.fft.ifftshift(img, axes=AXES)
    tmp = np.fft.fft2(tmp, axes=AXES, norm="ortho")
    return np.fft.fftshift(tmp, axes=AXES)


def ifft2c(k):
    """Inverse (and adjoint) of :func:`fft2c`."""
    k = np.asarray(k)
    check_finite(k, "spectrum")
    tmp = np.fft.ifftshift(k, axes=AXES)
    tmp = np.fft.ifft2(tmp, axes=AXES, norm="ortho")
    return np.fft.fftshift(tmp, axes=AXES)


def sos(coil_images):
    """Sum-of-squares combination over the coil axis (axis 0)."""
    coil_images = np.asarray(coil_images)
    if coil_images.ndim != 3 or coil_images.shape[0] == 0:
        raise InvalidInputError(
            "Expected a non-empty (coils, H, W) stack, got shape {}".format(
                coil_images.shape))
    return np.sqrt(np.sum(np.abs(coil_images) ** 2, axis=0))


class KspaceVolume(object):
    """
    Multi-coil k-space of shape ``(coils, H, W)`` stored in double
    precision, together with the factor `scale` by which the original
    data was divided when it was normalized.
    """

    def __init__(self, data, scale=1.0):
        data = np.asarray(data, dtype=np.complex128)
        if data.ndim == 2:
            data = data[np.newaxis]
        if data.ndim != 3 or min(data.shape) < 1:
            raise InvalidInputError(
                "k-space must have shape (coils, H, W), got {}".format(
                    data.shape))
        check_finite(data, "k-space")
        if not scale > 0:
            raise InvalidInputError("scale must be positive")
        self.data = data
        self.scale = float(scale)

    def __repr__(self):
        return "KspaceVolume(coils={}, H={}, W={}, scale={})".format(
            self.coils, self.shape[0], self.shape[1], self.scale)

    @property
    def coils(self):
        return self.data.shape[0]

    @property
    def shape(self):
        "The ``(H, W)`` grid shape."
        return self.data.shape[1:]

    def coil_images(self):
        return ifft2c(self.data)

    def zero_filled(self):
        "SOS image of the inverse transform of the data as it is."
        return sos(self.coil_images())

    def with_data(self, data):
        return KspaceVolume(data, self.scale)


def reference_sensitivities(full, eps=EPS_DIV):
    """
    Sensitivity maps of a fully sampled volume: each coil image divided
    by the SOS image, set to zero where the SOS is below `eps`.

    >>> full = KspaceVolume(fft2c(np.ones((1, 2, 2)) * (1 + 1j)))
    >>> s = reference_sensitivities(full)
    >>> print(np.round(np.abs(s[0]), 12))
    [[1. 1.]
     [1. 1.]]

    """
    imgs = full.coil_images()
    combined = sos(imgs)
    keep = combined >= eps
    out = np.zeros_like(imgs)
    np.divide(imgs, combined, out=out, where=np.broadcast_to(keep, imgs.shape))
    return out


def unit_sensitivities(s, eps=EPS_DIV):
    """
    Scale a stack of sensitivity maps to unit sum of squares over the
    coils at every pixel, like :func:`reference_sensitivities` does for
    measured coil images.  Returns the scaled maps and the per-pixel
    norm ``sqrt(sum |s_j|**2 + eps**2)``.

    >>> s_hat, norm = unit_sensitivities(np.array([[[3.0]], [[4j]]]))
    >>> print(s_hat[0, 0, 0].real, s_hat[1, 0, 0].imag, norm[0, 0])
    0.6 0.8 5.0

    """
    s = np.asarray(s)
    norm = np.sqrt(np.sum(np.abs(s) ** 2, axis=0) + eps ** 2)
    return s / norm, norm


def unit_sensitivities_grad(g, s_hat, norm):
    """
    Gradient with respect to the unscaled maps, given the gradient `g`
    with respect to the maps returned by :func:`unit_sensitivities`.
    Gradients follow the ``dL/dRe + 1j * dL/dIm`` convention.
    """
    radial = np.sum((np.conj(s_hat) * g).real, axis=0)
    return (g - radial * s_hat) / norm


def normalize_kspace(k):
    """
    Scale `k` so that the zero-filled SOS image has maximum 1.

    Returns a new :class:`KspaceVolume` whose :attr:`scale` is the old
    scale multiplied by the applied factor.

    >>> k = KspaceVolume(fft2c(np.full((1, 4, 4), 7.0 + 0j)))
    >>> n = normalize_kspace(k)
    >>> print(round(n.scale, 12), round(float(n.zero_filled().max()), 12))
    7.0 1.0

    """
    peak = float(k.zero_filled().max())
    if peak == 0.0:
        raise InvalidInputError("Cannot normalize all-zero k-space")
    return KspaceVolume(k.data / peak, k.scale * peak)
