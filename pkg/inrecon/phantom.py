# -*- coding: utf-8 -*-
# Copyright 2026 Rumma & Ko Ltd
# License: GNU Affero General Public License v3 (see file COPYING for details)

"""
Synthetic test data: an ellipse phantom with a smooth phase, smooth
simulated coil sensitivities, and the multi-coil k-space they produce.

Ellipse geometry uses normalized coordinates: the grid spans ``[-1, 1)``
along both axes, ``x`` along columns and ``y`` along rows.

>>> spec = PhantomSpec(H=16, W=16, coils=2)
>>> make_phantom(spec).shape, make_coils(spec).shape
((16, 16), (2, 16, 16))

"""

import logging ; logger = logging.getLogger(__name__)

from dataclasses import dataclass

import numpy as np
from scipy.ndimage import gaussian_filter

from inrecon.errors import InvalidParameterError
from inrecon.kspace import KspaceVolume, fft2c
from inrecon.sampling import apply_mask
from inrecon.utils import derive_seeds, make_rng

# (center x, center y, axis x, axis y, angle in degrees, intensity)
HEAD_ELLIPSES = (
    (0.0, 0.0, 0.69, 0.92, 0.0, 0.4),
    (0.22, 0.0, 0.11, 0.31, -18.0, 0.3),
    (-0.22, 0.0, 0.16, 0.41, 18.0, 0.3),
    (0.0, 0.35, 0.21, 0.25, 0.0, 0.2),
    (0.0, 0.1, 0.046, 0.046, 0.0, 0.4),
    (0.0, -0.1, 0.046, 0.046, 0.0, 0.4),
    (-0.08, -0.605, 0.046, 0.023, 0.0, 0.5),
    (0.0, -0.605, 0.023, 0.023, 0.0, 0.5),
    (0.06, -0.605, 0.023, 0.046, 0.0, 0.5),
)


@dataclass
class PhantomSpec:
    H: int = 64
    W: int = 64
    coils: int = 4
    ellipses: tuple = HEAD_ELLIPSES
    ring_radius: float = 1.0
    coil_width: float = 0.5
    coil_phase: float = 0.5
    phase_strength: float = 0.2
    blur: float = 0.7
    unit_sos: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.H < 1 or self.W < 1:
            raise InvalidParameterError("Phantom grid must be at least 1x1")
        if self.coils < 1:
            raise InvalidParameterError("At least one coil is needed")
        for e in self.ellipses:
            if not 0 <= e[5] <= 1:
                raise InvalidParameterError(
                    "Ellipse intensity {} outside [0, 1]".format(e[5]))
        if not self.coil_width > 0:
            raise InvalidParameterError("coil_width must be positive")


def _normalized_axes(H, W):
    y = (np.arange(H) - H / 2) / (H / 2)
    x = (np.arange(W) - W / 2) / (W / 2)
    return np.meshgrid(y, x, indexing='ij')


def make_phantom(spec):
    """
    Sum of ellipse indicators, blurred by a small Gaussian, times
    ``exp(1j * phi)`` for a smooth phase ``phi`` of amplitude
    ``phase_strength * pi``.
    """
    yy, xx = _normalized_axes(spec.H, spec.W)
    mag = np.zeros((spec.H, spec.W))
    for cx, cy, ax, ay, angle, value in spec.ellipses:
        t = np.deg2rad(angle)
        dx = xx - cx
        dy = yy - cy
        u = dx * np.cos(t) + dy * np.sin(t)
        v = -dx * np.sin(t) + dy * np.cos(t)
        mag[(u / ax) ** 2 + (v / ay) ** 2 <= 1.0] += value
    if spec.blur > 0:
        mag = gaussian_filter(mag, spec.blur, mode='nearest')
    phi = spec.phase_strength * np.pi * np.sin(0.5 * np.pi * xx) \
        * np.cos(0.5 * np.pi * yy)
    return mag * np.exp(1j * phi)


def coil_centers(spec):
    "Pixel coordinates ``(row, col)`` of every coil center."
    cy = spec.H / 2
    cx = spec.W / 2
    if spec.coils == 1:
        return [(cy, cx)], [0.0]
    radius = spec.ring_radius * min(spec.H, spec.W) / 2
    angles = [2 * np.pi * j / spec.coils for j in range(spec.coils)]
    return [(cy + radius * np.sin(a), cx + radius * np.cos(a))
            for a in angles], angles


def make_coils(spec):
    """
    Coil `j` sits on a ring around the field of view; its magnitude falls
    off as a Gaussian of width ``coil_width * min(H, W)`` and its phase is
    a linear ramp pointing away from the center.  With `unit_sos` the maps
    are divided by their SOS so that they combine to one everywhere.
    """
    rows, cols = np.meshgrid(np.arange(spec.H), np.arange(spec.W),
                             indexing='ij')
    width = spec.coil_width * min(spec.H, spec.W)
    centers, angles = coil_centers(spec)
    maps = []
    for j, ((r0, c0), a) in enumerate(zip(centers, angles)):
        d2 = (rows - r0) ** 2 + (cols - c0) ** 2
        mag = np.exp(-d2 / (2 * width ** 2))
        ramp = (np.cos(a) * (cols - spec.W / 2) / spec.W
                + np.sin(a) * (rows - spec.H / 2) / spec.H)
        phase = spec.coil_phase * np.pi * j / spec.coils * (1 + ramp)
        maps.append(mag * np.exp(1j * phase))
    maps = np.array(maps)
    if spec.unit_sos:
        maps = maps / np.sqrt(np.sum(np.abs(maps) ** 2, axis=0))
    return maps


def simulate_acquisition(phantom, coils, mask, noise_sigma=0.0, seed=0):
    """
    Return ``(measured, full, sigma)``: the undersampled noisy k-space, the
    noiseless fully sampled k-space and the absolute noise level used.

    `noise_sigma` is relative to the largest DC magnitude over coils.
    The noise is complex Gaussian with ``E|n|**2 == sigma**2``.
    """
    if noise_sigma < 0:
        raise InvalidParameterError("noise_sigma must be >= 0")
    full = fft2c(coils * phantom)
    H, W = phantom.shape
    dc = float(np.max(np.abs(full[:, H // 2, W // 2])))
    sigma = noise_sigma * dc
    noisy = full
    if sigma > 0:
        rng = make_rng(seed)
        noise = rng.standard_normal(full.shape + (2,)) * (sigma / np.sqrt(2))
        noisy = full + noise[..., 0] + 1j * noise[..., 1]
    measured = apply_mask(KspaceVolume(noisy), mask)
    logger.debug("Simulated %d coils, noise sigma %g", coils.shape[0], sigma)
    return measured, KspaceVolume(full), sigma


def simulate(spec, mask, noise_sigma=0.0):
    """
    Build phantom and coils from `spec` and simulate the acquisition with
    a noise seed derived from ``spec.seed``.
    """
    phantom = make_phantom(spec)
    coils = make_coils(spec)
    noise_seed = derive_seeds(spec.seed, 1, 'noise')[0]
    measured, full, sigma = simulate_acquisition(
        phantom, coils, mask, noise_sigma, noise_seed)
    return phantom, coils, measured, full
