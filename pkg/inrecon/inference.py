# -*- coding: utf-8 -*-
# Copyright 2026 Rumma & Ko Ltd
# License: GNU Affero General Public License v3 (see file COPYING for details)

"""
Final image assembly with hard data consistency.

The trained networks predict the k-space of every coil.  Wherever the
mask sampled a location, the measured value replaces the prediction;
each coil is then transformed back and the coils are combined by SOS.

>>> export_error_map(np.array([0.1, 0.3]), np.zeros(2), gain=5).tolist()
[0.5, 1.0]

"""

import logging ; logger = logging.getLogger(__name__)

from dataclasses import dataclass

import numpy as np

from inrecon.errors import InvalidInputError
from inrecon.kspace import KspaceVolume, fft2c, ifft2c, sos, unit_sensitivities
from inrecon.sampling import as_mask_array
from inrecon.siren import forward
from inrecon.trainer import network_inputs, outputs_to_arrays


@dataclass
class ReconResult:
    coil_images: np.ndarray
    combined: np.ndarray
    sensitivities: np.ndarray
    image: np.ndarray
    kspace_final: KspaceVolume
    scale: float = 1.0

    def denormalized(self):
        "The SOS image in the units of the original data."
        return self.combined * self.scale


def predict(image_net, sens_net, H, W, chunk=None):
    """
    Evaluate both networks on the full grid: ``(x, s)`` with the maps
    scaled to unit SOS as during training.
    """
    in_x = network_inputs(image_net, H, W)
    if sens_net.embedding is image_net.embedding:
        in_s = in_x
    else:
        in_s = network_inputs(sens_net, H, W)
    x, s = outputs_to_arrays(forward(image_net, in_x, chunk),
                             forward(sens_net, in_s, chunk), H, W)
    return x, unit_sensitivities(s)[0]


def combine(x, s, y, m):
    """
    Keep the model spectrum ``F(s_j * x)`` where the mask did not sample
    and the measured `y` where it did, coil by coil, and assemble a
    :class:`ReconResult`.
    """
    mask = as_mask_array(m)
    if s.shape != y.data.shape or mask.shape != tuple(y.shape):
        raise InvalidInputError(
            "Model output {}, k-space {} and mask {} disagree".format(
                s.shape, y.data.shape, mask.shape))
    predicted = fft2c(s * x)
    final = np.where(mask, 0, predicted) + y.data
    coil_images = ifft2c(final)
    return ReconResult(coil_images, sos(coil_images), s, x,
                       y.with_data(final), y.scale)


def reconstruct(image_net, sens_net, y, m, chunk=None):
    H, W = y.shape
    if sens_net.out_dim != 2 * y.coils:
        raise InvalidInputError(
            "Sensitivity network predicts {} coils, data has {}".format(
                sens_net.out_dim // 2, y.coils))
    x, s = predict(image_net, sens_net, H, W, chunk)
    logger.debug("Combining model k-space with %d measured samples",
                 int(as_mask_array(m).sum()))
    return combine(x, s, y, m)


def model_image(x, s):
    "SOS image of the network output alone, without data consistency."
    return sos(s * x)


def zero_filled(y):
    "SOS image of the inverse transform of the measured data."
    return y.zero_filled()


def export_error_map(recon, reference, gain=5.0):
    """``gain * |recon - reference|`` clipped to ``[0, 1]``."""
    recon = np.asarray(recon)
    reference = np.asarray(reference)
    if recon.shape != reference.shape:
        raise InvalidInputError("Cannot compare shapes {} and {}".format(
            recon.shape, reference.shape))
    return np.clip(gain * np.abs(recon - reference), 0.0, 1.0)
