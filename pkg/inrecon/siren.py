# -*- coding: utf-8 -*-
# Copyright 2026 Rumma & Ko Ltd
# License: GNU Affero General Public License v3 (see file COPYING for details)

"""
Sine-activated coordinate networks with hand-written forward and
reverse-mode passes.

Every hidden layer computes ``sin(w0 * (W a + b))``; the output layer is
affine.  Outputs come in (real, imag) pairs and are returned as complex
numbers, one per pair.

>>> model = init(1, [4, 8, 2], w0=30.0)
>>> model.layers[-1][0][:] = 0
>>> model.layers[-1][1][:] = [0.5, -0.25]
>>> print(forward(model, np.ones((3, 4))).ravel())
[0.5-0.25j 0.5-0.25j 0.5-0.25j]

"""

import numpy as np

from inrecon.errors import InvalidInputError, NumericalError
from inrecon.utils import make_rng


def siren_dims(in_dim, hidden=256, hidden_layers=6, out_dim=2):
    """
    Layer widths of a network with one input layer, `hidden_layers`
    hidden layers of width `hidden` and an affine output layer.

    >>> siren_dims(512, 256, 2, 8)
    [512, 256, 256, 256, 8]

    """
    return [in_dim] + [hidden] * (hidden_layers + 1) + [out_dim]


class SirenModel(object):
    """
    The parameters of one network: a list of ``[weights, bias]`` pairs
    with weights of shape ``(out, in)``, the frequency scale `w0` and
    optionally the :class:`FourierFeatureMap` feeding it.
    """

    def __init__(self, layers, w0=30.0, seed=None, embedding=None):
        self.layers = [[np.asarray(W, dtype=float), np.asarray(b, dtype=float)]
                       for W, b in layers]
        for (W1, _), (W2, _) in zip(self.layers, self.layers[1:]):
            if W1.shape[0] != W2.shape[1]:
                raise InvalidInputError("Layer dimensions do not chain")
        self.w0 = float(w0)
        self.seed = seed
        self.embedding = embedding

    def __repr__(self):
        return "SirenModel(dims={}, w0={})".format(self.dims, self.w0)

    @property
    def dims(self):
        return [self.layers[0][0].shape[1]] + [W.shape[0] for W, b in self.layers]

    @property
    def in_dim(self):
        return self.dims[0]

    @property
    def out_dim(self):
        return self.dims[-1]

    def parameters(self):
        "All parameter arrays, weights and biases alternating."
        return [p for layer in self.layers for p in layer]

    def copy(self):
        return SirenModel([(W.copy(), b.copy()) for W, b in self.layers],
                          self.w0, self.seed, self.embedding)


class GradientBuffer(object):
    """Gradients congruent with :meth:`SirenModel.parameters`."""

    def __init__(self, model):
        self.arrays = [np.zeros_like(p) for p in model.parameters()]

    def zero(self):
        for a in self.arrays:
            a[:] = 0

    def is_finite(self):
        return all(np.all(np.isfinite(a)) for a in self.arrays)


def init(seed, dims, w0=30.0):
    """
    Build a network with layer widths `dims`.

    First-layer weights are uniform on ``[-1/fan_in, 1/fan_in]``, all other
    weights on ``[-sqrt(6/fan_in)/w0, sqrt(6/fan_in)/w0]``; biases are zero.
    """
    if len(dims) < 2 or min(dims) < 1:
        raise InvalidInputError("Invalid layer widths {}".format(dims))
    rng = make_rng(seed)
    layers = []
    for i, (fan_in, fan_out) in enumerate(zip(dims, dims[1:])):
        if i == 0:
            bound = 1.0 / fan_in
        else:
            bound = np.sqrt(6.0 / fan_in) / w0
        W = rng.uniform(-bound, bound, size=(fan_out, fan_in))
        layers.append((W, np.zeros(fan_out)))
    return SirenModel(layers, w0, seed)


def to_complex(out):
    return out[:, 0::2] + 1j * out[:, 1::2]


def to_channels(z):
    z = np.asarray(z)
    out = np.empty((z.shape[0], 2 * z.shape[1]))
    out[:, 0::2] = z.real
    out[:, 1::2] = z.imag
    return out


def _check_params(model):
    for p in model.parameters():
        if not np.all(np.isfinite(p)):
            raise NumericalError("Network parameters are not finite")


def forward_with_cache(model, x):
    """
    Evaluate `model` on the rows of `x` and keep every layer's input and
    pre-activation for :func:`backward`.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.shape[1] != model.in_dim:
        raise InvalidInputError(
            "Input width {} does not match network input {}".format(
                x.shape[-1], model.in_dim))
    _check_params(model)
    cache = []
    a = x
    last = len(model.layers) - 1
    for i, (W, b) in enumerate(model.layers):
        z = a @ W.T + b
        cache.append((a, z))
        a = z if i == last else np.sin(model.w0 * z)
    return to_complex(a), cache


def forward(model, x, chunk=None):
    """
    Complex network output for every row of `x`.  With `chunk`, rows are
    evaluated `chunk` at a time; each row's result does not depend on
    the chunking.
    """
    if chunk is None or chunk >= len(x):
        return forward_with_cache(model, x)[0]
    parts = [forward_with_cache(model, x[i:i + chunk])[0]
             for i in range(0, len(x), chunk)]
    return np.concatenate(parts, axis=0)


def backward(model, x, upstream, cache=None):
    """
    Reverse-mode gradients of a real loss with respect to all parameters.

    `upstream` holds ``dL/dRe + 1j * dL/dIm`` for every complex output.
    When `cache` (from :func:`forward_with_cache`) is missing, the forward
    pass is recomputed.
    """
    if cache is None:
        cache = forward_with_cache(model, x)[1]
    upstream = np.asarray(upstream)
    n_rows = cache[0][0].shape[0]
    if upstream.shape != (n_rows, model.out_dim // 2):
        raise InvalidInputError(
            "Upstream gradient shape {} does not match output {}".format(
                upstream.shape, (n_rows, model.out_dim // 2)))
    grads = GradientBuffer(model)
    g = to_channels(upstream)
    last = len(model.layers) - 1
    for i in range(last, -1, -1):
        W, b = model.layers[i]
        a, z = cache[i]
        if i != last:
            g = g * model.w0 * np.cos(model.w0 * z)
        grads.arrays[2 * i] = g.T @ a
        grads.arrays[2 * i + 1] = g.sum(axis=0)
        if i > 0:
            g = g @ W
    return grads
