# -*- coding: utf-8 -*-
# Copyright 2026 Rumma & Ko Ltd
# License: GNU Affero General Public License v3 (see file COPYING for details)

"""
Joint fitting of the image network and the sensitivity network.

Each network has its own :class:`AdamState`.  One iteration evaluates
both networks on the full coordinate grid, scales the sensitivity maps
to unit SOS per pixel, computes :func:`inrecon.objective.total_loss`,
back-propagates and takes one Adam step per network.

Image and maps enter the forward model only as a product, so the
scaling leaves a per-pixel phase as the only freedom between them.

"""

import logging ; logger = logging.getLogger(__name__)

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from inrecon.embedding import FourierFeatureMap, embed, make_grid
from inrecon.kspace import unit_sensitivities, unit_sensitivities_grad
from inrecon.errors import InvalidInputError, InvalidParameterError, NumericalError
from inrecon.objective import LossReport, LossWeights, total_loss
from inrecon.sampling import as_mask_array
from inrecon.siren import SirenModel, backward, forward_with_cache, init, siren_dims
from inrecon.utils import atomic_write, derive_seeds


class AdamState(object):
    """First and second moment buffers of one network's parameters."""

    def __init__(self, params, lr=1e-4, beta1=0.9, beta2=0.999, eps=1e-8):
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]


def adam_step(params, grads, state, lr=None):
    """
    Apply one bias-corrected Adam update to `params` in place and return
    them together with the updated `state`.
    """
    if len(params) != len(grads) or any(
            p.shape != g.shape for p, g in zip(params, grads)):
        raise InvalidInputError("Gradients do not match parameters")
    for i, g in enumerate(grads):
        if not np.all(np.isfinite(g)):
            raise NumericalError(
                "Non-finite gradient in parameter array {} at step {}".format(
                    i, state.t + 1))
    if lr is None:
        lr = state.lr
    state.t += 1
    c1 = 1.0 - state.beta1 ** state.t
    c2 = 1.0 - state.beta2 ** state.t
    for p, g, m, v in zip(params, grads, state.m, state.v):
        m *= state.beta1
        m += (1.0 - state.beta1) * g
        v *= state.beta2
        v += (1.0 - state.beta2) * g * g
        p -= lr * (m / c1) / (np.sqrt(v / c2) + state.eps)
    return params, state


@dataclass
class TrainConfig:
    iters: int = 1000
    lr: float = 1e-4
    lr_sens: float = None
    weights: LossWeights = field(default_factory=LossWeights)
    seed: int = 0
    log_every: int = 100
    hidden: int = 256
    layers: int = 6
    embed_size: int = 256
    sigma: float = 10.0
    w0: float = 30.0
    w0_sens: float = None
    separate_embeddings: bool = False
    cosine: bool = False
    checkpoint_every: int = 0
    checkpoint_path: str = None

    def __post_init__(self):
        if self.iters < 1:
            raise InvalidParameterError("iters must be at least 1")
        if not self.lr > 0 or (self.lr_sens is not None and not self.lr_sens > 0):
            raise InvalidParameterError("Learning rates must be positive")
        if self.hidden < 1 or self.layers < 0:
            raise InvalidParameterError("Invalid network size")

    def learning_rate(self, base, step):
        "Learning rate for the 0-based `step`."
        if not self.cosine:
            return base
        return base * 0.5 * (1.0 + math.cos(math.pi * step / self.iters))


class FitResult(object):
    """Both trained networks, their optimizer states and the loss trace."""

    def __init__(self, image_net, sens_net, image_opt, sens_opt, trace=None):
        self.image_net = image_net
        self.sens_net = sens_net
        self.image_opt = image_opt
        self.sens_opt = sens_opt
        self.trace = trace or []

    @property
    def iteration(self):
        return self.image_opt.t


def build_networks(coils, cfg):
    seeds = derive_seeds(cfg.seed, 4, 'networks')
    ffm = FourierFeatureMap.create(cfg.embed_size, cfg.sigma, seeds[0])
    if cfg.separate_embeddings:
        ffm_sens = FourierFeatureMap.create(cfg.embed_size, cfg.sigma, seeds[3])
    else:
        ffm_sens = ffm
    image_net = init(seeds[1], siren_dims(
        ffm.out_dim, cfg.hidden, cfg.layers, 2), cfg.w0)
    w0_sens = cfg.w0 if cfg.w0_sens is None else cfg.w0_sens
    sens_net = init(seeds[2], siren_dims(
        ffm_sens.out_dim, cfg.hidden, cfg.layers, 2 * coils), w0_sens)
    image_net.embedding = ffm
    sens_net.embedding = ffm_sens
    return image_net, sens_net


def network_inputs(net, H, W):
    return embed(make_grid(H, W), net.embedding)


def outputs_to_arrays(out_x, out_s, H, W):
    x = out_x[:, 0].reshape(H, W)
    s = out_s.T.reshape(out_s.shape[1], H, W)
    return x, s


def check_measurements(y, m):
    mask = as_mask_array(m)
    if tuple(y.shape) != mask.shape:
        raise InvalidInputError("k-space grid {} does not match mask {}".format(
            tuple(y.shape), mask.shape))
    if np.any(y.data[:, ~mask] != 0):
        raise InvalidInputError("k-space has nonzero entries outside the mask")
    return mask


def check_resume(result, coils):
    if result.sens_net.out_dim != 2 * coils:
        raise InvalidInputError("Checkpoint was trained for {} coils".format(
            result.sens_net.out_dim // 2))


def _check_report(report, iteration):
    for name, value in report.terms().items():
        if not math.isfinite(value):
            raise NumericalError(
                "Non-finite {} loss at iteration {}".format(name, iteration))


def _check_output(a, what, iteration):
    if not np.all(np.isfinite(a)):
        raise NumericalError(
            "Non-finite {} output at iteration {}".format(what, iteration))


def loss_and_gradients(image_net, sens_net, in_x, in_s, y, m, weights,
                       iteration=0):
    """
    One forward and backward pass through both networks.

    The sensitivity network output is scaled to unit SOS per pixel
    before it enters the loss.  Returns the :class:`LossReport` and the
    parameter gradients of the image and the sensitivity network.
    """
    H, W = as_mask_array(m).shape
    out_x, cache_x = forward_with_cache(image_net, in_x)
    out_s, cache_s = forward_with_cache(sens_net, in_s)
    x, s_raw = outputs_to_arrays(out_x, out_s, H, W)
    _check_output(x, 'image', iteration)
    _check_output(s_raw, 'sensitivity', iteration)
    s, norm = unit_sensitivities(s_raw)
    _check_output(norm, 'sensitivity', iteration)
    report, g_x, g_s = total_loss(x, s, y, m, weights)
    _check_report(report, iteration)
    g_s = unit_sensitivities_grad(g_s, s, norm)
    grads_x = backward(image_net, in_x, g_x.reshape(-1, 1), cache_x)
    grads_s = backward(sens_net, in_s, g_s.reshape(len(s), -1).T, cache_s)
    return report, grads_x, grads_s


def fit(y, m, cfg, resume=None):
    """
    Fit both networks to the measured k-space `y` under mask `m`.

    When `resume` is a :class:`FitResult`, training continues from it
    until `cfg.iters` iterations have been done in total.
    """
    mask = check_measurements(y, m)
    H, W = y.shape
    if resume is None:
        image_net, sens_net = build_networks(y.coils, cfg)
        lr_sens = cfg.lr if cfg.lr_sens is None else cfg.lr_sens
        result = FitResult(
            image_net, sens_net,
            AdamState(image_net.parameters(), cfg.lr),
            AdamState(sens_net.parameters(), lr_sens))
    else:
        result = resume
        check_resume(result, y.coils)
    image_net = result.image_net
    sens_net = result.sens_net
    in_x = network_inputs(image_net, H, W)
    if sens_net.embedding is image_net.embedding:
        in_s = in_x
    else:
        in_s = network_inputs(sens_net, H, W)

    logger.info("Fitting %d coils on %dx%d grid, %d iterations, reg=%s",
                y.coils, H, W, cfg.iters, cfg.weights.reg_kind)
    for it in range(result.iteration, cfg.iters):
        report, grads_x, grads_s = loss_and_gradients(
            image_net, sens_net, in_x, in_s, y.data, mask, cfg.weights, it)
        result.trace.append(report)

        try:
            adam_step(image_net.parameters(), grads_x.arrays, result.image_opt,
                      cfg.learning_rate(result.image_opt.lr, it))
            adam_step(sens_net.parameters(), grads_s.arrays, result.sens_opt,
                      cfg.learning_rate(result.sens_opt.lr, it))
        except NumericalError as e:
            raise NumericalError("Iteration {}: {}".format(it, e))

        logger.debug("iteration %d total %.6g", it, report.total)
        if cfg.log_every and (it % cfg.log_every == 0 or it == cfg.iters - 1):
            logger.info("iteration %d: dc=%.6g image_tv=%.6g sens_reg=%.6g "
                        "total=%.6g", it, report.dc, report.image_tv,
                        report.sens_reg, report.total)
        if cfg.checkpoint_every and cfg.checkpoint_path \
                and (it + 1) % cfg.checkpoint_every == 0:
            save_checkpoint(cfg.checkpoint_path, result)
    return result


TRACE_FIELDS = ('iteration', 'dc', 'image_tv', 'sens_reg', 'total')


def write_loss_trace(filename, trace):
    with atomic_write(filename, 'w', newline='') as fd:
        w = csv.writer(fd)
        w.writerow(TRACE_FIELDS)
        for i, r in enumerate(trace):
            w.writerow([i, repr(r.dc), repr(r.image_tv), repr(r.sens_reg),
                        repr(r.total)])


def read_loss_trace(filename):
    with open(filename, newline='') as fd:
        rows = list(csv.DictReader(fd))
    return [LossReport(float(r['dc']), float(r['image_tv']),
                       float(r['sens_reg']), float(r['total'])) for r in rows]


def _net_arrays(prefix, net, opt):
    d = {
        prefix + 'w0': np.array(net.w0),
        prefix + 'seed': np.array(str(net.seed)),
        prefix + 'B': net.embedding.B,
        prefix + 'sigma': np.array(np.nan if net.embedding.sigma is None
                                   else net.embedding.sigma),
        prefix + 'nlayers': np.array(len(net.layers)),
        prefix + 'lr': np.array(opt.lr),
        prefix + 't': np.array(opt.t),
    }
    for i, (p, m, v) in enumerate(zip(net.parameters(), opt.m, opt.v)):
        d[prefix + 'p{}'.format(i)] = p
        d[prefix + 'm{}'.format(i)] = m
        d[prefix + 'v{}'.format(i)] = v
    return d


def _load_net(prefix, z):
    n = int(z[prefix + 'nlayers'])
    params = [z[prefix + 'p{}'.format(i)] for i in range(2 * n)]
    seed = str(z[prefix + 'seed'])
    sigma = float(z[prefix + 'sigma'])
    ffm = FourierFeatureMap(z[prefix + 'B'], None if math.isnan(sigma) else sigma)
    net = SirenModel(list(zip(params[0::2], params[1::2])),
                     float(z[prefix + 'w0']),
                     None if seed == 'None' else int(seed), ffm)
    opt = AdamState(net.parameters(), float(z[prefix + 'lr']))
    opt.t = int(z[prefix + 't'])
    opt.m = [np.array(z[prefix + 'm{}'.format(i)]) for i in range(2 * n)]
    opt.v = [np.array(z[prefix + 'v{}'.format(i)]) for i in range(2 * n)]
    return net, opt


def save_checkpoint(filename, result):
    """
    Store both networks, their embedding matrices and optimizer states
    in one ``.npz`` archive.
    """
    arrays = _net_arrays('image/', result.image_net, result.image_opt)
    arrays.update(_net_arrays('sens/', result.sens_net, result.sens_opt))
    arrays['shared_embedding'] = np.array(
        result.sens_net.embedding is result.image_net.embedding)
    with atomic_write(filename, 'wb') as fd:
        np.savez(fd, **arrays)
    logger.debug("Wrote checkpoint %s at iteration %d", filename,
                 result.iteration)


def load_checkpoint(filename):
    try:
        with np.load(filename) as z:
            image_net, image_opt = _load_net('image/', z)
            sens_net, sens_opt = _load_net('sens/', z)
            if bool(z['shared_embedding']):
                sens_net.embedding = image_net.embedding
    except (OSError, KeyError, ValueError) as e:
        raise InvalidInputError("Cannot read checkpoint {}: {}".format(filename, e))
    return FitResult(image_net, sens_net, image_opt, sens_opt)
