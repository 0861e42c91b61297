# -*- coding: utf-8 -*-
# Copyright 2026 Rumma & Ko Ltd
# License: GNU Affero General Public License v3 (see file COPYING for details)

"""
The ``inrecon`` command line.

Subcommands:

- ``simulate`` writes a phantom, its coil maps, a mask and the k-space;
- ``recon`` fits the networks to measured k-space and writes the result;
- ``eval`` compares a reconstruction with a reference image;
- ``ablate`` runs reconstructions over a grid of ACS, R and regularizers;
- ``summarize`` aggregates metric files into mean ± std tables.

Every subcommand accepts ``--config FILE`` with ``key=value`` lines;
flags given on the command line win over the file.

Exit status: 0 success, 2 usage error, 3 validation error, 4 numerical
failure.
"""

import logging ; logger = logging.getLogger(__name__)

import argparse
import sys
import time
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from inrecon.cfl import read_cfl, read_csv, write_cfl, write_csv, write_pgm
from inrecon.config import JobConfig
from inrecon.errors import InvalidInputError, ReconError, UsageError
from inrecon.inference import export_error_map, model_image, reconstruct
from inrecon.kspace import KspaceVolume, normalize_kspace, reference_sensitivities
from inrecon.metrics import evaluate, sensitivity_error
from inrecon.objective import LossWeights
from inrecon.phantom import PhantomSpec, simulate
from inrecon.report import mean_std, render
from inrecon.sampling import (SamplingMask, gaussian_pointwise_mask,
                              uniform_cartesian_mask)
from inrecon.trainer import (TrainConfig, check_measurements, check_resume,
                             fit, load_checkpoint, save_checkpoint,
                             write_loss_trace)
from inrecon.utils import atomic_write, derive_seeds

METRIC_FIELDS = ('slice', 'method', 'mask', 'metric', 'value')

ABLATION_FIELDS = ('acs', 'R', 'reg', 'reg_on', 'psnr', 'ssim', 'rlne',
                   'seconds')

SUMMARY_FIELDS = ('method', 'mask', 'metric', 'n', 'mean', 'std')

REG_CHOICES = ('none', 'tv', 'l1f', 'lr')


def int_list(s):
    try:
        return [int(v) for v in s.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers")


def str_list(s):
    return [v.strip() for v in s.split(',') if v.strip()]


def parse_bool(s):
    s = str(s).strip().lower()
    if s in ('1', 'true', 'yes', 'on'):
        return True
    if s in ('0', 'false', 'no', 'off'):
        return False
    raise UsageError("Invalid boolean value {!r}".format(s))


def add_phantom_arguments(p):
    p.add_argument('--size', type=int, default=64)
    p.add_argument('--coils', type=int, default=4)
    p.add_argument('--noise', type=float, default=0.005,
                   help="complex noise sigma relative to the DC magnitude")
    p.add_argument('--phase-strength', type=float, default=0.2)
    p.add_argument('--seed', type=int, default=0)


def add_fit_arguments(p):
    p.add_argument('--reg', choices=REG_CHOICES, default='tv')
    p.add_argument('--lambda1', type=float, default=5e-4)
    p.add_argument('--lambda2', type=float, default=5e-4)
    p.add_argument('--dc-norm', choices=('l1', 'l2'), default='l1')
    p.add_argument('--iters', type=int, default=1000)
    p.add_argument('--lr', type=float, default=1e-4)
    p.add_argument('--lr-sens', type=float, default=None)
    p.add_argument('--w0', type=float, default=30.0)
    p.add_argument('--w0-sens', type=float, default=None)
    p.add_argument('--embed-size', type=int, default=256)
    p.add_argument('--sigma', type=float, default=10.0)
    p.add_argument('--hidden', type=int, default=256)
    p.add_argument('--layers', type=int, default=6)
    p.add_argument('--separate-embeddings', action='store_true')
    p.add_argument('--cosine', action='store_true')
    p.add_argument('--log-every', type=int, default=100)


def train_config(args, reg=None, seed=None):
    try:
        weights = LossWeights(args.lambda1, args.lambda2,
                              reg or args.reg, args.dc_norm)
        return TrainConfig(
            iters=args.iters, lr=args.lr, lr_sens=args.lr_sens,
            weights=weights, seed=args.seed if seed is None else seed,
            log_every=args.log_every, hidden=args.hidden, layers=args.layers,
            embed_size=args.embed_size, sigma=args.sigma, w0=args.w0,
            w0_sens=args.w0_sens,
            separate_embeddings=args.separate_embeddings, cosine=args.cosine,
            checkpoint_every=getattr(args, 'checkpoint_every', 0),
            checkpoint_path=getattr(args, 'checkpoint_path', None))
    except ReconError as e:
        raise UsageError(str(e))


def phantom_spec(args):
    if args.size < 1 or args.coils < 1:
        raise UsageError("--size and --coils must be positive")
    if args.noise < 0:
        raise UsageError("--noise must be >= 0")
    return PhantomSpec(H=args.size, W=args.size, coils=args.coils,
                       phase_strength=args.phase_strength, seed=args.seed)


def make_mask(kind, size, R, acs, rate, sigma_frac, seed):
    try:
        if kind == 'uniform':
            return uniform_cartesian_mask(size, size, R, acs)
        mask_seed = derive_seeds(seed, 1, 'mask')[0]
        return gaussian_pointwise_mask(size, size, rate, sigma_frac, mask_seed)
    except ReconError as e:
        raise UsageError(str(e))


def cmd_simulate(args):
    spec = phantom_spec(args)
    mask = make_mask(args.mask, args.size, args.R, args.acs, args.rate,
                     args.sigma_frac, args.seed)
    phantom, coils, measured, full = simulate(spec, mask, args.noise)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_cfl(out / 'phantom', phantom)
    write_cfl(out / 'coils', coils)
    write_cfl(out / 'mask', mask.sampled.astype(np.float32))
    write_cfl(out / 'kspace', measured.data)
    write_cfl(out / 'kspace_full', full.data)
    write_cfl(out / 'reference', full.zero_filled())
    write_cfl(out / 'reference_sens', reference_sensitivities(full))
    write_pgm(out / 'reference.pgm', full.zero_filled())
    logger.info("Wrote simulation to %s (%s)", out, mask)


def load_mask(filename, shape=None):
    sampled = read_cfl(filename, ndim=2).real != 0
    if shape is not None and sampled.shape != tuple(shape):
        raise InvalidInputError(
            "Mask {} does not match k-space grid {}".format(
                sampled.shape, tuple(shape)))
    return SamplingMask(sampled, kind='file')


def metric_rows(slice_label, method, mask_label, report):
    return [[slice_label, method, mask_label, name, repr(getattr(report, name))]
            for name in ('psnr', 'ssim', 'rlne')]


def cmd_recon(args):
    y = KspaceVolume(read_cfl(args.kspace, ndim=3))
    mask = load_mask(args.mask, y.shape)
    reference = None
    if args.reference:
        reference = np.abs(read_cfl(args.reference, ndim=2))
        if reference.shape != tuple(y.shape):
            raise InvalidInputError("Reference {} does not match k-space {}".format(
                reference.shape, tuple(y.shape)))
    ref_sens = None
    if args.reference_sens:
        ref_sens = read_cfl(args.reference_sens, ndim=3)
        if ref_sens.shape != y.data.shape:
            raise InvalidInputError("Reference maps {} do not match k-space {}".format(
                ref_sens.shape, y.data.shape))
    out = Path(args.out)
    if args.checkpoint_every:
        args.checkpoint_path = str(out / 'checkpoint.npz')
    cfg = train_config(args)
    yn = normalize_kspace(y)
    check_measurements(yn, mask)
    resume = None
    if args.resume:
        resume = load_checkpoint(args.resume)
        check_resume(resume, y.coils)

    out.mkdir(parents=True, exist_ok=True)
    result = fit(yn, mask, cfg, resume)
    recon = reconstruct(result.image_net, result.sens_net, yn, mask)

    combined = recon.denormalized()
    before_dc = model_image(recon.image, recon.sensitivities) * recon.scale
    write_cfl(out / 'recon', combined)
    write_pgm(out / 'recon.pgm', combined)
    write_cfl(out / 'model', before_dc)
    write_cfl(out / 'zero_filled', y.zero_filled())
    write_cfl(out / 'sens', recon.sensitivities)
    write_cfl(out / 'image', recon.image * recon.scale)
    write_cfl(out / 'kspace_final', recon.kspace_final.data * recon.scale)
    write_loss_trace(out / 'loss.csv', result.trace)
    save_checkpoint(out / 'checkpoint.npz', result)

    if reference is not None:
        mask_label = args.mask_label or Path(args.mask).stem
        rows = metric_rows(args.slice, 'inr', mask_label,
                           evaluate(combined, reference))
        rows += metric_rows(args.slice, 'inr-model', mask_label,
                            evaluate(before_dc, reference))
        rows += metric_rows(args.slice, 'zero-filled', mask_label,
                            evaluate(y.zero_filled(), reference))
        if ref_sens is not None:
            rows.append([args.slice, 'inr', mask_label, 'sens_rlne',
                         repr(sensitivity_error(recon.sensitivities, ref_sens))])
        write_csv(out / 'metrics.csv', METRIC_FIELDS, rows)
    logger.info("Wrote reconstruction to %s", out)


def cmd_eval(args):
    recon = np.abs(read_cfl(args.recon, ndim=2))
    reference = np.abs(read_cfl(args.reference, ndim=2))
    report = evaluate(recon, reference)
    error_map = export_error_map(recon / reference.max(),
                                 reference / reference.max(), args.gain)
    rows = metric_rows(args.slice, args.method, args.mask_label, report)
    write_csv(args.out, METRIC_FIELDS, rows)
    if args.error_map:
        write_pgm(args.error_map, error_map, vmax=1.0)
    logger.info("PSNR %.3f dB, SSIM %.4f, RLNE %.4f",
                report.psnr, report.ssim, report.rlne)


def run_ablation_cell(cell):
    """
    Simulate and reconstruct one (ACS, R, regularizer) combination.
    `cell` is a dict so that it can be sent to a worker process.
    """
    args = cell['args']
    spec = phantom_spec(args)
    mask = make_mask('uniform', args.size, cell['R'], cell['acs'], None,
                     None, args.seed)
    phantom, coils, measured, full = simulate(spec, mask, args.noise)
    reference = full.zero_filled()
    cfg = train_config(args, reg=cell['reg'])
    started = time.perf_counter()
    yn = normalize_kspace(measured)
    result = fit(yn, mask, cfg)
    recon = reconstruct(result.image_net, result.sens_net, yn, mask)
    seconds = time.perf_counter() - started
    report = evaluate(recon.denormalized(), reference)
    return [cell['acs'], cell['R'], cell['reg'], cell['reg'] != 'none',
            report.psnr, report.ssim, report.rlne, seconds]


def cmd_ablate(args):
    for reg in args.regs:
        if reg not in REG_CHOICES:
            raise UsageError("Unknown regularizer {!r}".format(reg))
    if not args.acs or not args.R or not args.regs:
        raise UsageError("--acs, --R and --regs must not be empty")
    phantom_spec(args)
    train_config(args)
    cells = [dict(acs=acs, R=R, reg=reg, args=args)
             for acs in args.acs for R in args.R for reg in args.regs]
    for c in cells:
        make_mask('uniform', args.size, c['R'], c['acs'], None, None, args.seed)
    logger.info("Running %d ablation cells with %d job(s)", len(cells),
                args.jobs)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(run_ablation_cell, cells))
    else:
        rows = [run_ablation_cell(c) for c in cells]

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_csv(out / 'ablation.csv', ABLATION_FIELDS,
              [[acs, R, reg, int(on), repr(p), repr(s), repr(e), repr(t)]
               for acs, R, reg, on, p, s, e, t in rows])
    baseline = {(r[0], r[1]): r[4] for r in rows if r[2] == 'none'}
    gaps = [[r[0], r[1], r[2], r[4] - baseline[(r[0], r[1])]]
            for r in rows if r[2] != 'none' and (r[0], r[1]) in baseline]
    text = render('ablation.rst', title="Regularization ablation",
                  size=args.size, coils=args.coils, noise=args.noise,
                  iters=args.iters, seed=args.seed, rows=rows, gaps=gaps)
    with atomic_write(out / 'ablation.rst', 'w', encoding='utf-8') as fd:
        fd.write(text)
    logger.info("Wrote %s", out / 'ablation.csv')


def cmd_summarize(args):
    groups = OrderedDict()
    for fn in args.inputs:
        if not Path(fn).exists():
            raise InvalidInputError("No such metrics file: {}".format(fn))
        for row in read_csv(fn):
            key = (row['method'], row['mask'], row['metric'])
            groups.setdefault(key, []).append(float(row['value']))
    rows = [[m, mask, metric, len(v), repr(float(np.mean(v))),
             repr(float(np.std(v)))]
            for (m, mask, metric), v in groups.items()]
    write_csv(args.out, SUMMARY_FIELDS, rows)
    if args.rst:
        by_method = OrderedDict()
        for (m, mask, metric), v in groups.items():
            by_method.setdefault((m, mask), {})[metric] = v
        table_rows = []
        for (m, mask), metrics in by_method.items():
            n = max(len(v) for v in metrics.values())
            table_rows.append([m, mask, n] + [
                mean_std(metrics[k], 3) if k in metrics else '-'
                for k in ('psnr', 'ssim', 'rlne')])
        text = render('summary.rst', title="Reconstruction metrics",
                      count=sum(len(v) for v in groups.values()),
                      rows=table_rows)
        with atomic_write(args.rst, 'w', encoding='utf-8') as fd:
            fd.write(text)


SUBPARSERS = dict()


def build_parser():
    parser = argparse.ArgumentParser(
        prog='inrecon',
        description="Joint image and coil sensitivity reconstruction "
                    "with coordinate networks.")
    parser.add_argument('--verbose', '-v', action='store_true')
    parser.add_argument('--quiet', '-q', action='store_true')
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    p = sub.add_parser('simulate', help="write phantom data")
    p.add_argument('--out', required=True)
    add_phantom_arguments(p)
    p.add_argument('--mask', choices=('uniform', 'gaussian'),
                   default='uniform')
    p.add_argument('--R', type=int, default=5)
    p.add_argument('--acs', type=int, default=8)
    p.add_argument('--rate', type=float, default=0.25)
    p.add_argument('--sigma-frac', type=float, default=0.15)
    p.set_defaults(func=cmd_simulate)
    SUBPARSERS['simulate'] = p

    p = sub.add_parser('recon', help="reconstruct measured k-space")
    p.add_argument('--kspace', required=True)
    p.add_argument('--mask', required=True)
    p.add_argument('--out', required=True)
    p.add_argument('--reference', default=None)
    p.add_argument('--reference-sens', default=None)
    p.add_argument('--slice', default='0')
    p.add_argument('--mask-label', default=None)
    p.add_argument('--checkpoint-every', type=int, default=0)
    p.add_argument('--resume', default=None)
    p.add_argument('--seed', type=int, default=0)
    add_fit_arguments(p)
    p.set_defaults(func=cmd_recon)
    SUBPARSERS['recon'] = p

    p = sub.add_parser('eval', help="compare a reconstruction with a reference")
    p.add_argument('--recon', required=True)
    p.add_argument('--reference', required=True)
    p.add_argument('--out', required=True)
    p.add_argument('--error-map', default=None)
    p.add_argument('--gain', type=float, default=5.0)
    p.add_argument('--method', default='inr')
    p.add_argument('--mask-label', default='')
    p.add_argument('--slice', default='0')
    p.set_defaults(func=cmd_eval)
    SUBPARSERS['eval'] = p

    p = sub.add_parser('ablate', help="regularizer ablation on the phantom")
    p.add_argument('--out', required=True)
    add_phantom_arguments(p)
    p.add_argument('--acs', type=int_list, default=[8, 24])
    p.add_argument('--R', type=int_list, default=[5, 6])
    p.add_argument('--regs', type=str_list, default=['none', 'tv'])
    p.add_argument('--jobs', type=int, default=1)
    add_fit_arguments(p)
    p.set_defaults(func=cmd_ablate)
    SUBPARSERS['ablate'] = p

    p = sub.add_parser('summarize', help="mean ± std of metric files")
    p.add_argument('inputs', nargs='+')
    p.add_argument('--out', required=True)
    p.add_argument('--rst', default=None)
    p.set_defaults(func=cmd_summarize)
    SUBPARSERS['summarize'] = p

    for p in SUBPARSERS.values():
        p.add_argument('--config', default=None,
                       help="file with key=value lines")
    return parser


def apply_config(subparser, filename):
    """
    Install the values of job file `filename` as defaults of
    `subparser`, converting them like command-line values.
    """
    actions = {a.dest: a for a in subparser._actions
               if a.dest not in ('help', 'config')}
    cfg = JobConfig(actions.keys())
    cfg.load(filename)
    defaults = dict()
    for k, v in cfg.items():
        a = actions[k]
        if a.nargs == 0:
            defaults[k] = parse_bool(v)
            continue
        try:
            value = a.type(v) if a.type else v
        except (ValueError, argparse.ArgumentTypeError) as e:
            raise UsageError("Invalid value {!r} for {}: {}".format(v, k, e))
        if a.choices is not None and value not in a.choices:
            raise UsageError("Invalid value {!r} for {}".format(v, k))
        defaults[k] = value
        a.required = False
    subparser.set_defaults(**defaults)


def parse_args(argv):
    parser = build_parser()
    command = next((a for a in argv if a in SUBPARSERS), None)
    if command is not None and '--config' in argv:
        i = argv.index('--config')
        if i + 1 >= len(argv):
            raise UsageError("--config needs a file name")
        apply_config(SUBPARSERS[command], argv[i + 1])
    return parser.parse_args(argv)


def configure_logging(args):
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(level=level,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse_args(argv)
        configure_logging(args)
        args.func(args)
    except ReconError as e:
        logger.error("%s", e)
        return e.exit_code
    return 0
