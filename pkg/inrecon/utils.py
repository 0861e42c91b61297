# -*- coding: UTF-8 -*-
# doctest inrecon/utils.py
# Copyright 2026 Rumma & Ko Ltd
# License: GNU Affero General Public License v3 (see file COPYING for details)

"""
Defines a series of utility functions used across the package.

"""

import os
import tempfile
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from inrecon.errors import InvalidInputError


# one spawn key per randomized component
STREAMS = {'noise': 1, 'mask': 2, 'networks': 3}


def derive_seeds(seed, count, stream):
    """
    Split one integer seed into `count` independent integer sub-seeds
    for the component `stream` (a key of :data:`STREAMS`).

    The split is fixed, so each component stays reproducible on its own,
    and two components never share a sub-seed.

    >>> a = derive_seeds(7, 3, 'networks')
    >>> len(a)
    3
    >>> a == derive_seeds(7, 3, 'networks')
    True
    >>> a[:2] == derive_seeds(7, 2, 'networks')
    True
    >>> derive_seeds(7, 1, 'noise')[0] in a
    False

    """
    if stream not in STREAMS:
        raise InvalidInputError("Unknown seed stream {!r}".format(stream))
    root = np.random.SeedSequence(int(seed), spawn_key=(STREAMS[stream],))
    children = root.spawn(count)
    return [int(c.generate_state(1, dtype=np.uint64)[0]) for c in children]


def make_rng(seed):
    """Return a numpy :class:`Generator` driven by PCG64 for `seed`."""
    return np.random.Generator(np.random.PCG64(int(seed)))


def check_finite(arr, what="array"):
    """
    Raise :class:`InvalidInputError` unless every entry of `arr` is finite.

    >>> check_finite(np.zeros(3))
    >>> check_finite(np.array([1.0, np.nan]), "image")
    Traceback (most recent call last):
    ...
    inrecon.errors.InvalidInputError: image contains non-finite values

    """
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("{} contains non-finite values".format(what))


@contextmanager
def atomic_write(path, mode="w", **kwargs):
    """
    Open a temporary file next to `path` and move it into place only
    when the block finished without an exception.
    """
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=path.name + ".")
    os.close(fd)
    try:
        with open(tmp, mode, **kwargs) as f:
            yield f
        os.replace(tmp, str(path))
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def numeric_gradient(func, z, step=1e-6):
    """
    Central finite-difference gradient of the real function `func` at `z`.

    For complex `z` the result is ``dF/dRe + 1j * dF/dIm``, the same
    convention the analytic gradients in :mod:`inrecon.objective` use.

    >>> g = numeric_gradient(lambda a: float(np.sum(np.abs(a) ** 2)),
    ...                      np.array([3 + 4j]))
    >>> print(np.round(g, 6))
    [6.+8.j]

    """
    z = np.array(z, copy=True)
    is_complex = np.iscomplexobj(z)
    grad = np.zeros(z.shape, dtype=z.dtype)
    flat = z.reshape(-1)
    gflat = grad.reshape(-1)
    parts = (1.0, 1j) if is_complex else (1.0,)
    for i in range(flat.size):
        orig = flat[i]
        for unit in parts:
            flat[i] = orig + step * unit
            fp = func(z)
            flat[i] = orig - step * unit
            fm = func(z)
            flat[i] = orig
            gflat[i] += unit * (fp - fm) / (2 * step)
    return grad


def max_relative_error(analytic, numeric, floor=1e-6):
    """
    Largest entry-wise relative error between two gradients.  Entries
    whose absolute difference is at most `floor` count as exact.

    >>> max_relative_error(np.array([1.0, 2.0]), np.array([1.0, 2.0]))
    0.0
    >>> print(round(max_relative_error(np.array([1.1]), np.array([1.0])), 6))
    0.090909

    """
    a = np.asarray(analytic)
    b = np.asarray(numeric)
    diff = np.abs(a - b)
    denom = np.maximum(np.maximum(np.abs(a), np.abs(b)), np.finfo(float).tiny)
    rel = np.where(diff <= floor, 0.0, diff / denom)
    return float(np.max(rel))
