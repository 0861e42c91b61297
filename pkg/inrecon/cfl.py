# -*- coding: utf-8 -*-
# Copyright 2026 Rumma & Ko Ltd
# License: GNU Affero General Public License v3 (see file COPYING for details)

"""
Reading and writing the files exchanged with other MRI tools.

An array named ``foo`` lives in two files: ``foo.hdr`` lists up to four
dimensions on one line (fastest first), ``foo.cfl`` holds little-endian
single-precision (real, imag) pairs in column-major order.  A
``(coils, H, W)`` array in memory is therefore stored with dimensions
``W H coils 1``.

>>> header_dims((4, 16, 8))
[8, 16, 4, 1]
>>> header_dims((16, 8))
[8, 16, 1, 1]

"""

import logging ; logger = logging.getLogger(__name__)

import csv
from pathlib import Path

import numpy as np

from inrecon.errors import InvalidInputError
from inrecon.utils import atomic_write

MAX_DIMS = 4


def _base(name):
    name = str(name)
    for ext in ('.cfl', '.hdr'):
        if name.endswith(ext):
            return name[:-len(ext)]
    return name


def header_dims(shape):
    if len(shape) > MAX_DIMS:
        raise InvalidInputError("At most {} dimensions".format(MAX_DIMS))
    dims = list(reversed([int(n) for n in shape]))
    return dims + [1] * (MAX_DIMS - len(dims))


def write_cfl(name, array):
    base = _base(name)
    array = np.asarray(array)
    dims = header_dims(array.shape)
    with atomic_write(base + '.hdr', 'w') as fd:
        fd.write("# Dimensions\n")
        fd.write(" ".join(str(n) for n in dims) + "\n")
    data = np.ascontiguousarray(array, dtype='<c8')
    with atomic_write(base + '.cfl', 'wb') as fd:
        fd.write(data.tobytes(order='C'))
    logger.debug("Wrote %s.cfl with dimensions %s", base, dims)


def read_cfl(name, ndim=None):
    """
    Read an array written by :func:`write_cfl` as complex128.

    Trailing unit dimensions are dropped unless `ndim` asks for a given
    number of dimensions.
    """
    base = _base(name)
    hdr = Path(base + '.hdr')
    cfl = Path(base + '.cfl')
    if not hdr.exists() or not cfl.exists():
        raise InvalidInputError("No such array file: {}".format(base))
    dims = None
    for ln in hdr.read_text().splitlines():
        ln = ln.strip()
        if ln and not ln.startswith('#'):
            dims = [int(n) for n in ln.split()]
            break
    if not dims:
        raise InvalidInputError("No dimensions in {}".format(hdr))
    count = int(np.prod(dims))
    data = np.fromfile(str(cfl), dtype='<c8')
    if data.size != count:
        raise InvalidInputError(
            "{} holds {} elements, header says {}".format(cfl, data.size, count))
    shape = list(reversed(dims))
    if ndim is None:
        while len(shape) > 1 and shape[0] == 1:
            shape.pop(0)
    else:
        extra = shape[:len(shape) - ndim]
        if any(n != 1 for n in extra):
            raise InvalidInputError("{} has more than {} dimensions".format(
                base, ndim))
        shape = shape[len(shape) - ndim:]
    return data.reshape(shape).astype(np.complex128)


def write_pgm(filename, image, vmax=None):
    """
    Write a real image as 8-bit binary PGM, mapping ``[0, vmax]`` to
    ``[0, 255]``.  `vmax` defaults to the image maximum.
    """
    image = np.abs(np.asarray(image, dtype=float))
    if image.ndim != 2:
        raise InvalidInputError("PGM images must be two-dimensional")
    if vmax is None:
        vmax = float(image.max()) or 1.0
    pixels = np.round(np.clip(image / vmax, 0.0, 1.0) * 255).astype(np.uint8)
    H, W = image.shape
    with atomic_write(filename, 'wb') as fd:
        fd.write("P5\n{} {}\n255\n".format(W, H).encode('ascii'))
        fd.write(pixels.tobytes())


def read_pgm(filename):
    raw = Path(filename).read_bytes()
    parts = raw.split(maxsplit=3)
    if parts[0] != b'P5':
        raise InvalidInputError("{} is not a binary PGM file".format(filename))
    W, H = int(parts[1]), int(parts[2])
    pixels = np.frombuffer(raw[-W * H:], dtype=np.uint8)
    return pixels.reshape(H, W)


def write_csv(filename, header, rows):
    with atomic_write(filename, 'w', newline='') as fd:
        w = csv.writer(fd)
        w.writerow(header)
        for row in rows:
            w.writerow(row)


def read_csv(filename):
    with open(filename, newline='') as fd:
        return list(csv.DictReader(fd))
