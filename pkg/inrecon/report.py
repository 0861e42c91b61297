# -*- coding: utf-8 -*-
# Copyright 2011-2026 Rumma & Ko Ltd
# License: GNU Affero General Public License v3 (see file COPYING for details)

"""
Plain-text reports in reStructuredText.

>>> print(table(["reg", "PSNR"], [["none", 31.25], ["tv", 32.5]]))
====== =======
 reg    PSNR
------ -------
 none   31.25
 tv     32.50
====== =======
<BLANKLINE>

>>> print(mean_std([1.0, 2.0, 3.0], 3))
2.000 ± 0.816

>>> print(header(2, "Ablation"))
--------
Ablation
--------
<BLANKLINE>

"""

import io
import math
from os.path import abspath, dirname, join

from jinja2 import Environment, FileSystemLoader

import numpy as np

package_dir = abspath(dirname(__file__))

template_env = Environment(
    loader=FileSystemLoader([join(package_dir, 'templates')]),
    keep_trailing_newline=True)


def mean_std(values, digits=3):
    "Format a list of numbers as ``mean ± std`` (population std)."
    a = np.asarray(values, dtype=float)
    return "{0:.{2}f} ± {1:.{2}f}".format(float(a.mean()), float(a.std()),
                                          digits)


class Column(object):
    # A column in a Table.

    def __init__(self, table, index, header, width=None):
        self.table = table
        self.header = header
        self.width = width
        self.index = index

    def adjust_width(self, cell):
        for ln in cell.splitlines():
            if self.width is None or self.width < len(ln):
                self.width = len(ln)


def header(level, text):
    result = io.StringIO()
    char = {1: '=', 2: '-', 3: '~'}.get(level)
    if char is None:
        raise Exception("Invalid level %d" % level)
    result.write(char * len(text) + '\n')
    result.write(text + '\n')
    result.write(char * len(text) + '\n')
    return result.getvalue()


class Table(object):
    """
    A simple rst table.  Floats are printed with `digits` decimals,
    infinite values as ``inf``.
    """

    def __init__(self, headers, digits=2):
        self.digits = digits
        self.headers = [str(h) for h in headers]
        self.cols = [Column(self, i, h) for i, h in enumerate(self.headers)]
        self.adjust_widths(self.headers)

    def format_value(self, v):
        if isinstance(v, bool):
            return "yes" if v else "no"
        if isinstance(v, float):
            if math.isinf(v):
                return "inf"
            return "{0:.{1}f}".format(v, self.digits)
        return str(v)

    def adjust_widths(self, row):
        if len(row) != len(self.cols):
            raise Exception("Invalid row %(row)s" % dict(row=row))
        for col in self.cols:
            col.adjust_width(row[col.index])

    def format_row(self, row):
        return ' '.join(
            [' ' + row[c.index].ljust(c.width) + ' ' for c in self.cols])

    def write(self, fd, data=()):
        rows = [[self.format_value(v) for v in row] for row in data]
        for row in rows:
            self.adjust_widths(row)

        rule1 = ' '.join([('=' * (c.width + 2)) for c in self.cols])
        rule2 = ' '.join([('-' * (c.width + 2)) for c in self.cols])

        def writeln(s):
            fd.write(s.rstrip() + '\n')

        writeln(rule1)
        writeln(self.format_row(self.headers))
        writeln(rule2)
        for row in rows:
            writeln(self.format_row(row))
        writeln(rule1)

    def to_rst(self, rows):
        if len(rows) == 0:
            return "\n"
        fd = io.StringIO()
        self.write(fd, rows)
        return fd.getvalue()


def table(headers, rows=tuple(), **kw):
    t = Table(headers, **kw)
    return t.to_rst(rows)


def render(tplname, **context):
    """Render one of the templates in :file:`inrecon/templates`."""
    template = template_env.get_template(tplname)
    context.update(table=table, header=header)
    return template.render(**context)
