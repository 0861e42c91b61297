# -*- coding: utf-8 -*-
# Copyright 2026 Rumma & Ko Ltd
# License: GNU Affero General Public License v3 (see file COPYING for details)

"""
Job configuration files.

A job file contains one ``key=value`` pair per line.  Keys are the long
names of the command-line flags, written with either ``-`` or ``_``.
Empty lines and lines starting with ``#`` are ignored.

>>> cfg = JobConfig(["iters", "lambda1", "reg"])
>>> cfg.load_lines(['# demo', 'iters = 20', 'lambda-1=0.001'])
Traceback (most recent call last):
...
inrecon.errors.UsageError: Invalid config var lambda_1 (line 3)
>>> cfg.load_lines(['iters = 20', 'reg=tv'])
>>> cfg.get_config_var('iters')
'20'
>>> sorted(cfg.items())
[('iters', '20'), ('reg', 'tv')]

"""

import logging ; logger = logging.getLogger(__name__)

from inrecon.errors import UsageError


def normalize_key(k):
    return k.strip().lstrip('-').replace('-', '_')


class JobConfig(object):
    """
    The set of values read from a job file, restricted to a fixed set of
    known keys.  Values stay strings; the command-line parser converts
    them.
    """

    def __init__(self, known_keys):
        self.known_keys = set(normalize_key(k) for k in known_keys)
        self._config = dict()

    def set_config_var(self, **kwargs):
        for k, v in kwargs.items():
            if not k in self.known_keys:
                raise UsageError("Invalid config var {}".format(k))
            self._config[k] = v

    def get_config_var(self, k):
        return self._config[k]

    def items(self):
        return self._config.items()

    def load_lines(self, lines):
        for i, ln in enumerate(lines, 1):
            ln = ln.strip()
            if not ln or ln.startswith('#'):
                continue
            if '=' not in ln:
                raise UsageError("Expected key=value (line {})".format(i))
            k, v = ln.split('=', 1)
            k = normalize_key(k)
            if not k in self.known_keys:
                raise UsageError("Invalid config var {} (line {})".format(k, i))
            self._config[k] = v.strip()

    def load(self, filename):
        logger.debug("Reading job config %s", filename)
        try:
            with open(filename) as fd:
                self.load_lines(fd.read().splitlines())
        except OSError as e:
            raise UsageError("Cannot read config file {}: {}".format(
                filename, e))
