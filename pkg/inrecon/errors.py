# -*- coding: utf-8 -*-
# Copyright 2026 Rumma & Ko Ltd
# License: GNU Affero General Public License v3 (see file COPYING for details)

"""
Exception classes raised by :mod:`inrecon`.

Every class carries the exit status that :func:`inrecon.cli.main` returns
when it catches it.
"""


class ReconError(Exception):
    exit_code = 1


class UsageError(ReconError):
    "Bad flag value or unknown configuration key."
    exit_code = 2


class ValidationError(ReconError):
    exit_code = 3


class InvalidInputError(ValidationError):
    "Data that cannot be processed (shape mismatch, NaN, empty stack...)."


class InvalidParameterError(ValidationError):
    "A numeric parameter outside its allowed range."


class NumericalError(ReconError):
    "Non-finite loss or gradient, or a failed decomposition."
    exit_code = 4
