# -*- coding: utf-8 -*-
# Copyright 2026 Rumma & Ko Ltd
# License: GNU Affero General Public License v3 (see file COPYING for details)

"""Scan-specific parallel MRI reconstruction with coordinate networks.

One network represents the image, a second one the complex sensitivity
maps of all receiver coils.  Both are fitted to the undersampled k-space
of a single scan, and measured samples replace the prediction at
inference.

.. autosummary::
   :toctree:

   kspace
   sampling
   embedding
   siren
   objective
   trainer
   inference
   metrics
   phantom
   cfl
   report
   config
   errors
   utils
   cli

"""

__version__ = '0.1.0'
