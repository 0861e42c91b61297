# -*- coding: UTF-8 -*-

import os

from atelier.test import TestCase


class BasicTests(TestCase):

    def test_readme(self):
        self.run_simple_doctests('README.rst')

    def test_packaged_files(self):
        # named by setup.py in license_files, long_description and package_data
        for fn in ('COPYING', 'README.rst', 'inrecon/templates/ablation.rst',
                   'inrecon/templates/summary.rst'):
            self.assertTrue(os.path.isfile(fn), fn)

    def test_utils(self):
        self.run_simple_doctests('inrecon/utils.py')

    def test_config(self):
        self.run_simple_doctests('inrecon/config.py')

    def test_report(self):
        self.run_simple_doctests('inrecon/report.py')

    def test_cfl(self):
        self.run_simple_doctests('inrecon/cfl.py')


class NumericTests(TestCase):

    def test_kspace(self):
        self.run_simple_doctests('inrecon/kspace.py')

    def test_sampling(self):
        self.run_simple_doctests('inrecon/sampling.py')

    def test_embedding(self):
        self.run_simple_doctests('inrecon/embedding.py')

    def test_siren(self):
        self.run_simple_doctests('inrecon/siren.py')

    def test_objective(self):
        self.run_simple_doctests('inrecon/objective.py')

    def test_inference(self):
        self.run_simple_doctests('inrecon/inference.py')

    def test_metrics(self):
        self.run_simple_doctests('inrecon/metrics.py')

    def test_phantom(self):
        self.run_simple_doctests('inrecon/phantom.py')
