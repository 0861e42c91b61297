# -*- coding: UTF-8 -*-

import math

import numpy as np
from atelier.test import TestCase

from inrecon.errors import InvalidInputError
from inrecon.metrics import (MetricReport, evaluate, psnr, rlne,
                             sensitivity_error, ssim)


def windowed_ssim(a, b):
    "Direct evaluation of mean SSIM with an explicit 11x11 Gaussian window."
    peak = max(a.max(), b.max())
    a = a / peak
    b = b / peak
    r = np.arange(-5, 6)
    g = np.exp(-r ** 2 / (2 * 1.5 ** 2))
    w = np.outer(g, g)
    w /= w.sum()
    pa = np.pad(a, 5, mode='symmetric')
    pb = np.pad(b, 5, mode='symmetric')
    C1 = 0.01 ** 2
    C2 = 0.03 ** 2
    values = []
    for i in range(5, a.shape[0] - 5):
        for j in range(5, a.shape[1] - 5):
            wa = pa[i:i + 11, j:j + 11]
            wb = pb[i:i + 11, j:j + 11]
            ua = np.sum(w * wa)
            ub = np.sum(w * wb)
            va = np.sum(w * wa * wa) - ua * ua
            vb = np.sum(w * wb * wb) - ub * ub
            vab = np.sum(w * wa * wb) - ua * ub
            values.append((2 * ua * ub + C1) * (2 * vab + C2)
                          / ((ua ** 2 + ub ** 2 + C1) * (va + vb + C2)))
    return float(np.mean(values))


class MetricTests(TestCase):

    def setUp(self):
        rng = np.random.default_rng(0)
        yy, xx = np.mgrid[0:16, 0:16]
        self.ref = 0.5 + 0.4 * np.sin(xx / 2.0) * np.cos(yy / 3.0) \
            + 0.05 * rng.random((16, 16))
        self.recon = self.ref + 0.05 * rng.standard_normal((16, 16))

    def test_rlne(self):
        self.assertEqual(rlne(self.ref, self.ref), 0.0)
        self.assertEqual(rlne(np.zeros((16, 16)), self.ref), 1.0)
        self.assertAlmostEqual(rlne(2 * self.ref, self.ref), 1.0, places=14)
        e = rlne(self.recon, self.ref)
        self.assertAlmostEqual(
            e ** 2 * np.sum(self.ref ** 2),
            np.sum((self.recon - self.ref) ** 2), places=10)
        with self.assertRaises(InvalidInputError):
            rlne(self.ref, np.zeros((16, 16)))

    def test_psnr(self):
        self.assertEqual(psnr(self.ref, self.ref), math.inf)
        self.assertAlmostEqual(psnr(np.zeros((4, 4)), np.ones((4, 4))), 0.0,
                               places=12)
        err = self.recon - self.ref
        gain = psnr(self.ref + err / 2, self.ref) - psnr(self.recon, self.ref)
        self.assertAlmostEqual(gain, 20 * math.log10(2), places=10)

    def test_psnr_zero_reference(self):
        with self.assertRaises(InvalidInputError):
            psnr(np.ones((4, 4)), np.zeros((4, 4)))
        with self.assertRaises(InvalidInputError):
            evaluate(np.ones((16, 16)), np.zeros((16, 16)))

    def test_ssim(self):
        self.assertAlmostEqual(ssim(self.ref, self.ref), 1.0, places=12)
        self.assertLess(ssim(1 - self.ref, self.ref), 1.0)
        self.assertAlmostEqual(ssim(self.recon, self.ref),
                               windowed_ssim(self.recon, self.ref), delta=1e-6)
        self.assertAlmostEqual(ssim(self.recon, self.ref),
                               ssim(self.ref, self.recon), places=12)
        with self.assertRaises(InvalidInputError):
            ssim(np.ones((8, 16)), np.ones((8, 16)))

    def test_scale_invariance(self):
        a = evaluate(self.recon, self.ref)
        b = evaluate(3.5 * self.recon, 3.5 * self.ref)
        self.assertAlmostEqual(a.psnr, b.psnr, places=10)
        self.assertAlmostEqual(a.ssim, b.ssim, places=10)
        self.assertAlmostEqual(a.rlne, b.rlne, places=12)

    def test_magnitude(self):
        phase = np.exp(1j * np.linspace(0, 3, 256)).reshape(16, 16)
        a = evaluate(np.abs(self.recon) * phase, self.ref)
        b = evaluate(np.abs(self.recon), self.ref)
        self.assertAlmostEqual(a.rlne, b.rlne, places=12)
        self.assertIsInstance(a, MetricReport)
        self.assertEqual(len(a.as_row()), 3)

    def test_shape_mismatch(self):
        with self.assertRaises(InvalidInputError):
            psnr(np.ones((4, 4)), np.ones((4, 5)))


class SensitivityErrorTests(TestCase):

    def test_phase_factor(self):
        rng = np.random.default_rng(1)
        ref = rng.standard_normal((2, 8, 8)) + 1j * rng.standard_normal(
            (2, 8, 8))
        est = ref * np.array([np.exp(0.7j), 2 * np.exp(-1.1j)])[:, None, None]
        self.assertLess(sensitivity_error(est, ref), 1e-12)
        self.assertGreater(sensitivity_error(ref[::-1], ref), 0.1)

    def test_errors(self):
        with self.assertRaises(InvalidInputError):
            sensitivity_error(np.ones((2, 4, 4)), np.ones((1, 4, 4)))
        with self.assertRaises(InvalidInputError):
            sensitivity_error(np.ones((1, 4, 4)), np.zeros((1, 4, 4)))
