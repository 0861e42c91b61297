# -*- coding: UTF-8 -*-

import numpy as np
from atelier.test import TestCase

from inrecon.errors import InvalidParameterError
from inrecon.kspace import ifft2c, reference_sensitivities, sos
from inrecon.objective import sens_reg_tv
from inrecon.phantom import (PhantomSpec, make_coils, make_phantom,
                             simulate, simulate_acquisition)
from inrecon.sampling import SamplingMask, uniform_cartesian_mask
from inrecon.trainer import TrainConfig, build_networks


class PhantomTests(TestCase):

    def test_empty(self):
        self.assertTrue(np.all(make_phantom(PhantomSpec(ellipses=())) == 0))

    def test_full_grid_ellipse(self):
        spec = PhantomSpec(H=16, W=16, ellipses=((0, 0, 2, 2, 0, 1.0),),
                           phase_strength=0.0)
        np.testing.assert_allclose(make_phantom(spec), 1.0, atol=1e-12)

    def test_disc_area(self):
        spec = PhantomSpec(ellipses=((0, 0, 0.5, 0.5, 0, 1.0),))
        count = int(np.sum(np.abs(make_phantom(spec)) > 0.5))
        expected = np.pi * (spec.H / 4) * (spec.W / 4)
        self.assertLess(abs(count - expected), 0.05 * expected)

    def test_invalid(self):
        with self.assertRaises(InvalidParameterError):
            PhantomSpec(coils=0)
        with self.assertRaises(InvalidParameterError):
            PhantomSpec(ellipses=((0, 0, 0.5, 0.5, 0, 1.5),))


class CoilTests(TestCase):

    def test_centered_coil(self):
        spec = PhantomSpec(H=32, W=32, coils=1, unit_sos=False)
        mag = np.abs(make_coils(spec)[0])
        np.testing.assert_allclose(mag, mag.T, atol=1e-15)
        np.testing.assert_allclose(mag[16, 16 + 5], mag[16 - 5, 16], atol=1e-15)
        np.testing.assert_allclose(mag[16 + 3, 16 + 4], mag[16, 16 + 5],
                                   atol=1e-15)

    def test_positive_sos(self):
        coils = make_coils(PhantomSpec(unit_sos=False))
        self.assertTrue(np.all(sos(coils) > 0))
        np.testing.assert_allclose(sos(make_coils(PhantomSpec())), 1.0,
                                   rtol=1e-12)

    def test_smoothness(self):
        coils = make_coils(PhantomSpec())
        rng = np.random.default_rng(0)
        noise = rng.standard_normal(coils.shape) \
            + 1j * rng.standard_normal(coils.shape)
        noise *= np.sqrt(np.mean(np.abs(coils) ** 2) / np.mean(np.abs(noise) ** 2))
        self.assertLess(10 * sens_reg_tv(coils)[0], sens_reg_tv(noise)[0])


class AcquisitionTests(TestCase):

    def setUp(self):
        self.spec = PhantomSpec(H=64, W=64, coils=4, seed=3)
        self.phantom = make_phantom(self.spec)
        self.coils = make_coils(self.spec)
        self.full_mask = SamplingMask(np.ones((64, 64), bool))

    def test_noiseless_full(self):
        measured, full, sigma = simulate_acquisition(
            self.phantom, self.coils, self.full_mask)
        self.assertEqual(sigma, 0.0)
        np.testing.assert_allclose(ifft2c(measured.data),
                                   self.coils * self.phantom, atol=1e-12)

    def test_zero_pattern(self):
        m = uniform_cartesian_mask(64, 64, R=4, acs=8)
        measured, full, sigma = simulate_acquisition(
            self.phantom, self.coils, m)
        self.assertTrue(np.all(measured.data[:, m.complement] == 0))
        self.assertTrue(np.all(measured.data[:, m.sampled] != 0))

    def test_noise_level(self):
        measured, full, sigma = simulate_acquisition(
            self.phantom, self.coils, self.full_mask, 0.01, seed=4)
        noise = measured.data - full.data
        self.assertEqual(noise.size, 16384)
        estimate = np.sqrt(np.mean(np.abs(noise) ** 2))
        self.assertLess(abs(estimate - sigma), 0.05 * sigma)

    def test_reference_sensitivities(self):
        measured, full, sigma = simulate_acquisition(
            self.phantom, self.coils, self.full_mask)
        ref = reference_sensitivities(full)
        support = np.abs(self.phantom) > 1e-3
        expected = self.coils * np.exp(1j * np.angle(self.phantom))
        err = np.abs(ref - expected)[:, support]
        self.assertLess(err.max() / np.abs(expected)[:, support].max(), 1e-6)

    def test_determinism(self):
        m = uniform_cartesian_mask(64, 64, R=4, acs=8)
        a = simulate(self.spec, m, 0.01)
        b = simulate(self.spec, m, 0.01)
        for p, q in zip(a[:2], b[:2]):
            self.assertTrue(np.array_equal(p, q))
        self.assertTrue(np.array_equal(a[2].data, b[2].data))
        with self.assertRaises(InvalidParameterError):
            simulate(self.spec, m, -1.0)

    def test_noise_independent_of_networks(self):
        phantom, coils, measured, full = simulate(self.spec, self.full_mask, 0.01)
        sigma = 0.01 * np.max(np.abs(full.data[:, 32, 32]))
        first_noise = (measured.data - full.data)[0, 0, 0].real / (sigma / np.sqrt(2))
        image_net, sens_net = build_networks(4, TrainConfig(
            seed=self.spec.seed, sigma=1.0, embed_size=4, hidden=4, layers=1))
        self.assertNotAlmostEqual(first_noise, image_net.embedding.B[0, 0], places=6)
