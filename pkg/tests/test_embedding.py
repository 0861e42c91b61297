# -*- coding: UTF-8 -*-

import numpy as np
from atelier.test import TestCase

from inrecon.embedding import FourierFeatureMap, embed, make_grid
from inrecon.errors import InvalidInputError, InvalidParameterError


class GridTests(TestCase):

    def test_order(self):
        g = make_grid(4, 3)
        self.assertEqual(len(g), 12)
        self.assertEqual(g.coords[0].tolist(), [0.0, 0.0])
        self.assertEqual(sorted(set(g.coords[:, 0])), [0.0, 0.25, 0.5, 0.75])
        self.assertEqual(g.coords[1].tolist(), [0.0, 1 / 3])
        self.assertTrue(np.all((g.coords >= 0) & (g.coords < 1)))

    def test_invalid(self):
        with self.assertRaises(InvalidParameterError):
            make_grid(0, 4)


class EmbeddingTests(TestCase):

    def test_origin(self):
        ffm = FourierFeatureMap.create(8, sigma=10, seed=1)
        gamma = embed(make_grid(2, 2), ffm)
        self.assertEqual(gamma.shape, (4, 16))
        self.assertTrue(np.all(gamma[0, :8] == 1))
        self.assertTrue(np.all(gamma[0, 8:] == 0))

    def test_range(self):
        ffm = FourierFeatureMap.create(32, sigma=10, seed=2)
        gamma = embed(make_grid(16, 16), ffm)
        self.assertEqual(gamma.shape[1], ffm.out_dim)
        self.assertTrue(np.all(np.abs(gamma) <= 1))

    def test_seed_and_sigma(self):
        a = FourierFeatureMap.create(16, sigma=10, seed=3)
        b = FourierFeatureMap.create(16, sigma=10, seed=3)
        c = FourierFeatureMap.create(16, sigma=5, seed=3)
        self.assertTrue(np.array_equal(a.B, b.B))
        self.assertFalse(np.array_equal(a.B, c.B))
        self.assertEqual(a.out_dim, c.out_dim)
        self.assertEqual(a.embed_size, 16)

    def test_invalid(self):
        with self.assertRaises(InvalidInputError):
            FourierFeatureMap(np.ones((4, 3)))
        with self.assertRaises(InvalidParameterError):
            FourierFeatureMap.create(4, sigma=0)
