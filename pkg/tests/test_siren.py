# -*- coding: UTF-8 -*-

import math

import numpy as np
from atelier.test import TestCase

from inrecon.errors import InvalidInputError, NumericalError
from inrecon.siren import (GradientBuffer, SirenModel, backward, forward,
                           forward_with_cache, init, siren_dims, to_channels,
                           to_complex)
from inrecon.utils import max_relative_error, numeric_gradient


def linear_loss(model, x, c):
    "A real loss whose output gradient is `c`."
    return float(np.sum((np.conj(c) * forward(model, x)).real))


def parameter_gradient(model, x, c, index, step):
    def f(p):
        m = model.copy()
        m.parameters()[index][...] = p
        return linear_loss(m, x, c)
    return numeric_gradient(f, model.parameters()[index], step)


class InitTests(TestCase):

    def test_bounds(self):
        model = init(3, [16, 8, 8, 4], w0=30.0)
        self.assertTrue(np.all(np.abs(model.layers[0][0]) <= 1 / 16))
        bound = math.sqrt(6 / 8) / 30
        for W, b in model.layers[1:]:
            self.assertTrue(np.all(np.abs(W) <= bound))
        for W, b in model.layers:
            self.assertTrue(np.all(b == 0))

    def test_same_seed(self):
        a = init(5, [4, 8, 2])
        b = init(5, [4, 8, 2])
        for p, q in zip(a.parameters(), b.parameters()):
            self.assertTrue(np.array_equal(p, q))

    def test_dims(self):
        self.assertEqual(siren_dims(512), [512] + [256] * 7 + [2])
        model = init(0, siren_dims(6, 5, 2, 4))
        self.assertEqual(model.dims, [6, 5, 5, 5, 4])
        self.assertEqual(len(model.parameters()), 8)

    def test_invalid(self):
        with self.assertRaises(InvalidInputError):
            init(0, [4])
        with self.assertRaises(InvalidInputError):
            SirenModel([(np.ones((3, 2)), np.zeros(3)),
                        (np.ones((2, 4)), np.zeros(2))])


class ForwardTests(TestCase):

    def test_zero_parameters(self):
        model = init(0, [4, 8, 8, 4])
        for p in model.parameters():
            p[...] = 0
        out = forward(model, np.random.default_rng(0).random((5, 4)))
        self.assertEqual(out.shape, (5, 2))
        self.assertTrue(np.all(out == 0))

    def test_hand_evaluation(self):
        W0 = np.array([[0.1, -0.2], [0.3, 0.05], [-0.15, 0.25]])
        b0 = np.array([0.01, -0.02, 0.03])
        W1 = np.array([[0.5, -1.0, 0.25], [1.5, 0.75, -0.5]])
        b1 = np.array([0.1, -0.3])
        model = SirenModel([(W0, b0), (W1, b1)], w0=30.0)
        x = np.array([[0.0, 1.0], [0.5, -0.5], [1.0, 0.25]])
        out = forward(model, x)
        for r in range(3):
            h = [math.sin(30.0 * (sum(W0[i, j] * x[r, j] for j in range(2))
                                  + b0[i])) for i in range(3)]
            o = [sum(W1[k, i] * h[i] for i in range(3)) + b1[k]
                 for k in range(2)]
            self.assertAlmostEqual(out[r, 0].real, o[0], places=12)
            self.assertAlmostEqual(out[r, 0].imag, o[1], places=12)

    def test_chunking(self):
        model = init(1, [6, 16, 16, 4])
        x = np.random.default_rng(1).random((23, 6))
        np.testing.assert_allclose(forward(model, x, chunk=5),
                                   forward(model, x), rtol=0, atol=1e-13)

    def test_errors(self):
        model = init(0, [4, 8, 2])
        with self.assertRaises(InvalidInputError):
            forward(model, np.ones((3, 5)))
        model.layers[0][1][0] = np.nan
        with self.assertRaises(NumericalError):
            forward(model, np.ones((3, 4)))

    def test_channels(self):
        z = np.array([[1 + 2j, -3j], [0.5, 4 - 1j]])
        self.assertEqual(to_channels(z).tolist(),
                         [[1.0, 2.0, 0.0, -3.0], [0.5, 0.0, 4.0, -1.0]])
        self.assertTrue(np.array_equal(to_complex(to_channels(z)), z))


class BackwardTests(TestCase):

    def setUp(self):
        rng = np.random.default_rng(7)
        self.x = rng.uniform(-1, 1, (8, 4))
        self.c = rng.standard_normal((8, 2)) + 1j * rng.standard_normal((8, 2))

    def check_gradients(self, model, step):
        grads = backward(model, self.x, self.c)
        for i, g in enumerate(grads.arrays):
            num = parameter_gradient(model, self.x, self.c, i, step)
            self.assertLess(max_relative_error(g, num), 1e-4,
                            "parameter array {}".format(i))

    def test_finite_differences(self):
        self.check_gradients(init(2, [4, 8, 8, 4], w0=1.0), 1e-4)

    def test_finite_differences_high_frequency(self):
        self.check_gradients(init(2, [4, 8, 8, 4], w0=30.0), 1e-6)

    def test_linearity(self):
        model = init(4, [4, 8, 8, 4], w0=30.0)
        g1 = backward(model, self.x, self.c)
        g2 = backward(model, self.x, 2 * self.c)
        for a, b in zip(g1.arrays, g2.arrays):
            np.testing.assert_allclose(b, 2 * a, rtol=1e-14, atol=0)

    def test_cache(self):
        model = init(4, [4, 8, 4])
        out, cache = forward_with_cache(model, self.x)
        a = backward(model, self.x, self.c, cache)
        b = backward(model, self.x, self.c)
        for p, q in zip(a.arrays, b.arrays):
            self.assertTrue(np.array_equal(p, q))

    def test_upstream_shape(self):
        with self.assertRaises(InvalidInputError):
            backward(init(4, [4, 8, 4]), self.x, self.c[:, :1])

    def test_buffer(self):
        model = init(4, [4, 8, 4])
        buf = GradientBuffer(model)
        self.assertEqual([a.shape for a in buf.arrays],
                         [p.shape for p in model.parameters()])
        buf.arrays[0][0, 0] = np.inf
        self.assertFalse(buf.is_finite())
        buf.zero()
        self.assertTrue(buf.is_finite())
        self.assertTrue(all(np.all(a == 0) for a in buf.arrays))
