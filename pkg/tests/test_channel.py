"""Unit tests for the dephasing channel using unittest framework."""

import math
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from discordlab.channel import (
    REGIME,
    DephasingChannel,
    DimensionlessTime,
    apply_two_qubit,
    kraus_ops,
    lambda_envelope,
    volterra_coherence,
)
from discordlab.matcore import I2, SIGMA_Z, eig_hermitian, is_x_shaped
from discordlab.states import (
    BellDiagonalParams,
    SampleSeed,
    bds_to_density,
    sample_random_xstate,
    xstate_to_density,
)
from tests.test_matcore import random_density


class TestDephasingChannel(unittest.TestCase):
    """Test cases for channel parameters."""

    def test_mu(self):
        """a = 1, tau = 5 gives mu = sqrt(399)."""
        ch = DephasingChannel(1, 5)
        self.assertEqual(ch.regime, REGIME.UNDERDAMPED)
        self.assertAlmostEqual(ch.mu, math.sqrt(399), places=12)
        self.assertAlmostEqual(ch.mu, 19.9750, places=4)

    def test_regimes(self):
        """4 a tau selects the branch."""
        self.assertEqual(DephasingChannel(0.25, 1).regime, REGIME.CRITICAL)
        self.assertEqual(DephasingChannel(0.1, 1).regime, REGIME.OVERDAMPED)
        self.assertEqual(DephasingChannel(1, 0.5).strength, 2.0)

    def test_invalid(self):
        """Negative amplitude and non-positive correlation time are rejected."""
        with self.assertRaises(ValueError):
            DephasingChannel(-1, 1)
        with self.assertRaises(ValueError):
            DephasingChannel(1, 0)

    def test_time_conversion(self):
        """nu = t / (2 tau)."""
        ch = DephasingChannel(1, 5)
        self.assertEqual(ch.nu_of(30), 3.0)
        self.assertEqual(ch.time_of(3.0), 30.0)

    def test_dimensionless_time(self):
        """Negative or non-numeric times are rejected."""
        self.assertEqual(DimensionlessTime(0.5), 0.5)
        with self.assertRaises(ValueError):
            DimensionlessTime(-0.1)
        with self.assertRaises(TypeError):
            DimensionlessTime("soon")


class TestLambdaEnvelope(unittest.TestCase):
    """Test cases for the decoherence envelope."""

    def test_origin(self):
        """Lambda(0) = 1 on every branch."""
        for a, tau in ((1, 5), (0.25, 1), (0.1, 1), (0, 1)):
            self.assertEqual(lambda_envelope(DephasingChannel(a, tau), 0.0), 1.0)

    def test_critical(self):
        """4 a tau = 1 at nu = 1 gives 2/e."""
        value = lambda_envelope(DephasingChannel(0.25, 1), 1.0)
        self.assertAlmostEqual(value, 2 / math.e, places=12)
        self.assertAlmostEqual(2 / math.e, 0.735759, places=6)

    def test_no_noise(self):
        """a = 0 leaves coherences untouched."""
        values = lambda_envelope(DephasingChannel(0, 1), np.linspace(0, 50, 11))
        np.testing.assert_allclose(values, 1.0)

    def test_markovian_zero(self):
        """a = 1, tau = 0.5 first vanishes where tan(mu nu) = -mu."""
        ch = DephasingChannel(1, 0.5)
        nu0 = (math.pi - math.atan(math.sqrt(3))) / math.sqrt(3)
        self.assertAlmostEqual(lambda_envelope(ch, nu0), 0.0, places=12)

    def test_vectorized(self):
        """Arrays in, arrays out; scalars in, floats out."""
        ch = DephasingChannel(1, 5)
        values = lambda_envelope(ch, np.array([0.0, 0.1, 0.2]))
        self.assertEqual(values.shape, (3,))
        self.assertIsInstance(lambda_envelope(ch, 0.1), float)
        self.assertAlmostEqual(values[1], lambda_envelope(ch, 0.1))

    def test_negative_time(self):
        """nu < 0 is rejected."""
        with self.assertRaises(ValueError):
            lambda_envelope(DephasingChannel(1, 5), -0.1)
        with self.assertRaises(ValueError):
            lambda_envelope(DephasingChannel(1, 5), np.array([0.0, -1e-3]))

    def test_branch_continuity(self):
        """The three branches agree within 1e-6 around 4 a tau = 1."""
        nus = np.linspace(0, 10, 201)
        critical = lambda_envelope(DephasingChannel(0.25, 1), nus)
        under = lambda_envelope(DephasingChannel((1 + 1e-9) / 4, 1), nus)
        over = lambda_envelope(DephasingChannel((1 - 1e-9) / 4, 1), nus)
        np.testing.assert_allclose(under, critical, atol=1e-6)
        np.testing.assert_allclose(over, critical, atol=1e-6)

    def test_overdamped_large_time(self):
        """The overdamped branch stays finite and decays at large nu."""
        value = lambda_envelope(DephasingChannel(0.05, 1), 2000.0)
        self.assertTrue(math.isfinite(value))
        self.assertLess(value, 1e-3)

    @settings(deadline=None, max_examples=100)
    @given(
        st.floats(0.0, 5.0), st.floats(0.01, 10.0), st.floats(0.0, 20.0)
    )
    def test_bounded_and_continuous(self, a, tau, nu):
        """|Lambda| <= 1 and Lambda is continuous in nu."""
        ch = DephasingChannel(a, tau)
        value = lambda_envelope(ch, nu)
        self.assertLessEqual(abs(value), 1.0)
        self.assertAlmostEqual(lambda_envelope(ch, nu + 1e-9), value, delta=1e-6)


class TestKraus(unittest.TestCase):
    """Test cases for the Kraus operators."""

    def test_origin(self):
        """At nu = 0, M1 = I and M2 = 0."""
        m1, m2 = kraus_ops(DephasingChannel(1, 5), 0.0)
        np.testing.assert_array_equal(m1, I2)
        np.testing.assert_array_equal(m2, np.zeros((2, 2)))

    def test_full_dephasing(self):
        """Lambda = 0 gives I/sqrt(2) and sigma_z/sqrt(2)."""
        ch = DephasingChannel(1, 0.5)
        nu0 = (math.pi - math.atan(math.sqrt(3))) / math.sqrt(3)
        m1, m2 = kraus_ops(ch, nu0)
        np.testing.assert_allclose(m1, I2 / math.sqrt(2), atol=1e-12)
        np.testing.assert_allclose(m2, SIGMA_Z / math.sqrt(2), atol=1e-12)

    @settings(deadline=None, max_examples=100)
    @given(st.floats(0.0, 3.0), st.floats(0.05, 10.0), st.floats(0.0, 10.0))
    def test_completeness(self, a, tau, nu):
        """M1^dagger M1 + M2^dagger M2 = I."""
        m1, m2 = kraus_ops(DephasingChannel(a, tau), nu)
        np.testing.assert_allclose(m1.conj().T @ m1 + m2.conj().T @ m2, I2, atol=1e-12)


class TestApplyTwoQubit(unittest.TestCase):
    """Test cases for the two-qubit map."""

    def setUp(self):
        self.ch = DephasingChannel(1, 5)
        self.bds = bds_to_density(BellDiagonalParams(1, -0.6, 0.6))

    def test_identity_at_origin(self):
        """nu = 0 returns the input exactly."""
        evolved = apply_two_qubit(self.ch, self.bds, 0.0)
        np.testing.assert_array_equal(evolved.data, self.bds.data)

    def test_bds_scaling(self):
        """At Lambda^2 = 0.36 the state is BDS(0.36, -0.216, 0.6)."""
        ch = DephasingChannel(1, 0.5)
        # smallest nu with Lambda = 0.6 by bisection on the closed form
        lo, hi = 0.0, 1.2
        for _ in range(200):
            mid = (lo + hi) / 2
            if lambda_envelope(ch, mid) > 0.6:
                lo = mid
            else:
                hi = mid
        evolved = apply_two_qubit(ch, self.bds, lo)
        expected = bds_to_density(BellDiagonalParams(0.36, -0.216, 0.6))
        np.testing.assert_allclose(evolved.data, expected.data, atol=1e-12)

    def test_diagonal_and_trace_preserved(self):
        """Populations are untouched by dephasing."""
        evolved = apply_two_qubit(self.ch, self.bds, 0.37)
        np.testing.assert_allclose(evolved.diagonal, self.bds.diagonal, atol=1e-12)
        self.assertAlmostEqual(np.trace(evolved.data).real, 1.0, delta=1e-12)

    def test_coherences_scale(self):
        """Both X coherences scale by Lambda^2."""
        rho = xstate_to_density(sample_random_xstate(SampleSeed(3)))
        nu = 0.21
        lam2 = lambda_envelope(self.ch, nu) ** 2
        evolved = apply_two_qubit(self.ch, rho, nu)
        self.assertAlmostEqual(evolved[0, 3].real, lam2 * rho[0, 3].real, delta=1e-14)
        self.assertAlmostEqual(evolved[1, 2].real, lam2 * rho[1, 2].real, delta=1e-14)
        self.assertTrue(is_x_shaped(evolved, tol=1e-14))

    @settings(deadline=None, max_examples=100)
    @given(
        st.integers(min_value=0, max_value=2**32 - 1),
        st.floats(0.0, 3.0), st.floats(0.05, 10.0), st.floats(0.0, 5.0),
    )
    def test_cptp(self, seed, a, tau, nu):
        """Random states stay normalized, Hermitian and positive."""
        rho = random_density(np.random.default_rng(seed))
        evolved = apply_two_qubit(DephasingChannel(a, tau), rho, nu).data
        self.assertAlmostEqual(np.trace(evolved).real, 1.0, delta=1e-12)
        np.testing.assert_allclose(evolved, evolved.conj().T, atol=1e-12)
        self.assertGreaterEqual(eig_hermitian(evolved)[-1], -1e-10)

    @settings(deadline=None, max_examples=50)
    @given(st.integers(min_value=0, max_value=2**32 - 1), st.floats(0.0, 5.0))
    def test_x_shape_preserved(self, seed, nu):
        """X states map to X states."""
        rho = xstate_to_density(sample_random_xstate(SampleSeed(seed)))
        self.assertTrue(is_x_shaped(apply_two_qubit(self.ch, rho, nu), tol=1e-14))


class TestVolterra(unittest.TestCase):
    """Test cases for the memory-kernel integrator."""

    def test_no_noise(self):
        """a = 0 keeps the coherence at one."""
        times, values = volterra_coherence(DephasingChannel(0, 5), 2.0, 0.01)
        np.testing.assert_array_equal(values, np.ones_like(times))

    def test_initial_condition(self):
        """The first sample is t = 0 with value 1."""
        times, values = volterra_coherence(DephasingChannel(1, 5), 1.0, 0.1)
        self.assertEqual(times[0], 0.0)
        self.assertEqual(values[0], 1.0)
        self.assertEqual(len(times), 11)

    def test_closed_form(self):
        """a = 1, tau = 5 on [0, 30] with dt = 1e-3 matches Lambda(t / 10) to 1e-6."""
        ch = DephasingChannel(1, 5)
        times, values = volterra_coherence(ch, 30.0, 1e-3)
        self.assertAlmostEqual(times[-1], 30.0, places=9)
        expected = lambda_envelope(ch, ch.nu_of(times))
        self.assertLessEqual(np.max(np.abs(values - expected)), 1e-6)

    def test_overdamped(self):
        """The overdamped branch is checked against the integrator too."""
        ch = DephasingChannel(0.05, 1)
        times, values = volterra_coherence(ch, 10.0, 1e-3)
        expected = lambda_envelope(ch, ch.nu_of(times))
        np.testing.assert_allclose(values, expected, atol=1e-6)

    def test_invalid_step(self):
        """Non-positive steps and spans are rejected."""
        ch = DephasingChannel(1, 5)
        with self.assertRaises(ValueError):
            volterra_coherence(ch, 1.0, 0.0)
        with self.assertRaises(ValueError):
            volterra_coherence(ch, 0.0, 0.1)


if __name__ == "__main__":
    unittest.main()
