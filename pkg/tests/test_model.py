import math

import numpy as np
import pytest

from qurel.errors import ValidationError
from qurel.linalg import eig_hermitian
from qurel.model import (
    ModelParams,
    T_MIN,
    closed_form_concurrence,
    closed_form_mixedness,
    hamiltonian,
    thermal_state,
)
from qurel.states import concurrence_two_qubit, mixedness

from helpers import GRID, thermal_elements, thermal_matrix


class TestModelParams:
    def test_derived_quantities(self):
        p = ModelParams(1.0, 2.0, 0.5)
        assert p.beta == 2.0
        assert np.isclose(p.delta, 4.0 * np.sqrt(2.0))
        assert np.isclose(p.theta_dm, np.pi / 4.0)

    def test_rejects_zero_coupling(self):
        with pytest.raises(ValidationError):
            ModelParams(1.0, 0.0, 1.0)

    def test_rejects_negative_d(self):
        with pytest.raises(ValidationError):
            ModelParams(-0.5, 1.0, 1.0)

    def test_rejects_too_cold(self):
        with pytest.raises(ValidationError):
            ModelParams(1.0, 1.0, T_MIN / 10.0)


class TestHamiltonian:
    def test_vanishes_in_weak_coupling_limit(self):
        h = hamiltonian(ModelParams(0.0, 1e-12, 1.0))
        assert np.max(np.abs(h)) <= 1e-11

    def test_inner_matrix_element(self):
        h = hamiltonian(ModelParams(1.0, 1.0, 1.0))
        assert h[1, 2] == 1.0 + 1.0j  # j (1 + i d)
        h = hamiltonian(ModelParams(2.0, -0.5, 1.0))
        assert np.isclose(h[1, 2], -0.5 * (1.0 + 2.0j))

    def test_spectrum(self):
        h = hamiltonian(ModelParams(1.0, 1.0, 1.0))
        w, _ = eig_hermitian(h)
        expected = sorted([0.5, 0.5, -0.5 + np.sqrt(2.0), -0.5 - np.sqrt(2.0)])
        assert np.allclose(w, expected)

    @pytest.mark.parametrize("d,j", [(0.0, 1.0), (1.0, -1.0), (2.0, 0.5)])
    def test_spectrum_general(self, d, j):
        p = ModelParams(d, j, 1.0)
        w, _ = eig_hermitian(hamiltonian(p))
        expected = sorted([j / 2.0, j / 2.0,
                           -j / 2.0 + abs(p.delta) / 2.0, -j / 2.0 - abs(p.delta) / 2.0])
        assert np.allclose(w, expected)


class TestThermalState:
    def test_infinite_temperature_limit(self):
        rho = thermal_state(ModelParams(1.0, 1.0, 1e6))
        assert np.max(np.abs(rho.matrix - np.eye(4) / 4.0)) <= 1e-5

    def test_reference_entries(self):
        rho = thermal_state(ModelParams(1.0, 1.0, 1.0)).matrix
        assert abs(rho[0, 0] - 0.07224476407147175) <= 1e-12
        assert abs(rho[1, 1] - 0.4277552359285283) <= 1e-12
        assert abs(abs(rho[1, 2]) - 0.38001157549157233) <= 1e-12

    def test_off_diagonal_phase(self):
        """rho23 carries exactly the phase of (1 + i d)."""
        for d, j, t in [(0.5, 1.0, 0.7), (2.0, -1.0, 1.3)]:
            p = ModelParams(d, j, t)
            rho = thermal_state(p).matrix
            r11, r22, r23, z = thermal_elements(d, j, t)
            assert abs(rho[1, 2] - r23 / z) <= 1e-12

    def test_matches_analytic_matrix_on_grid(self):
        for d, j, t in GRID:
            rho = thermal_state(ModelParams(d, j, t)).matrix
            assert np.max(np.abs(rho - thermal_matrix(d, j, t))) <= 1e-10

    def test_x_state_structure(self):
        rho = thermal_state(ModelParams(1.0, 1.0, 0.3)).matrix
        assert rho[0, 3] == 0.0 or abs(rho[0, 3]) <= 1e-15
        assert abs(rho[0, 0] - rho[3, 3]) <= 1e-14
        assert abs(rho[1, 1] - rho[2, 2]) <= 1e-14

    def test_cold_limit_is_ground_projector(self):
        rho = thermal_state(ModelParams(0.0, 1.0, T_MIN)).matrix
        singlet = np.zeros(4, dtype=complex)
        singlet[1], singlet[2] = 1.0, -1.0
        singlet /= np.sqrt(2.0)
        assert np.max(np.abs(rho - np.outer(singlet, singlet.conj()))) <= 1e-9


class TestClosedFormMixedness:
    def test_weak_coupling_limit(self):
        assert np.isclose(closed_form_mixedness(ModelParams(0.7, 1e-9, 1.0)), 0.75, atol=1e-8)

    def test_reference_point_against_verbatim_formula(self):
        p = ModelParams(1.0, 1.0, 1.0)
        beta, j, delta = 1.0, 1.0, 2.0 * math.sqrt(2.0)
        verbatim = (4.0 * math.exp(beta * (j + delta))
                    * (math.cosh(beta * j) + 2.0 * math.cosh(beta * delta / 2.0))
                    / (math.exp(beta * (j + delta)) + math.exp(beta * j)
                       + 2.0 * math.exp(beta * delta / 2.0)) ** 2)
        assert abs(closed_form_mixedness(p) - verbatim) <= 1e-12
        assert abs(closed_form_mixedness(p) - 0.334794709384799) <= 1e-12

    def test_agrees_with_purity_route_on_grid(self):
        for d, j, t in GRID:
            p = ModelParams(d, j, t)
            assert abs(closed_form_mixedness(p) - mixedness(thermal_state(p))) <= 1e-10

    def test_exact_scale_symmetry(self):
        assert closed_form_mixedness(ModelParams(1.0, 2.0, 2.0)) == \
            closed_form_mixedness(ModelParams(1.0, 1.0, 1.0))

    def test_survives_extreme_cold(self):
        # beta |j| = 2000: the verbatim exponentials overflow, the
        # rescaled evaluation must not
        val = closed_form_mixedness(ModelParams(1.0, 2.0, T_MIN))
        assert 0.0 <= val <= 1e-10


class TestClosedFormConcurrence:
    def test_hot_limit_vanishes(self):
        assert closed_form_concurrence(ModelParams(1.0, 1.0, 1e6)) == 0.0

    def test_reference_point(self):
        got = closed_form_concurrence(ModelParams(1.0, 1.0, 1.0))
        assert abs(got - 0.615533622840201) <= 1e-12

    def test_cold_antiferromagnetic_singlet(self):
        got = closed_form_concurrence(ModelParams(0.0, 1.0, T_MIN))
        assert abs(got - 1.0) <= 1e-6

    def test_agrees_with_spin_flip_route_on_grid(self):
        for d, j, t in GRID:
            p = ModelParams(d, j, t)
            assert abs(closed_form_concurrence(p)
                       - concurrence_two_qubit(thermal_state(p))) <= 1e-10

    def test_ferromagnetic_separable_at_low_temperature(self):
        assert closed_form_concurrence(ModelParams(0.0, -1.0, 0.2)) == 0.0


def as_printed_concurrence(d, j, t):
    """The subtracted term with the positive exponent sign; kept only to
    document that it contradicts the spin-flip route (see test below)."""
    r11, r22, r23, z = thermal_elements(d, j, t)
    beta = 1.0 / t
    return 2.0 * max(abs(r23) - math.exp(beta * j / 2.0), 0.0) / z


def test_positive_exponent_variant_contradicts_spin_flip():
    """Near the entanglement threshold the e^{+beta J/2} variant predicts a
    separable state while the spin-flip value is clearly nonzero, so the
    corrected e^{-beta J/2} subtraction is the right one."""
    got = concurrence_two_qubit(thermal_state(ModelParams(1.0, 1.0, 2.0)))
    wrong = as_printed_concurrence(1.0, 1.0, 2.0)
    assert got > 0.08
    assert wrong == 0.0
    assert abs(wrong - got) > 1e-3
    # and the corrected closed form agrees with the spin-flip route there
    assert abs(closed_form_concurrence(ModelParams(1.0, 1.0, 2.0)) - got) <= 1e-10


def test_scale_invariance_of_derived_scalars():
    for k in (0.5, 2.0, 10.0):
        for d, j, t in [(0.0, 1.0, 0.5), (1.0, -1.0, 1.0), (2.0, 0.5, 2.0)]:
            base = ModelParams(d, j, t)
            scaled = ModelParams(d, k * j, k * t)
            assert abs(closed_form_mixedness(base) - closed_form_mixedness(scaled)) <= 1e-10
            assert abs(closed_form_concurrence(base) - closed_form_concurrence(scaled)) <= 1e-10
            assert abs(mixedness(thermal_state(base)) - mixedness(thermal_state(scaled))) <= 1e-10
