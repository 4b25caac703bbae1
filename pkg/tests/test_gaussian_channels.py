"""
Unit tests for channel analysis, extremality and channel algebra
"""

import numpy as np
import pytest

from errors import (
    DegenerateNoiseError,
    DimensionMismatchError,
    DualityUndefinedError,
    InvalidParameterError,
    NotCompletelyPositiveError,
    NotSymmetricError,
)
from gaussian_channels import (
    GaussianChannel,
    Verdict,
    apply,
    catalog,
    compose,
    conjugate,
    dual,
    environment_state,
    identity_channel,
    is_extreme,
    minimal_noise,
    noise_form,
    random_channel,
    validate_channel,
)
from gaussian_states import make_state, random_state, validate_state
from symplectic import form_matrix, random_symplectic, symplectic_eigenvalues

DELTA = form_matrix(2)


class TestNoiseForm:
    def test_identity_is_degenerate(self, identity):
        form = noise_form(identity)
        assert np.allclose(form.delta_K, 0.0)
        assert not form.nondegenerate

    def test_attenuator(self, attenuator):
        form = noise_form(attenuator)
        assert np.allclose(form.delta_K, 0.5 * DELTA)
        assert form.nondegenerate
        assert form.smallest_singular_value == pytest.approx(0.5)

    def test_amplifier_reverses_orientation(self, amplifier):
        assert np.allclose(noise_form(amplifier).delta_K, -DELTA)

    def test_zero_matrix(self, not_cp):
        assert np.allclose(noise_form(not_cp).delta_K, DELTA)


class TestValidateChannel:
    def test_minimal_attenuator_is_cp(self, attenuator):
        validity = validate_channel(attenuator)
        assert validity.cp
        assert validity.nondegenerate
        assert abs(validity.min_eigenvalue) < 1e-12

    def test_sub_minimal_noise(self):
        ch = GaussianChannel(1, 1, np.sqrt(0.5) * np.eye(2), np.zeros(2), 0.1 * np.eye(2))
        validity = validate_channel(ch)
        assert not validity.cp
        assert validity.min_eigenvalue == pytest.approx(-0.15)

    def test_identity_is_cp(self, identity):
        assert validate_channel(identity).cp

    def test_zero_channel_is_not_cp(self, not_cp):
        validity = validate_channel(not_cp)
        assert not validity.cp
        assert validity.min_eigenvalue == pytest.approx(-0.5)

    def test_rejects_non_symmetric_noise(self):
        ch = GaussianChannel(1, 1, np.zeros((2, 2)), np.zeros(2), np.array([[1.0, 0.2], [0.0, 1.0]]))
        with pytest.raises(NotSymmetricError):
            validate_channel(ch)

    def test_shape_checks(self):
        with pytest.raises(DimensionMismatchError):
            GaussianChannel(1, 2, np.eye(2), np.zeros(4), np.eye(4))


class TestEnvironmentState:
    def test_pure_loss_environment_is_vacuum(self, attenuator):
        env = environment_state(attenuator)
        assert np.allclose(symplectic_eigenvalues(env.state.alpha), [0.5])
        assert np.allclose(env.state.l, 0.0)
        assert env.residual < 1e-12

    def test_thermal_environment(self, thermal_attenuator):
        env = environment_state(thermal_attenuator)
        assert np.allclose(symplectic_eigenvalues(env.state.alpha), [1.0])

    def test_displacement_pulls_back(self):
        ch = GaussianChannel(1, 1, np.sqrt(0.5) * np.eye(2), np.array([0.3, -0.7]), 0.25 * np.eye(2))
        env = environment_state(ch)
        assert np.allclose(env.K_D.T @ env.state.l, ch.l)

    @pytest.mark.parametrize("s_A, s_B", [(1, 1), (2, 2), (2, 1), (1, 2)])
    @pytest.mark.parametrize("seed", range(3))
    def test_commutator_balance(self, s_A, s_B, seed):
        ch = random_channel(s_A, s_B, seed=seed)
        env = environment_state(ch)
        balance = form_matrix(2 * s_B) - ch.K.T @ form_matrix(2 * s_A) @ ch.K - env.K_D.T @ form_matrix(2 * s_B) @ env.K_D
        assert np.max(np.abs(balance)) < 1e-10

    def test_degenerate_noise(self, identity):
        with pytest.raises(DegenerateNoiseError, match="^indeterminate"):
            environment_state(identity)

    def test_not_cp(self, not_cp):
        with pytest.raises(NotCompletelyPositiveError):
            environment_state(not_cp)


class TestIsExtreme:
    def test_pure_loss(self, attenuator):
        result = is_extreme(attenuator)
        assert result.verdict is Verdict.EXTREME
        assert result.evidence.consensus

    def test_thermal_loss(self, thermal_attenuator):
        assert is_extreme(thermal_attenuator).verdict is Verdict.NOT_EXTREME

    def test_amplifier(self, amplifier):
        assert is_extreme(amplifier).verdict is Verdict.EXTREME

    @pytest.mark.parametrize("ch", [identity_channel(1), catalog('classical_noise', nu=1.0)])
    def test_degenerate_is_indeterminate(self, ch):
        result = is_extreme(ch)
        assert result.verdict is Verdict.INDETERMINATE
        assert result.evidence is None
        assert result.reason.startswith("indeterminate")

    @pytest.mark.parametrize("eta", [0.1, 0.3, 0.5, 0.7, 0.9])
    def test_attenuator_family(self, eta):
        assert is_extreme(catalog('attenuator', eta=eta)).verdict is Verdict.EXTREME
        assert is_extreme(catalog('attenuator', eta=eta, nbar=0.05)).verdict is Verdict.NOT_EXTREME

    @pytest.mark.parametrize("g", [1.5, 2.0, 4.0])
    def test_amplifier_family(self, g):
        assert is_extreme(catalog('amplifier', g=g)).verdict is Verdict.EXTREME
        assert is_extreme(catalog('amplifier', g=g, nbar=0.05)).verdict is Verdict.NOT_EXTREME

    @pytest.mark.parametrize("seed", range(5))
    def test_extra_noise_breaks_extremality(self, seed):
        ch = random_channel(1, 1, seed=seed, pure_environment=True)
        assert is_extreme(ch).verdict is Verdict.EXTREME
        noisier = GaussianChannel(1, 1, ch.K, ch.l, ch.mu + 0.01 * np.eye(2))
        assert is_extreme(noisier).verdict is Verdict.NOT_EXTREME

    @pytest.mark.parametrize("pure", [True, False])
    @pytest.mark.parametrize("seed", range(3))
    def test_invariant_under_symplectic_conjugation(self, pure, seed):
        ch = random_channel(2, 2, seed=seed, pure_environment=pure)
        S_A = random_symplectic(2, seed=100 + seed, scale=0.3)
        S_B = random_symplectic(2, seed=200 + seed, scale=0.3)
        assert is_extreme(conjugate(ch, S_A, S_B)).verdict is is_extreme(ch).verdict

    def test_minimal_noise_of_attenuator(self):
        assert np.allclose(minimal_noise(np.sqrt(0.5) * np.eye(2)), 0.25 * np.eye(2))

    def test_minimal_noise_needs_nondegenerate_form(self):
        with pytest.raises(DegenerateNoiseError):
            minimal_noise(np.eye(2))


class TestDual:
    def test_closed_form(self):
        ch = GaussianChannel(1, 1, 2.0 * np.eye(2), np.array([1.0, 0.0]), np.eye(2))
        result = dual(ch)
        assert np.allclose(result.channel.K, 0.5 * np.eye(2), atol=1e-12)
        assert np.allclose(result.channel.l, [-0.5, 0.0], atol=1e-12)
        assert np.allclose(result.channel.mu, 0.25 * np.eye(2), atol=1e-12)
        assert result.scale == pytest.approx(0.25)

    def test_identity_is_self_dual(self, identity):
        result = dual(identity)
        assert np.allclose(result.channel.K, np.eye(2))
        assert result.scale == pytest.approx(1.0)

    @pytest.mark.parametrize("ch", [catalog('attenuator', eta=0.3, nbar=0.2), catalog('amplifier', g=3.0)])
    def test_catalog_involution(self, ch):
        twice = dual(dual(ch).channel)
        assert np.allclose(twice.channel.K, ch.K, atol=1e-12)
        assert np.allclose(twice.channel.l, ch.l, atol=1e-12)
        assert np.allclose(twice.channel.mu, ch.mu, atol=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_random_involution(self, seed):
        ch = random_channel(2, 2, seed=seed)
        first = dual(ch)
        twice = dual(first.channel)
        assert np.allclose(twice.channel.K, ch.K, atol=1e-9)
        assert np.allclose(twice.channel.mu, ch.mu, atol=1e-9)
        assert first.scale * twice.scale == pytest.approx(1.0)

    def test_rectangular_is_undefined(self):
        with pytest.raises(DualityUndefinedError):
            dual(random_channel(2, 1, seed=0))

    def test_singular_is_undefined(self, not_cp):
        with pytest.raises(DualityUndefinedError):
            dual(not_cp)


class TestApply:
    def test_identity(self, identity):
        state = make_state('squeezed', r=0.3)
        out = apply(identity, state)
        assert np.allclose(out.alpha, state.alpha)

    def test_pure_loss_keeps_vacuum(self, attenuator, vacuum):
        assert np.allclose(apply(attenuator, vacuum).alpha, 0.5 * np.eye(2))

    def test_pure_loss_on_thermal(self, attenuator):
        assert np.allclose(apply(attenuator, make_state('thermal', nbar=1.0)).alpha, np.eye(2))

    def test_displacement(self, attenuator):
        out = apply(attenuator, make_state('coherent', l=(2.0, 0.0)))
        assert np.allclose(out.l, [np.sqrt(2.0), 0.0])

    def test_dimension_mismatch(self, attenuator):
        with pytest.raises(DimensionMismatchError):
            apply(attenuator, random_state(2, seed=0))

    @pytest.mark.parametrize("s_A, s_B", [(1, 1), (2, 2), (2, 1), (1, 2)])
    @pytest.mark.parametrize("seed", range(3))
    def test_cp_channels_preserve_validity(self, s_A, s_B, seed):
        out = apply(random_channel(s_A, s_B, seed=seed), random_state(s_A, seed=seed + 50, pure=True))
        assert out.s == s_B
        assert validate_state(out.l, out.alpha)


class TestCompose:
    def test_identity_is_neutral(self, attenuator):
        ch = compose(identity_channel(1), attenuator)
        assert np.allclose(ch.K, attenuator.K)
        assert np.allclose(ch.mu, attenuator.mu)

    def test_attenuators_multiply(self):
        ch = compose(catalog('attenuator', eta=0.5), catalog('attenuator', eta=0.4))
        assert np.allclose(ch.K, np.sqrt(0.2) * np.eye(2))
        assert np.allclose(ch.mu, 0.4 * np.eye(2))

    @pytest.mark.parametrize("seed", range(5))
    def test_state_passes_first_channel_first(self, seed):
        first = random_channel(2, 1, seed=seed)
        second = random_channel(1, 2, seed=seed + 10)
        state = random_state(2, seed=seed + 20)
        direct = apply(compose(first, second), state)
        stepwise = apply(second, apply(first, state))
        assert np.allclose(direct.alpha, stepwise.alpha)
        assert np.allclose(direct.l, stepwise.l)

    def test_mismatched_modes(self, attenuator):
        with pytest.raises(DimensionMismatchError):
            compose(attenuator, random_channel(2, 2, seed=0))


class TestCatalog:
    def test_attenuator(self):
        ch = catalog('attenuator', eta=0.5, nbar=1.0)
        assert np.allclose(ch.K, np.sqrt(0.5) * np.eye(2))
        assert np.allclose(ch.mu, 0.75 * np.eye(2))

    def test_amplifier(self):
        ch = catalog('amplifier', g=2.0)
        assert np.allclose(ch.K, np.sqrt(2.0) * np.eye(2))
        assert np.allclose(ch.mu, 0.5 * np.eye(2))

    def test_classical_noise(self):
        ch = catalog('classical_noise', nu=0.5)
        assert np.allclose(ch.K, np.eye(2))
        assert np.allclose(noise_form(ch).delta_K, 0.0)
        assert validate_channel(ch).cp

    @pytest.mark.parametrize("kind, params", [
        ('attenuator', {'eta': 1.5}),
        ('attenuator', {'eta': 0.0}),
        ('attenuator', {}),
        ('amplifier', {'g': 0.5}),
        ('classical_noise', {'nu': -1.0}),
        ('attenuator', {'eta': 0.5, 'nbar': -0.1}),
        ('phase_flip', {}),
    ])
    def test_rejects_bad_parameters(self, kind, params):
        with pytest.raises(InvalidParameterError):
            catalog(kind, **params)
