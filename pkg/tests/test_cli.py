"""
End-to-end tests of the command-line interface and its exit codes
"""

import json

import numpy as np
import pytest

from cli import ChannelDocument, ExitCode, StateDocument
from gaussian_channels import GaussianChannel, catalog, random_channel
from gaussian_states import GaussianState, make_state
from main import main


@pytest.fixture(autouse=True)
def isolated(monkeypatch, restore_logging):
    monkeypatch.delenv('CONFIG_FILE', raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, '--json')
    return code, json.loads(out)


class TestCatalog:
    def test_attenuator_document(self, capsys):
        code, out, _ = run(capsys, 'catalog', 'attenuator', '0.5', '1')
        assert code == ExitCode.OK
        doc = ChannelDocument.model_validate_json(out)
        assert (doc.s_A, doc.s_B) == (1, 1)
        assert np.allclose(doc.K, np.sqrt(0.5) * np.eye(2))
        assert np.allclose(doc.mu, 0.75 * np.eye(2))

    @pytest.mark.parametrize("argv", [
        ('catalog', 'attenuator', '1.5'),
        ('catalog', 'amplifier', '0.5'),
        ('catalog', 'amplifier'),
        ('catalog', 'classical_noise', '-1'),
        ('catalog', 'classical_noise', '0.5', '2'),
    ])
    def test_invalid_parameters(self, capsys, argv):
        code, out, err = run(capsys, *argv)
        assert code == ExitCode.INPUT_ERROR
        assert out == ""
        assert "error:" in err

    def test_round_trip_through_check(self, capsys, tmp_path):
        code, out, _ = run(capsys, 'catalog', 'amplifier', '2')
        path = tmp_path / "amplifier.json"
        path.write_text(out)
        assert run(capsys, 'check', str(path))[0] == ExitCode.EXTREME


class TestCheck:
    def test_extreme(self, capsys, channel_file, attenuator):
        code, report = run_json(capsys, 'check', channel_file(attenuator))
        assert code == 0
        assert report['exit_code'] == 0
        assert report['cp'] is True
        assert report['extremality']['verdict'] == 'extreme'
        assert report['extremality']['purity']['consensus'] is True
        assert report['extremality']['purity']['notes']['1'] == "via equivalence"
        assert report['env']['symplectic_eigenvalues'] == pytest.approx([0.5])

    def test_not_extreme(self, capsys, channel_file, thermal_attenuator):
        code, report = run_json(capsys, 'check', channel_file(thermal_attenuator))
        assert code == ExitCode.NOT_EXTREME
        assert report['extremality']['verdict'] == 'not_extreme'

    def test_not_cp(self, capsys, channel_file, not_cp):
        code, report = run_json(capsys, 'check', channel_file(not_cp))
        assert code == ExitCode.NOT_CP
        assert report['cp'] is False
        assert report['cp_min_eigenvalue'] == pytest.approx(-0.5)

    @pytest.mark.parametrize("ch", [catalog('classical_noise', nu=1.0), catalog('classical_noise', nu=0.0)])
    def test_indeterminate(self, capsys, channel_file, ch):
        code, report = run_json(capsys, 'check', channel_file(ch))
        assert code == ExitCode.INDETERMINATE
        assert report['extremality']['verdict'] == 'indeterminate'
        assert report['nondegenerate'] is False

    def test_human_readable(self, capsys, channel_file, attenuator):
        code, out, _ = run(capsys, 'check', channel_file(attenuator))
        assert code == 0
        assert "extremality: extreme" in out
        assert "(1) alpha is minimal: True [via equivalence]" in out
        assert "exit code: 0" in out

    def test_deterministic_output(self, capsys, channel_file):
        path = channel_file(random_channel(2, 2, seed=4))
        first = run(capsys, 'check', path, '--json')[1]
        second = run(capsys, 'check', path, '--json')[1]
        assert first == second

    def test_tolerance_override(self, capsys, channel_file):
        """mu = 0.24999995 sits within a loose tolerance of the minimal noise 1/4"""
        ch = GaussianChannel(1, 1, np.sqrt(0.5) * np.eye(2), np.zeros(2), 0.24999995 * np.eye(2))
        path = channel_file(ch)
        assert run(capsys, 'check', path)[0] == ExitCode.NOT_CP
        assert run(capsys, 'check', path, '--tol', '1e-6')[0] == ExitCode.EXTREME


class TestInputErrors:
    def test_malformed_json(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        code, out, err = run(capsys, 'check', str(path))
        assert code == ExitCode.INPUT_ERROR
        assert str(path) in err

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, 'check', str(tmp_path / "absent.json"))[0] == ExitCode.INPUT_ERROR

    def test_wrong_shape(self, capsys, tmp_path):
        path = tmp_path / "shape.json"
        path.write_text(json.dumps({
            's_A': 1, 's_B': 1, 'K': [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], 'l': [0.0, 0.0], 'mu': [[1.0, 0.0], [0.0, 1.0]],
        }))
        code, _, err = run(capsys, 'check', str(path))
        assert code == ExitCode.INPUT_ERROR
        assert "K" in err

    def test_non_symmetric_noise(self, capsys, tmp_path):
        path = tmp_path / "asym.json"
        path.write_text(json.dumps({
            's_A': 1, 's_B': 1, 'K': [[1.0, 0.0], [0.0, 1.0]], 'l': [0.0, 0.0], 'mu': [[1.0, 0.5], [0.0, 1.0]],
        }))
        assert run(capsys, 'dilate', str(path))[0] == ExitCode.INPUT_ERROR

    @pytest.mark.parametrize("command", ['check', 'dilate', 'dual'])
    @pytest.mark.parametrize("token", ['NaN', 'Infinity', '-Infinity'])
    def test_non_finite_channel_entries(self, capsys, tmp_path, command, token):
        path = tmp_path / "nan.json"
        path.write_text(
            '{"s_A": 1, "s_B": 1, "K": [[1.0, 0.0], [0.0, 1.0]], "l": [0.0, 0.0], '
            f'"mu": [[{token}, 0.0], [0.0, 1.0]]}}'
        )
        code, _, err = run(capsys, command, str(path))
        assert code == ExitCode.INPUT_ERROR
        assert str(path) in err

    def test_non_finite_state_entries(self, capsys, tmp_path, channel_file, attenuator):
        path = tmp_path / "state.json"
        path.write_text('{"s": 1, "l": [NaN, 0.0], "alpha": [[0.5, 0.0], [0.0, 0.5]]}')
        assert run(capsys, 'apply', channel_file(attenuator), str(path))[0] == ExitCode.INPUT_ERROR

    @pytest.mark.parametrize("argv", [(), ('frobnicate',), ('catalog', 'phase_flip', '1'), ('check',)])
    def test_usage_errors(self, capsys, argv):
        with pytest.raises(SystemExit) as exc:
            main(list(argv))
        assert exc.value.code == ExitCode.INPUT_ERROR

    def test_bad_configuration(self, capsys, tmp_path, channel_file, attenuator):
        config = tmp_path / "config.yaml"
        config.write_text("fock:\n  n_max: 1\n")
        code, _, err = run(capsys, 'check', channel_file(attenuator), '--config', str(config))
        assert code == ExitCode.INPUT_ERROR
        assert "configuration error" in err


class TestDilate:
    def test_residuals(self, capsys, channel_file, amplifier):
        code, report = run_json(capsys, 'dilate', channel_file(amplifier))
        assert code == 0
        residuals = report['dilation']['residuals']
        for name in ('environment_form', 'commutator_balance', 'block_symplectic'):
            assert residuals[name] <= 1e-8
        assert residuals['det_L'] > 1e-9
        assert np.array(report['dilation']['T']).shape == (4, 4)

    def test_degenerate(self, capsys, channel_file, identity):
        code, report = run_json(capsys, 'dilate', channel_file(identity))
        assert code == ExitCode.INDETERMINATE
        assert report['error'].startswith("indeterminate")
        assert report['dilation'] is None

    def test_not_cp(self, capsys, channel_file, not_cp):
        assert run(capsys, 'dilate', channel_file(not_cp))[0] == ExitCode.NOT_CP


class TestComplement:
    def test_pure_loss(self, capsys, channel_file, attenuator):
        code, report = run_json(capsys, 'complement', channel_file(attenuator))
        assert code == 0
        assert report['complement']['cp'] is True
        assert report['complement']['env_pure'] is True
        assert report['complement']['channel']['s_B'] == 1

    def test_thermal_environment(self, capsys, channel_file, thermal_attenuator):
        code, report = run_json(capsys, 'complement', channel_file(thermal_attenuator))
        assert code == 0
        assert report['complement']['env_pure'] is False


class TestDual:
    def test_closed_form(self, capsys, channel_file):
        ch = GaussianChannel(1, 1, 2.0 * np.eye(2), np.array([1.0, 0.0]), np.eye(2))
        code, report = run_json(capsys, 'dual', channel_file(ch))
        assert code == 0
        dual = report['dual']
        assert dual['scale'] == pytest.approx(0.25)
        assert np.allclose(dual['channel']['K'], 0.5 * np.eye(2))
        assert np.allclose(dual['channel']['l'], [-0.5, 0.0])
        assert np.allclose(dual['channel']['mu'], 0.25 * np.eye(2))
        assert all(v <= 1e-12 for v in dual['residuals'].values())

    def test_rectangular(self, capsys, channel_file):
        code, report = run_json(capsys, 'dual', channel_file(random_channel(2, 1, seed=0)))
        assert code == ExitCode.FAILED
        assert "duality undefined" in report['error']


class TestApply:
    def test_output_file(self, capsys, tmp_path, channel_file, state_file, attenuator):
        output = tmp_path / "out.json"
        code, report = run_json(
            capsys, 'apply', channel_file(attenuator), state_file(make_state('thermal', nbar=1.0)),
            '--output', str(output),
        )
        assert code == 0
        assert np.allclose(report['output_state']['alpha'], np.eye(2))
        written = StateDocument.model_validate_json(output.read_text())
        assert np.allclose(written.alpha, np.eye(2))

    def test_invalid_state(self, capsys, channel_file, state_file, attenuator):
        bad = GaussianState.from_covariance(0.3 * np.eye(2))
        assert run(capsys, 'apply', channel_file(attenuator), state_file(bad))[0] == ExitCode.INPUT_ERROR

    def test_mode_mismatch(self, capsys, channel_file, state_file, attenuator):
        state = GaussianState.from_covariance(0.5 * np.eye(4))
        assert run(capsys, 'apply', channel_file(attenuator), state_file(state))[0] == ExitCode.INPUT_ERROR


class TestVerifyFock:
    def test_two_mode_channel(self, capsys, channel_file):
        assert run(capsys, 'verify-fock', channel_file(random_channel(2, 2, seed=0)))[0] == ExitCode.INPUT_ERROR

    def test_rejects_coarse_grid(self, capsys, channel_file, attenuator):
        code, _, err = run(capsys, 'verify-fock', channel_file(attenuator), '--grid-step', '0.5')
        assert code == ExitCode.INPUT_ERROR

    @pytest.mark.slow
    def test_pure_loss_passes(self, capsys, channel_file, attenuator):
        code, report = run_json(capsys, 'verify-fock', channel_file(attenuator), '--grid-step', '0.1')
        assert code == 0
        assert report['passed'] is True
        assert set(report['apply_residuals']) == {'vacuum', 'thermal(1)', 'squeezed(0.4)'}
        assert all(v <= 1e-3 for v in report['apply_residuals'].values())
        assert all(v <= 1e-6 for v in report['duality_errors'].values())
        assert report['sampling_min_eigenvalue'] >= -1e-6

    @pytest.mark.slow
    @pytest.mark.parametrize("ch", [catalog('attenuator', eta=0.1), catalog('amplifier', g=4.0)],
                             ids=['strong_loss', 'strong_gain'])
    def test_strong_channels_pass(self, capsys, channel_file, ch):
        code, report = run_json(capsys, 'verify-fock', channel_file(ch), '--grid-step', '0.1')
        assert code == 0
        assert all(v <= 1e-6 for v in report['duality_errors'].values())

    @pytest.mark.slow
    def test_duality_refused_when_image_exceeds_max_levels(self, capsys, tmp_path, channel_file):
        config = tmp_path / "config.yaml"
        config.write_text("fock:\n  duality_max_levels: 100\n")
        code, _, err = run(capsys, 'verify-fock', channel_file(catalog('attenuator', eta=0.1)),
                           '--grid-step', '0.1', '--config', str(config))
        assert code == ExitCode.INPUT_ERROR
        assert "max_levels" in err

    @pytest.mark.slow
    def test_sub_minimal_noise_fails(self, capsys, channel_file):
        ch = GaussianChannel(1, 1, np.sqrt(0.5) * np.eye(2), np.zeros(2), 0.1 * np.eye(2))
        code, report = run_json(capsys, 'verify-fock', channel_file(ch), '--grid-step', '0.1')
        assert code == ExitCode.FAILED
        assert report['passed'] is False
        assert report['sampling_min_eigenvalue'] < -1e-3
