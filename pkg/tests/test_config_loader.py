"""
Tests for configuration loading and logging setup
"""

import logging
import sys

import pytest

from config_loader import TimezoneFormatter, default_config, load_config, setup_logging


def test_defaults():
    config = default_config()
    assert config['numerics']['tol'] == 1e-9
    assert config['numerics']['rank_tol'] == 1e-7
    assert config['fock']['n_max'] == 60
    assert config['fock']['duality_margin'] == 5.0
    assert config['fock']['duality_max_levels'] == 800
    assert config['oracle']['sampling_points'] == 16
    assert config['logging']['level'] == 'INFO'


def test_no_path_gives_defaults():
    assert load_config(None) == default_config()


def test_defaults_are_independent():
    first = default_config()
    first['fock']['n_max'] = 5
    assert default_config()['fock']['n_max'] == 60


def test_partial_file_is_completed(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("numerics:\n  tol: 1.0e-10\nfock:\n  n_max: 80\n")
    config = load_config(str(path))
    assert config['numerics']['tol'] == 1e-10
    assert config['numerics']['rank_tol'] == 1e-7
    assert config['fock']['n_max'] == 80
    assert config['oracle']['seed'] == 0


def test_empty_file(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("")
    assert load_config(str(path)) == default_config()


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(str(tmp_path / "absent.yaml"))


@pytest.mark.parametrize("text", [
    "fock:\n  n_max: 1\n",
    "numerics:\n  tol: -1\n",
    "oracle:\n  sampling_points: 65\n",
    "logging:\n  level: LOUD\n",
    "fock: 3\n",
    "fock:\n  duality_tail_mass: 1.5\n",
    "fock:\n  duality_margin: 0\n",
])
def test_invalid_values(tmp_path, text):
    path = tmp_path / "config.yaml"
    path.write_text(text)
    with pytest.raises(ValueError):
        load_config(str(path))


def test_timezone_formatter():
    formatter = TimezoneFormatter("%(asctime)s %(message)s", timezone='UTC')
    record = logging.LogRecord('test', logging.INFO, __file__, 1, "hello", None, None)
    assert formatter.format(record).endswith("UTC hello")


def test_setup_logging_uses_stderr(restore_logging, tmp_path):
    config = default_config()
    config['logging']['level'] = 'DEBUG'
    config['logging']['file'] = str(tmp_path / "logs" / "toolkit.log")
    setup_logging(config)
    root = logging.getLogger()
    assert root.level == logging.DEBUG
    streams = [h for h in root.handlers if type(h) is logging.StreamHandler]
    assert len(streams) == 1 and streams[0].stream is sys.stderr
    assert any(isinstance(h, logging.FileHandler) for h in root.handlers)
    assert (tmp_path / "logs").is_dir()
