"""
Shared fixtures for the Gaussian channel toolkit tests
"""

import logging

import numpy as np
import pytest

from cli import channel_to_document, state_to_document, write_document
from config_loader import default_config
from gaussian_channels import GaussianChannel, catalog, identity_channel
from gaussian_states import make_state


@pytest.fixture
def config():
    return default_config()


@pytest.fixture
def attenuator():
    """Pure-loss channel, eta = 1/2"""
    return catalog('attenuator', eta=0.5)


@pytest.fixture
def thermal_attenuator():
    """eta = 1/2 with mu = I/2: environment in thermal state nbar = 1/2"""
    return catalog('attenuator', eta=0.5, nbar=0.5)


@pytest.fixture
def amplifier():
    return catalog('amplifier', g=2.0)


@pytest.fixture
def identity():
    return identity_channel(1)


@pytest.fixture
def not_cp():
    """K = 0 with no noise violates mu >= (i/2) Delta"""
    return GaussianChannel(1, 1, np.zeros((2, 2)), np.zeros(2), np.zeros((2, 2)))


@pytest.fixture
def vacuum():
    return make_state('vacuum')


@pytest.fixture
def channel_file(tmp_path):
    """Write a channel to a JSON document and return its path"""
    counter = iter(range(1000))

    def write(ch: GaussianChannel) -> str:
        path = tmp_path / f"channel_{next(counter)}.json"
        write_document(channel_to_document(ch), path)
        return str(path)

    return write


@pytest.fixture
def state_file(tmp_path):
    counter = iter(range(1000))

    def write(state) -> str:
        path = tmp_path / f"state_{next(counter)}.json"
        write_document(state_to_document(state), path)
        return str(path)

    return write


@pytest.fixture
def restore_logging():
    """main() reconfigures the root logger; put the previous handlers back"""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    for handler in list(root.handlers):
        root.removeHandler(handler)
        if handler not in handlers:
            handler.close()
    for handler in handlers:
        root.addHandler(handler)
    root.setLevel(level)
