"""
Gaussian channels module: complete positivity, environment, dilation, extremality
"""

from .models import (
    ChannelKind,
    Verdict,
    GaussianChannel,
    NoiseForm,
    ChannelValidity,
    Environment,
    Dilation,
    ExtremalityResult,
    DualChannel,
)
from .analysis import noise_form, validate_channel, environment_state, is_extreme
from .dilation import DEFAULT_RESIDUAL_TOL, dilate, complementary, environment_is_pure
from .operations import (
    dual,
    apply,
    compose,
    catalog,
    identity_channel,
    minimal_noise,
    conjugate,
    random_channel,
)

__all__ = [
    'ChannelKind', 'Verdict', 'GaussianChannel', 'NoiseForm', 'ChannelValidity',
    'Environment', 'Dilation', 'ExtremalityResult', 'DualChannel',
    'noise_form', 'validate_channel', 'environment_state', 'is_extreme',
    'DEFAULT_RESIDUAL_TOL', 'dilate', 'complementary', 'environment_is_pure',
    'dual', 'apply', 'compose', 'catalog', 'identity_channel', 'minimal_noise',
    'conjugate', 'random_channel',
]
