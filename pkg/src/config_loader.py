"""
Configuration loader for the Gaussian channel toolkit
Loads and validates numeric tolerances, Fock oracle and logging settings from YAML
"""

import copy
import yaml
import logging
from typing import Dict, Any, Optional
from pathlib import Path
from datetime import datetime
import pytz

logger = logging.getLogger(__name__)

NUMERICS_DEFAULTS = {
    'tol': 1e-9,
    'rank_tol': 1e-7,
    'residual_tol': 1e-8,
    'symmetry_tol': 1e-9,
}

FOCK_DEFAULTS = {
    'n_max': 60,
    'grid_extent': 6.0,
    'grid_step': 0.05,
    'min_extent': 6.0,
    'max_step': 0.1,
    'tail_threshold': 0.05,
    'block_dim': 10,
    'chunk_size': 4096,
    'duality_extent': 10.0,
    'duality_step': 0.1,
    'duality_margin': 5.0,
    'duality_tail_mass': 1e-9,
    'duality_max_levels': 800,
    'duality_trace_tol': 1e-7,
}

ORACLE_DEFAULTS = {
    'apply_tol': 1e-3,
    'duality_tol': 1e-6,
    'sampling_tol': 1e-6,
    'sampling_points': 16,
    'sampling_attempts': 100,
    'sampling_radius': 1.5,
    'duality_samples': 25,
    'duality_radius': 2.0,
    'seed': 0,
}

LOGGING_DEFAULTS = {
    'level': 'INFO',
    'file': None,
    'console_output': True,
    'timezone': 'UTC',
}

_SECTIONS = {
    'numerics': NUMERICS_DEFAULTS,
    'fock': FOCK_DEFAULTS,
    'oracle': ORACLE_DEFAULTS,
    'logging': LOGGING_DEFAULTS,
}


def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Load configuration from YAML file with validation.
    Without a path the built-in defaults are returned.
    """
    if config_path is None:
        return default_config()

    try:
        config_file = Path(config_path)
        if not config_file.exists():
            logger.error(f"Configuration file not found: {config_path}")
            raise FileNotFoundError(f"Config file not found: {config_path}")

        with open(config_file, 'r') as f:
            config = yaml.safe_load(f) or {}

        _validate_config(config)

        config = _apply_defaults(config)

        logger.info(f"Configuration loaded from {config_path}")
        return config

    except Exception as e:
        logger.error(f"Failed to load configuration: {e}")
        raise


def default_config() -> Dict[str, Any]:
    return _apply_defaults({})


def _validate_config(config: Dict) -> None:
    """Validate section types and the numeric ranges the analysis depends on"""
    if not isinstance(config, dict):
        raise ValueError("configuration root must be a mapping")

    for section, values in config.items():
        if section not in _SECTIONS:
            logger.warning(f"Ignoring unknown configuration section: {section}")
            continue
        if not isinstance(values, dict):
            raise ValueError(f"configuration section '{section}' must be a mapping")

    numerics = config.get('numerics', {})
    for key in ('tol', 'rank_tol', 'residual_tol', 'symmetry_tol'):
        if key in numerics and not float(numerics[key]) > 0:
            raise ValueError(f"numerics.{key} must be positive")

    fock = config.get('fock', {})
    if 'n_max' in fock and int(fock['n_max']) < 2:
        raise ValueError("fock.n_max must be at least 2")
    for key in ('grid_extent', 'grid_step', 'chunk_size', 'duality_extent', 'duality_step', 'duality_margin',
                'duality_max_levels', 'duality_trace_tol'):
        if key in fock and not float(fock[key]) > 0:
            raise ValueError(f"fock.{key} must be positive")
    if 'duality_tail_mass' in fock and not 0 < float(fock['duality_tail_mass']) < 1:
        raise ValueError("fock.duality_tail_mass must lie in (0, 1)")

    oracle = config.get('oracle', {})
    if 'sampling_points' in oracle and not 1 <= int(oracle['sampling_points']) <= 64:
        raise ValueError("oracle.sampling_points must be between 1 and 64")

    log_config = config.get('logging', {})
    if 'level' in log_config and not hasattr(logging, str(log_config['level']).upper()):
        raise ValueError(f"logging.level is not a valid level: {log_config['level']}")


def _apply_defaults(config: Dict) -> Dict:
    """Apply default values to configuration"""
    for section, defaults in _SECTIONS.items():
        if section not in config or config[section] is None:
            config[section] = {}
        for key, default_value in defaults.items():
            if key not in config[section]:
                config[section][key] = copy.copy(default_value)
    return config


class TimezoneFormatter(logging.Formatter):
    """Formatter that renders timestamps in a configured timezone"""

    def __init__(self, fmt=None, timezone: str = 'UTC'):
        super().__init__(fmt)
        self.tz = pytz.timezone(timezone)

    def formatTime(self, record, datefmt=None):
        dt = datetime.fromtimestamp(record.created, tz=self.tz)
        if datefmt:
            return dt.strftime(datefmt)
        else:
            return dt.strftime('%Y-%m-%d %H:%M:%S %Z')


def setup_logging(config: Dict) -> None:
    """Setup logging based on configuration; console output goes to stderr"""
    log_config = config.get('logging', {})
    level = log_config.get('level', 'INFO')

    log_format = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    formatter = TimezoneFormatter(log_format, log_config.get('timezone', 'UTC'))

    root = logging.getLogger()
    root.setLevel(getattr(logging, level.upper()))
    for handler in list(root.handlers):
        root.removeHandler(handler)

    if log_config.get('console_output', True):
        console_handler = logging.StreamHandler()
        console_handler.setFormatter(formatter)
        root.addHandler(console_handler)

    log_file = log_config.get('file')
    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(formatter)
        root.addHandler(file_handler)

    logger.debug(f"Logging configured: level={level}, console={log_config.get('console_output', True)}, file={log_file}")
