"""
@Description: Run configuration for the command line: defaults, environment overrides and flags
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-04 12:21:39
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-05 13:33:51
"""
import os

from src.structures.ground import load_structure

DEFAULTS = {
    'structure': 'random-graph',
    'depth': 3,
    'budget': 7,
    'trace': None,
    'seed': 0,
    'kind': 'jonsson',
}

ENVIRONMENT = {
    'NEOLIB_DEPTH': 'depth',
    'NEOLIB_BUDGET': 'budget',
    'NEOLIB_SEED': 'seed',
}


def _as_int(key, value):
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ValueError(f'`{key}` must be an integer, got `{value}`.')


class Config(object):
    """Defaults, then environment overrides, then explicitly given flags."""

    def __init__(self, overrides=None, environ=None):
        config = dict(DEFAULTS)
        environ = os.environ if environ is None else environ
        for var, key in ENVIRONMENT.items():
            if environ.get(var) not in (None, ''):
                config[key] = _as_int(var, environ.get(var))
        for key, value in (overrides or {}).items():
            if key in config and value is not None:
                config[key] = value
        for key in ('depth', 'budget', 'seed'):
            config[key] = _as_int(key, config[key])
        self._config = config
        self._ground = None

    def get(self, key, default=None):
        return self._config.get(key, default)

    @property
    def ground(self):
        if self._ground is None:
            self._ground = load_structure(self._config.get('structure'))
        return self._ground

    def validate(self, ground=None):
        ground = ground or self.ground
        if self._config.get('depth') < 1:
            raise ValueError(f'depth must be at least 1, got {self._config.get("depth")}.')
        if self._config.get('budget') < ground.k:
            raise ValueError(f'budget must be at least k={ground.k}, got {self._config.get("budget")}.')
        return self

    def get_config(self):
        return dict(self._config)
