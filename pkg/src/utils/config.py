"""Configuration loader

Defaults live in ``config/config.py``; a JSON file may override any
section. Values are deep-merged and range-checked.
"""
import copy
import json
import logging
import os
from typing import Any, Dict, Optional

from config.config import BUILD_CONFIG, CLI_CONFIG, COST_CONFIG, FIELD_CONFIG, LOGGING_CONFIG
from src.core.errors import ValidationError

logger = logging.getLogger(__name__)

DEFAULTS = {
    'field': FIELD_CONFIG,
    'cost': COST_CONFIG,
    'build': BUILD_CONFIG,
    'logging': LOGGING_CONFIG,
    'cli': CLI_CONFIG
}

# (section, key) -> smallest allowed value
MINIMUMS = {
    ('build', 'max_place_attempts'): 1,
    ('build', 'max_build_retries'): 1,
    ('build', 'max_divisor_attempts'): 1,
    ('build', 'explicit_max_degree'): 1,
    ('cost', 'max_multiplicity'): 1,
    ('field', 'enumeration_bound'): 1
}


class ConfigError(ValidationError):
    """Invalid or unreadable configuration"""
    pass


def deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class ConfigLoader:
    """Loads defaults plus an optional JSON override file"""

    def __init__(self, path: Optional[str] = None):
        self.path = path
        self.config: Dict[str, Any] = {}

    def _validate_config(self, config: Dict[str, Any]) -> None:
        for section in DEFAULTS:
            if not isinstance(config.get(section), dict):
                raise ConfigError(f"configuration section '{section}' is missing or not an object")
        unknown = set(config) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown configuration sections: {sorted(unknown)}")
        for (section, key), minimum in MINIMUMS.items():
            value = config[section].get(key)
            if not isinstance(value, int) or value < minimum:
                raise ConfigError(f"{section}.{key} must be an integer >= {minimum}, got {value!r}")
        cost = config['cost']
        for row in [cost['m_hat'], cost['mu_explicit'], *cost['mu'].values()]:
            if any(b < a for a, b in zip(row, row[1:])):
                raise ConfigError(f"cost rows must be nondecreasing, got {row}")
        if config['cli']['default_format'] not in config['cli']['formats']:
            raise ConfigError(f"default format {config['cli']['default_format']!r} is not a known format")

    def load_config(self, path: Optional[str] = None) -> Dict[str, Any]:
        """Defaults deep-merged with the JSON file at ``path`` (if any)

        Args:
            path (str, optional): Override file. Defaults to the loader's path.

        Returns:
            Dict[str, Any]: Validated configuration
        """
        path = path or self.path
        config = copy.deepcopy(DEFAULTS)
        if path:
            try:
                with open(path, 'r', encoding='utf-8') as f:
                    custom_config = json.load(f)
            except FileNotFoundError:
                raise ConfigError(f"configuration file not found: {path}")
            except json.JSONDecodeError as e:
                raise ConfigError(f"configuration file is not valid JSON: {str(e)}")
            if not isinstance(custom_config, dict):
                raise ConfigError("configuration file must hold a JSON object")
            config = deep_merge(config, custom_config)
            logger.debug(f"loaded configuration overrides from {path}")
        self._validate_config(config)
        self.config = config
        return config

    def apply(self) -> None:
        """Push the loaded values into the module-level dictionaries"""
        for section, target in DEFAULTS.items():
            target.clear()
            target.update(self.config[section])

    def get_value(self, section: str, key: str, default: Any = None) -> Any:
        config = self.config or self.load_config()
        return config.get(section, {}).get(key, default)

    def save_config(self, path: str, config_data: Dict[str, Any]) -> None:
        """Validate a full configuration and write it as an override file"""
        self._validate_config(deep_merge(DEFAULTS, config_data))
        try:
            os.makedirs(os.path.dirname(path) or '.', exist_ok=True)
            with open(path, 'w', encoding='utf-8') as f:
                json.dump(config_data, f, indent=4, ensure_ascii=False)
        except OSError as e:
            raise ConfigError(f"configuration could not be saved: {str(e)}")
