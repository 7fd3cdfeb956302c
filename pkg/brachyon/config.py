# ABOUTME: Configuration loader module
# ABOUTME: Loads search caps, concurrency and catalogue settings from YAML with an environment cap override

import logging
import os
from dataclasses import dataclass

import yaml

logger = logging.getLogger(__name__)

CAP_ORDER_ENV = "BRACHYON_CAP_ORDER"


@dataclass
class Config:
    """Configuration data class with default values."""

    max_subgroup_order: int = 64
    max_isomorphism_order: int = 128
    max_brace_enumeration_order: int = 16
    max_holomorph_order: int = 2048
    max_families_per_orbit: int = 2
    max_solution_size: int = 64
    jobs: int = 1
    catalog_path: str = ""
    log_level: str = "INFO"

    def set_order_caps(self, cap: int) -> None:
        self.max_subgroup_order = cap
        self.max_isomorphism_order = cap
        self.max_brace_enumeration_order = cap


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _apply_env_override(config: Config) -> None:
    raw = os.environ.get(CAP_ORDER_ENV)
    if raw is None:
        return
    try:
        cap = int(raw)
    except ValueError:
        logger.warning(f"Ignoring {CAP_ORDER_ENV}={raw!r}: not an integer")
        return
    if cap <= 0:
        logger.warning(f"Ignoring {CAP_ORDER_ENV}={raw!r}: must be positive")
        return
    config.set_order_caps(cap)


def get_config(config_path: str = "config.yaml") -> Config:
    """
    Load configuration from YAML file with defaults for missing keys.

    Keys with the wrong type keep their default. BRACHYON_CAP_ORDER, when set to a
    positive integer, replaces the three order caps.

    Args:
        config_path: Path to the YAML configuration file

    Returns:
        Config object with loaded or default values
    """
    config = Config()

    try:
        with open(config_path, "r") as f:
            yaml_data = yaml.safe_load(f) or {}
    except (FileNotFoundError, yaml.YAMLError):
        yaml_data = {}
    if not isinstance(yaml_data, dict):
        yaml_data = {}

    for key, default in Config.__dataclass_fields__.items():
        if key not in yaml_data:
            continue
        value = yaml_data[key]
        expected = default.type
        if expected in (int, "int"):
            accepted = _is_int(value) and value > 0
        else:
            accepted = isinstance(value, str)
        if accepted:
            setattr(config, key, value)
        else:
            logger.warning(f"Ignoring config key {key!r}: invalid value {value!r}")

    _apply_env_override(config)
    return config
