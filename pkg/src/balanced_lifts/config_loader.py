"""Loader for layered run configuration from YAML files."""

# Standard Python Libraries
from copy import deepcopy
import logging
from pathlib import Path
from typing import Any

# Third-Party Libraries
import yaml  # type: ignore[import-untyped]

from .errors import BalancedLiftsError

logger = logging.getLogger(__name__)

DEFAULTS_FILENAME = "defaults.yaml"

# Global config overrides (can be set from the command line)
_config_overrides: dict[str, Any] | None = None


def _deep_merge(base: dict, overlay: dict) -> dict:
    """Deep merge two dictionaries, with overlay taking precedence.

    Parameters
    ----------
    base : dict
        Base dictionary (fallback values)
    overlay : dict
        Overlay dictionary (user values)

    Returns
    -------
    dict
        Merged dictionary with overlay values taking precedence

    """
    result = deepcopy(base)

    for key, value in overlay.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = _deep_merge(result[key], value)
        else:
            result[key] = deepcopy(value)

    return result


def set_config_overrides(overrides: dict[str, Any] | None) -> None:
    """Set configuration overrides with the highest priority.

    Parameters
    ----------
    overrides : dict[str, Any] | None
        Nested dictionary shaped like ``defaults.yaml``

    """
    global _config_overrides
    _config_overrides = overrides
    logger.debug(
        f"Config overrides set: {list(overrides.keys()) if overrides else 'None'}"
    )


def get_config_overrides() -> dict[str, Any] | None:
    """Get the current config overrides.

    Returns
    -------
    dict[str, Any] | None
        Current config overrides or None

    """
    return _config_overrides


def load_yaml(user_file: str | Path | None = None) -> dict[str, Any]:
    """Load the layered configuration.

    Priority order (lowest to highest):
    1. Packaged ``config/defaults.yaml``
    2. User YAML file, when given
    3. Overrides set with :func:`set_config_overrides`

    Parameters
    ----------
    user_file : str | Path | None
        Optional user configuration file

    Returns
    -------
    dict[str, Any]
        Merged configuration dictionary

    Raises
    ------
    BalancedLiftsError
        If the user file is missing or is not a YAML mapping.

    """
    base_file_path = Path(__file__).parent / "config" / DEFAULTS_FILENAME

    try:
        with open(base_file_path, encoding="utf-8") as f:
            result: dict[str, Any] = yaml.safe_load(f) or {}
            logger.debug(f"Loaded base configuration from {base_file_path}")
    except FileNotFoundError:
        logger.error(f"Base configuration file not found: {base_file_path}")
        result = {}
    except yaml.YAMLError as e:
        logger.error(f"Error parsing base YAML file {base_file_path}: {e}")
        result = {}

    if user_file is not None:
        try:
            with open(user_file, encoding="utf-8") as f:
                user_data = yaml.safe_load(f) or {}
        except FileNotFoundError as e:
            raise BalancedLiftsError(f"Configuration file not found: {user_file}") from e
        if not isinstance(user_data, dict):
            raise BalancedLiftsError(f"Configuration file {user_file} is not a mapping")
        logger.info(f"Loaded user configuration from {user_file}, merging with base")
        result = _deep_merge(result, user_data)

    if _config_overrides:
        logger.debug(f"Applying config overrides for {sorted(_config_overrides)}")
        result = _deep_merge(result, _config_overrides)

    return result


def load_defaults() -> dict[str, Any]:
    """Load the packaged defaults merged with any overrides.

    Returns
    -------
    dict[str, Any]
        Configuration dictionary without a user file

    """
    return load_yaml(None)
