"""Configuration management for ybsimple."""

import copy
from pathlib import Path

import yaml

from ..core.errors import DescriptorError

DEFAULT_CONFIG_PATH = "config.yaml"

DEFAULTS = {
    'log_level': 'WARNING',
    'log_trace': False,
    'log_checks': False,
    'max_group_order': 256,
    'max_perm_group': 100000,
    'max_brace_size': 4096,
    'ideal_count_max_size': 256,
    'probe_max_order': 9,
    'probe_max_families': 256,
    'iso_max_nodes': 200000,
    'commands': {},
}


def load_config(config_path=None):
    """Load configuration from a YAML file merged over the built-in defaults.

    Args:
        config_path: Path to the YAML file. ``None`` means the default
            ``config.yaml``, which may be absent.

    Returns:
        dict: The merged configuration.

    Raises:
        DescriptorError: If an explicitly named file is missing or the file
            does not hold a mapping.
    """
    config = copy.deepcopy(DEFAULTS)
    path = Path(config_path or DEFAULT_CONFIG_PATH)
    if not path.exists():
        if config_path is None:
            return config
        raise DescriptorError(f"Failed to load configuration: {path} not found")
    try:
        with open(path, 'r') as config_file:
            loaded = yaml.safe_load(config_file) or {}
    except (OSError, yaml.YAMLError) as e:
        raise DescriptorError(f"Failed to load configuration: {e}")
    if not isinstance(loaded, dict):
        raise DescriptorError("Failed to load configuration: top level must be a mapping")
    config.update(loaded)
    if not isinstance(config.get('commands') or {}, dict):
        raise DescriptorError("Failed to load configuration: 'commands' must be a mapping")
    config['commands'] = config.get('commands') or {}
    return config


def save_config(config, config_path=DEFAULT_CONFIG_PATH):
    """Save configuration to YAML file."""
    try:
        with open(config_path, 'w') as config_file:
            yaml.dump(config, config_file, default_flow_style=False)
    except OSError as e:
        raise DescriptorError(f"Failed to save configuration: {e}")
