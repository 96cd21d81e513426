from dotenv import load_dotenv
import yaml
import os
from typing import Optional, Dict, Any

# Load environment variables once at module level
load_dotenv()

DEFAULT_GOLDEN_DIR = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'mumford_tools', 'data'
)


def _load_settings() -> Dict[str, Any]:
    """Load settings from config file and apply environment overrides."""
    config_path = os.path.join(os.path.dirname(__file__), 'config.yaml')
    try:
        with open(config_path, 'r', encoding='utf-8') as file:
            config = yaml.safe_load(file) or {}
    except FileNotFoundError:
        raise FileNotFoundError(f"Config file not found: {config_path}")
    except yaml.YAMLError as e:
        raise ValueError(f"Error parsing config file: {e}")

    precision = os.getenv("MUMFORD_PRECISION")
    if precision:
        config.setdefault('field', {})['precision'] = int(precision)

    level = os.getenv("MUMFORD_LOG_LEVEL")
    if level:
        config.setdefault('logging', {})['level'] = level.upper()

    config['golden_dir'] = os.getenv("MUMFORD_GOLDEN_DIR", DEFAULT_GOLDEN_DIR)
    return config


# Load configurations at module level
SETTINGS = _load_settings()


def get_setting(section: str, key: Optional[str] = None, default: Any = None) -> Any:
    """
    Look up a configuration value.

    Args:
        section: Top-level section of config.yaml (e.g. "field")
        key: Key inside the section; None returns the whole section
        default: Value returned when the key is absent

    Returns:
        The configured value

    Raises:
        ValueError: If the section is unknown
    """
    if section not in SETTINGS:
        raise ValueError(f"Unknown settings section: {section}. Available: {list(SETTINGS.keys())}")

    value = SETTINGS[section]
    if key is None:
        return value
    return value.get(key, default)


def golden_path(filename: str) -> str:
    """Path of a shipped data file, honouring MUMFORD_GOLDEN_DIR."""
    return os.path.join(SETTINGS['golden_dir'], filename)


def load_data_file(filename: str) -> Dict[str, Any]:
    """Load one of the YAML data files from the golden directory."""
    path = golden_path(filename)
    try:
        with open(path, 'r', encoding='utf-8') as file:
            return yaml.safe_load(file) or {}
    except FileNotFoundError:
        raise FileNotFoundError(f"Data file not found: {path}")
    except yaml.YAMLError as e:
        raise ValueError(f"Error parsing data file {path}: {e}")
