# settings/__init__.py

from .loader import SETTINGS, get_setting, golden_path, load_data_file

__all__ = ["SETTINGS", "get_setting", "golden_path", "load_data_file"]
