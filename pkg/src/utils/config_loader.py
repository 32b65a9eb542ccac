"""
Lab settings loader
实验室设置加载器
"""

import yaml
from pathlib import Path
from typing import Any, Dict, List

from loguru import logger


KNOWN_SECTIONS = ("logging", "quadrature", "growth", "audit", "reports")


class ConfigLoader:
    """YAML lab settings with dot-notation lookups"""

    def __init__(self, config_path: str = "config/config.yaml", required: bool = True):
        """
        Read the settings file

        Args:
            config_path: Path to config.yaml
            required: Raise when the file is missing; otherwise run on built-in defaults
        """
        self.config_path = Path(config_path)
        self.required = required
        self.config = self.load_config()

    def load_config(self) -> Dict[str, Any]:
        """
        Parse the settings file

        Returns:
            dict: Top-level sections; empty for an empty or optional missing file

        Raises:
            FileNotFoundError: If a required file is missing
            ValueError: If the document is not a mapping
        """
        if not self.config_path.exists():
            if self.required:
                raise FileNotFoundError(f"Settings file not found: {self.config_path}")
            logger.debug(f"no settings at {self.config_path}, using built-in defaults")
            return {}

        with open(self.config_path, 'r', encoding='utf-8') as f:
            settings = yaml.safe_load(f) or {}

        if not isinstance(settings, dict):
            raise ValueError(f"Settings file must hold a mapping of sections: {self.config_path}")
        for name in self.unknown_sections(settings):
            logger.warning(f"ignoring unknown settings section {name!r} in {self.config_path}")
        return settings

    @staticmethod
    def unknown_sections(settings: Dict[str, Any]) -> List[str]:
        return sorted(name for name in settings if name not in KNOWN_SECTIONS)

    @property
    def loaded(self) -> bool:
        return self.config_path.exists()

    def get(self, key: str, default: Any = None) -> Any:
        """Value at a dotted key such as "quadrature.m2_resolution", or default"""
        node: Any = self.config
        for part in key.split('.'):
            if not isinstance(node, dict) or part not in node:
                return default
            node = node[part]
        return node

    def get_section(self, section: str) -> Dict[str, Any]:
        """
        One settings section

        Args:
            section: Section name, e.g. "growth"

        Returns:
            dict: Section contents, empty when absent

        Raises:
            ValueError: If the section is present but not a mapping
        """
        value = self.config.get(section)
        if value is None:
            return {}
        if not isinstance(value, dict):
            raise ValueError(f"settings section {section!r} must be a mapping, got {type(value).__name__}")
        return value

    def reload(self) -> None:
        """Re-read the settings file"""
        self.config = self.load_config()
