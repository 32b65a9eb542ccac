"""
Utility modules
工具模块
"""

from .config_loader import ConfigLoader

__all__ = ["ConfigLoader"]
