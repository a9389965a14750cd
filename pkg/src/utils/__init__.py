"""Utility modules"""
from .cache import Cache
from .logger import setup_logger
from .config import ConfigLoader, ConfigError

__all__ = ['ConfigLoader', 'ConfigError', 'Cache', 'setup_logger']
