"""Logging utilities"""
import logging
import os
import sys
from datetime import datetime
from typing import Optional, Union

from config.config import LOGGING_CONFIG

ROOT_LOGGER = 'src'


class Logger:
    def __init__(self, name=None, level: Union[int, str, None] = None, log_dir: Optional[str] = None):
        self.logger = logging.getLogger(name if name else ROOT_LOGGER)
        level = level if level is not None else LOGGING_CONFIG['level']
        if isinstance(level, str):
            level = logging.getLevelName(level.upper())
        self.logger.setLevel(level)

        # stdout carries JSON output, so handlers write to stderr
        if not self.logger.handlers:
            formatter = logging.Formatter(LOGGING_CONFIG['format'], datefmt=LOGGING_CONFIG['datefmt'])
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setFormatter(formatter)
            self.logger.addHandler(console_handler)

            log_dir = log_dir or LOGGING_CONFIG.get('log_dir')
            if log_dir:
                os.makedirs(log_dir, exist_ok=True)
                log_file = os.path.join(log_dir, f'chudnovsky_{datetime.now().strftime("%Y%m%d")}.log')
                file_handler = logging.FileHandler(log_file, encoding='utf-8')
                file_handler.setFormatter(formatter)
                self.logger.addHandler(file_handler)
        for handler in self.logger.handlers:
            handler.setLevel(level)

    def info(self, message):
        self.logger.info(message)

    def error(self, message):
        self.logger.error(message)

    def warning(self, message):
        self.logger.warning(message)

    def debug(self, message):
        self.logger.debug(message)


def setup_logger(name=None, level=None, log_dir: Optional[str] = None):
    """Setup and return a logger instance

    Args:
        name (str, optional): Logger name. Defaults to the package root, so
            every module logger under ``src`` shares the handlers.
        level (int or str, optional): Logging level. Defaults to
            LOGGING_CONFIG['level'].
        log_dir (str, optional): Directory for a dated log file. Defaults to
            LOGGING_CONFIG['log_dir']; no file is written when unset.

    Returns:
        Logger: Configured logger instance
    """
    return Logger(name, level, log_dir)
