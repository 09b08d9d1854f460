import logging
import os
import sys
from typing import Optional, TextIO, Union

from colorama import Fore, Style

logger_initialized: dict = {}

LOG_FORMAT = ('%(asctime)s %(levelname)s [%(name)s.%(funcName)s:%(lineno)d] '
              '%(message)s')
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


class ColorfulFormatter(logging.Formatter):
    """Colors the level name of console records; file records stay plain."""

    COLORS = {
        'DEBUG': Fore.LIGHTBLACK_EX,
        'INFO': Fore.GREEN,
        'WARNING': Fore.YELLOW,
        'ERROR': Fore.RED,
        'CRITICAL': Fore.RED + Style.BRIGHT,
    }

    def format(self, record: logging.LogRecord) -> str:
        color = self.COLORS.get(record.levelname)
        if color is None:
            return super().format(record)
        plain = record.levelname
        record.levelname = f'{color}{plain}{Style.RESET_ALL}'
        try:
            return super().format(record)
        finally:
            record.levelname = plain


def _console_handler(stream: TextIO) -> logging.Handler:
    handler = logging.StreamHandler(stream)
    if getattr(stream, 'isatty', lambda: False)():
        handler.setFormatter(ColorfulFormatter(LOG_FORMAT, DATE_FORMAT))
    else:
        handler.setFormatter(logging.Formatter(LOG_FORMAT, DATE_FORMAT))
    return handler


def get_logger(name: str,
               log_file: Optional[str] = None,
               log_level: Union[int, str] = logging.INFO,
               file_mode: str = 'w') -> logging.Logger:
    """Initialize and get a logger by name.

    The first call for a name attaches a stderr handler (colored on a
    terminal) and, when ``log_file`` is given, a plain file handler. Later
    calls only update the level. Children of an initialized logger are
    returned untouched and propagate to it.

    Args:
        name (str): Logger name.
        log_file (str | None): Log file, written in addition to stderr.
        log_level (int | str): Level for the logger and its handlers.
        file_mode (str): Mode the log file is opened with. Defaults to 'w'.

    Returns:
        logging.Logger: The logger.
    """
    logger = logging.getLogger(name)
    if name in logger_initialized:
        logger.setLevel(log_level)
        for handler in logger.handlers:
            handler.setLevel(log_level)
        return logger
    for parent in logger_initialized:
        if name.startswith(parent + '.'):
            return logger

    # stdout is reserved for CSV output
    handlers = [_console_handler(sys.stderr)]
    if log_file is not None:
        file_handler = logging.FileHandler(log_file, file_mode)
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT, DATE_FORMAT))
        handlers.append(file_handler)
    for handler in handlers:
        handler.setLevel(log_level)
        logger.addHandler(handler)

    logger.setLevel(log_level)
    logger.propagate = False
    logger_initialized[name] = True
    return logger


def get_text_logger(name: str = 'ristoolkit',
                    log_file: Optional[str] = None,
                    log_level: Union[int, str] = logging.INFO) -> logging.Logger:
    """Package logger. Module loggers (``ristoolkit.solver...``) report
    through it."""
    return get_logger(name=name, log_file=log_file, log_level=log_level)


def get_outdir(path: str, *paths) -> str:
    """Create (if needed) and return ``path/*paths``."""
    outdir = os.path.join(path, *paths)
    os.makedirs(outdir, exist_ok=True)
    return outdir
