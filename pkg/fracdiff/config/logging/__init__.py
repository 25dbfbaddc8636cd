

import logging
import os
from datetime import datetime
from typing import Union

import fracdiff


# 2026-10-19 17:34:59.428	fracdiff.config.logging      	INFO    	run_experiment		
# 	experiment: /tmp/fracdiff/noisy_exp_sin
# 	runs: 4
fmt = "%(asctime)s.%(msecs)03d\t%(name)-29s\t%(levelname)-8s\t%(funcName)s\t\t %(message)s"
datefmt = "%Y-%m-%d %H:%M:%S"

log_formatter = logging.Formatter(fmt, datefmt)

# <tempdir>/fracdiff/logs/2026-10-19 173459.txt
log_file_path = os.path.join(fracdiff._TEMPDIR, "logs", f'{datetime.now().strftime("%Y-%m-%d %H%M%S")}.txt')
os.makedirs(os.path.dirname(log_file_path), exist_ok=True)


def _level(value: Union[str, int, None], default: int):
    """ Resolves a level name such as "warning" or a number to a logging level, falling back to default for empty or unknown values. """
    if value is None or value == "":
        return default
    if isinstance(value, int) or str(value).isdigit():
        return int(value)
    level = logging.getLevelName(str(value).upper())
    return level if isinstance(level, int) else default


log = logging.getLogger(__name__)
log.setLevel(_level(os.environ.get("fracdiff_log_level"), logging.DEBUG))

# No file is created until the first record
log_handler = logging.FileHandler(log_file_path, mode="w", delay=True)
log_handler.setFormatter(log_formatter)
log.addHandler(log_handler)

# stderr, stdout carries command results
console = logging.StreamHandler()
console.setFormatter(log_formatter)
console.setLevel(_level(os.environ.get("fracdiff_console_level"), logging.INFO))
log.addHandler(console)


def set_console_level(level: Union[str, int]):
    """ Sets the console handler level, e.g. from the --log-level option of the command line interface.

    Raises:
        ValueError: If level is not a logging level name or number.
    """
    resolved = _level(level, -1)
    if resolved < 0:
        raise ValueError(f"unknown log level: {level}")
    console.setLevel(resolved)
