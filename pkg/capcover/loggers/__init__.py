"""Global logger `covlogger` in the spirit of loguru.

Examples
--------
>>> from capcover.loggers import covlogger, ConsoleLogger
>>> covlogger.add(ConsoleLogger())
0

Notes
-----
Global objects behaviour could differ under parallel usage because of platform dependent process start.
Logging from joblib workers is visible only when new processes are started with ``fork``.
"""
from capcover.loggers.base import BaseLogger
from capcover.loggers.base import _Logger
from capcover.loggers.console_logger import ConsoleLogger

covlogger = _Logger()
