# Colombeau generalized functions utilities
# CGF logging - mixin class for logging


# mixinCGFclass_logger(object)
# - mixin class for logging in long-running engine objects (CLI runner)
# - logger from utils_mystuff.initLogger, name derived from module file name of the class
# - log file in temporary directory
#
# initCGFlogger()
# - package logger of the command line, module loggers propagate to it


"""
Module provides the package logger and a mixin class to enable logging for engine classes.
"""


# ruff and mypy per file settings
#
# empty lines
# ruff: noqa: E302, E303
# naming conventions
# ruff: noqa: N801, N802, N803, N806, N815, N816, N999
#
# disable mypy errors
# mypy: disable-error-code = "union-attr"

# fmt: off



import functools
import inspect
import logging
import pathlib
import tempfile

import utils_mystuff as Utils



PACKAGE_LOGGER = "utils_Colombeau"



def logfile_path(loggername: str) -> pathlib.Path:
    """logfile_path - log file of a named logger in the temporary directory"""
    return pathlib.Path(tempfile.gettempdir()) / (loggername + ".txt")


def initCGFlogger(level: int = logging.INFO) -> logging.Logger:
    """
    initCGFlogger - package logger of the command line

    Args:
        level (int, optional): log level. Defaults to logging.INFO.

    Returns:
        logging.Logger: package logger
    """

    logger = Utils.initLogger(loggername=PACKAGE_LOGGER, filename=str(logfile_path(PACKAGE_LOGGER)))
    logger.setLevel(level)
    return logger



class mixinCGFclass_logger:
    """
    mixin class for logging

    - logger name derived from the module file of the class
    - logging of messages and of exceptions with traceback via logging.exception
    """

    @functools.lru_cache(5)
    def _basename_log(self, prefix: str = "", postfix: str = "") -> str:

        if prefix != "":
            prefix += "_"
        if postfix != "":
            postfix = "_" + postfix
        sourcefile = inspect.getsourcefile(self.__class__)
        modulename = pathlib.Path(sourcefile).stem if sourcefile is not None else self.__class__.__name__
        return (prefix + modulename + postfix).replace("__", "_")

    # private variables for logging
    _logger: logging.Logger | None = None

    def _initCGFlogger(self, level: int = logging.INFO):

        if self._logger is None:
            loggername = self._basename_log(prefix="Log")
            self._logger = Utils.initLogger(loggername=loggername, filename=str(logfile_path(loggername)))
            self._logger.setLevel(level)

    def _logMessage(self, text: str, level: int = logging.INFO):

        if self._logger is None:
            self._initCGFlogger()
        self._logger.log(level, text)

    def _logException(self, exception: Exception):

        if self._logger is None:
            self._initCGFlogger()
        self._logger.exception(exception)

    def _shutdownCGFlogger(self):

        if self._logger is not None:
            for handler in list(self._logger.handlers):
                handler.close()
                self._logger.removeHandler(handler)
            self._logger = None
