# tests for logging helpers and decorators


# ruff and mypy per file settings
#
# empty lines
# ruff: noqa: E302, E303
# naming conventions
# ruff: noqa: N801, N802, N803, N806, N812, N813, N815, N816, N818, N999


import logging
import time

import pytest

from utils_Colombeau.utils_CGF_classes import ErrorGrid
from utils_Colombeau.utils_CGF_decorators import emap, logcall, samegrid
from utils_Colombeau.utils_CGF_logging import PACKAGE_LOGGER, initCGFlogger, logfile_path, mixinCGFclass_logger
from utils_Colombeau.utils_CGF_scale import monomial



class Engine(mixinCGFclass_logger):

    def __init__(self, logcalls: bool = False):
        self.logcalls = logcalls
        self._initCGFlogger(logging.INFO)

    @logcall
    def run(self, value, factor=1):
        return value * factor


@pytest.fixture
def init_logger(mocker):
    return mocker.patch(
        "utils_Colombeau.utils_CGF_logging.Utils.initLogger",
        side_effect=lambda loggername, filename: logging.getLogger(loggername),
    )



def test_package_logger(init_logger):
    logger = initCGFlogger(logging.DEBUG)
    assert logger.name == PACKAGE_LOGGER
    assert logger.level == logging.DEBUG
    init_logger.assert_called_once_with(loggername=PACKAGE_LOGGER, filename=str(logfile_path(PACKAGE_LOGGER)))
    assert logging.getLogger("utils_Colombeau.utils_CGF_cli").parent is logger
    logger.setLevel(logging.NOTSET)


def test_mixin_logger(init_logger, caplog):
    engine = Engine()
    init_logger.assert_called_once_with(
        loggername="Log_test_logging_decorators", filename=str(logfile_path("Log_test_logging_decorators"))
    )
    assert engine._logger.name == "Log_test_logging_decorators"
    engine._initCGFlogger()
    assert init_logger.call_count == 1
    with caplog.at_level(logging.INFO, logger=engine._logger.name):
        engine._logMessage("hello engine", logging.WARNING)
        engine._logException(ValueError("broken engine"))
    assert "hello engine" in caplog.text
    assert "broken engine" in caplog.text
    engine._shutdownCGFlogger()
    assert engine._logger is None

def test_logcall(init_logger, caplog):
    quiet = Engine()
    with caplog.at_level(logging.INFO, logger=quiet._logger.name):
        assert quiet.run(2, factor=3) == 6
    assert "Calling" not in caplog.text
    quiet._shutdownCGFlogger()
    loud = Engine(logcalls=True)
    with caplog.at_level(logging.INFO, logger=loud._logger.name):
        assert loud.run(2, factor=3) == 6
    assert "Calling Engine.run(2, factor=3)" in caplog.text
    loud._shutdownCGFlogger()


def test_emap_order():

    def slow_square(k):
        time.sleep(0.01 * (5 - k))
        return k * k

    assert emap(slow_square, range(6), jobs=4) == [0, 1, 4, 9, 16, 25]
    assert emap(slow_square, range(6)) == emap(slow_square, range(6), jobs=3)
    assert emap(slow_square, []) == []


def test_samegrid(eps_grid, short_eps_grid):

    @samegrid
    def combine(u, v):
        return u.values + v.values

    assert combine(monomial(eps_grid, 1.0, 1.0), monomial(eps_grid, 2.0, 1.0)).shape == (21,)
    with pytest.raises(ErrorGrid):
        combine(monomial(eps_grid, 1.0, 1.0), monomial(short_eps_grid, 1.0, 1.0))
