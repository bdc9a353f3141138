# Colombeau generalized functions utilities
# CGF classes - exception hierarchy and abstract base class for reports


# exception hierarchy
# - ErrorCGF                 : base class for all errors raised by the package
# - ErrorGrid                : invalid epsilon or spatial grid, grid mismatch of operands
# - ErrorResolvability       : mollifier width below 4h at some epsilon
# - ErrorDomain              : coordinates, supports or parameters outside the admissible domain
# - ErrorNumericalGuard      : numerical guard triggered (missing zero crossing, vanishing values)
# - ErrorConfig              : configuration errors

# baseReportclass()
# - abstract class for report objects emitted as CSV tables
# - enforces report name and tabular representation in derived class

# further support modules:
# - utils_CGF_logging.py     / CGFlogging     : logger initialisation and mixin class for logging
# - utils_CGF_decorators.py  / CGFdecorators  : decorators and parallel epsilon mapping
# - utils_CGF_report.py      / CGFreport      : CSV and SVG emission


"""
Module provides the exception hierarchy and the abstract report base class of the package.
"""


# ruff and mypy per file settings
#
# empty lines
# ruff: noqa: E302, E303
# naming conventions
# ruff: noqa: N801, N802, N803, N806, N815, N816, N818, N999

# fmt: off



from abc import ABC, abstractmethod

import pandas as pd



class ErrorCGF(Exception):
    """
    ErrorCGF - base class for errors raised by the package
    """

class ErrorGrid(ErrorCGF):
    """
    ErrorGrid - invalid epsilon grid or spatial grid, or operands living on different grids
    """

class ErrorResolvability(ErrorCGF):
    """
    ErrorResolvability - mollifier width not resolved by the spatial grid
    """

class ErrorDomain(ErrorCGF):
    """
    ErrorDomain - coordinates, supports or parameters outside the admissible domain
    """

class ErrorNumericalGuard(ErrorCGF):
    """
    ErrorNumericalGuard - a numerical guard was triggered
    """

class ErrorConfig(ErrorCGF):
    """
    ErrorConfig - configuration cannot be parsed or validated
    """



class baseReportclass(ABC):
    """
    baseReportclass - abstract base class for reports

    Reports are emitted as CSV tables with provenance header lines. The
    abstract base class enforces the report name and the tabular
    representation to be defined in a derived class. All numbers in a
    report derived from finite epsilon grids are estimates.
    """

    # mandatory attributes from abstract class
    # class specific change mandatory

    @property
    @abstractmethod
    def _report_name_(self) -> str:
        raise NotImplementedError

    @abstractmethod
    def to_frame(self) -> pd.DataFrame:
        """
        to_frame - tabular representation of the report

        Returns:
            pd.DataFrame: one row per reported item
        """
        raise NotImplementedError

    # estimates flag, reported in every emitted table
    estimated: bool = True
