# Colombeau generalized functions utilities
# decorators and parallel mapping over epsilon grids

# decorators
# - call logger for engine methods (logcalls attribute or debug level of the instance logger)
# - same-grid guard for binary operations on nets
# parallel mapping
# - emap: ordered map over per-epsilon work items, serial or thread pool


"""
Module providing decorators for engine and net operations and the parallel epsilon map.
Decorators provided allow a call logging and a grid compatibility check of operands.
"""


# ruff and mypy per file settings
#
# empty lines
# ruff: noqa: E302, E303
# naming conventions
# ruff: noqa: N801, N802, N803, N806, N815, N816, N999
# others
# ruff: noqa: B009, SIM102

# fmt: off



from collections.abc import Callable, Iterable
from typing import TypeVar

import functools
import logging
from concurrent.futures import ThreadPoolExecutor

from utils_Colombeau.utils_CGF_classes import ErrorGrid



T = TypeVar("T")
R = TypeVar("R")



# decorator for logging - only if logging via attribute "logcalls" activated or logger in debug mode
def logcall(CGFcall):
    """
    logcall - decorator to activate logging of calls of an engine method.

    Call logging is activated by

    - set logcalls attribute in the instance or class
    - instance logger enabled for DEBUG
    """

    def calllogger(func, self, *args, **kwargs):

        args_repr = [repr(a) for a in args]
        kwargs_repr = [f"{k}={v!r}" for k, v in kwargs.items()]
        signature = ", ".join(args_repr + kwargs_repr)
        message = f"Calling {self.__class__.__name__}.{func.__name__}({signature})"
        logger = getattr(self, "_logger", None)
        if logger is None:
            logger = logging.getLogger(self.__class__.__module__)
        logger.info(message)

    @functools.wraps(CGFcall)
    def wrapper_logcall(self, *args, **kwargs):

        logged = False
        logger = getattr(self, "_logger", None)
        if logger is not None:
            if logger.isEnabledFor(logging.DEBUG):
                calllogger(CGFcall, self, *args, **kwargs)
                logged = True
        if not logged and hasattr(self, "logcalls"):
            if getattr(self, "logcalls"):
                calllogger(CGFcall, self, *args, **kwargs)
        return CGFcall(self, *args, **kwargs)

    return wrapper_logcall


# decorator for binary operations - both operands must live on the same grids
def samegrid(CGFop):
    """
    samegrid - decorator to reject binary operations on nets with different grids.

    The first two positional arguments are compared on their "grid" attribute
    and, where present, on their "eps" attribute.
    """

    @functools.wraps(CGFop)
    def wrapper_samegrid(u, v, *args, **kwargs):

        for attrib in ("grid", "eps"):
            if hasattr(u, attrib) and hasattr(v, attrib):
                if getattr(u, attrib) != getattr(v, attrib):
                    err_msg = f"Grid mismatch in '{CGFop.__name__}': operands differ in '{attrib}'."
                    raise ErrorGrid(err_msg)
        return CGFop(u, v, *args, **kwargs)

    return wrapper_samegrid



def emap(func: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> list[R]:
    """
    emap - ordered map of per-epsilon work items

    Results are returned in submission order, so output does not depend on the
    degree of parallelism. Threads are used since numpy and scipy release the
    GIL in FFT and array kernels.

    Args:
        func (Callable): work function
        items (Iterable): work items, typically epsilon indices
        jobs (int, optional): number of worker threads, serial if <= 1. Defaults to 1.

    Returns:
        list: results in item order
    """

    itemlist = list(items)
    if jobs <= 1 or len(itemlist) <= 1:
        return [func(item) for item in itemlist]
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(func, itemlist))

# alias
epsilon_map = emap

__all__ = ["emap", "epsilon_map", "logcall", "samegrid"]

