"""Compute the version number and store it in the `__version__` variable.

In a development checkout the version comes from hatch-vcs, otherwise from the
installed package metadata.
"""


# ruff and mypy per file settings
# others
# ruff: noqa: E302, PLC0415

# fmt: off


def _get_hatch_version() -> str | None:
    """Compute the most up-to-date version number in a development environment."""
    import contextlib
    import os
    from pathlib import Path

    try:
        from hatchling.metadata.core import ProjectMetadata
        from hatchling.plugin.manager import PluginManager
        from hatchling.utils.fs import locate_file
    except ImportError:
        # no hatchling, no development environment
        return None

    pyproject_toml = locate_file(__file__, "pyproject.toml")
    if pyproject_toml is None:
        return None
    root = Path(pyproject_toml).parent
    # PEP 517 needs the project root as cwd
    old_cwd = Path.cwd()
    os.chdir(root)
    try:
        with contextlib.suppress(Exception):
            metadata = ProjectMetadata(root=str(root), plugin_manager=PluginManager())
            return metadata.core.version or metadata.hatch.version.cached
        return None
    finally:
        os.chdir(old_cwd)


def _get_importlib_metadata_version() -> str:
    """Compute the version number of the installed distribution via importlib.metadata."""
    from importlib.metadata import PackageNotFoundError, version

    try:
        return version("utils-Colombeau")
    except PackageNotFoundError:
        return "0.0.0+unknown"


__version__ = _get_hatch_version() or _get_importlib_metadata_version()
