# Colombeau generalized functions utilities

"""
Package with numerical utilities for nets of Colombeau generalized functions

Set of submodules contains:

- base module with the exception hierarchy and the report base class
- submodule with a logger mixin class and logger setup
- submodule with decorators for call logging and parallel maps over epsilon
- submodule for scales, generalized numbers, valuations and slow scale tests
- submodule for spatial grids, mollifiers and the embedding of distributions
- submodule for the numerical wave front set scan
- submodule for symbols of slow scale type and micro-ellipticity
- submodule for bicharacteristics of first order transport operators
- submodule for the transport problem with mollified Heaviside coefficient
- submodules for configuration, reports, acceptance checks and the command line
"""


# ruff and mypy per file settings
#
# empty lines
# ruff: noqa: E302, E303
# naming conventions
# ruff: noqa: N801, N802, N803, N806, N812, N813, N815, N816, N818, N999

# fmt: off



# version determination - latest import requirement for hatch-vcs
from utils_Colombeau.version import __version__

import utils_Colombeau.utils_CGF_classes as CGFclass
import utils_Colombeau.utils_CGF_logging as CGFlogging
import utils_Colombeau.utils_CGF_decorators as CGFdecorators
import utils_Colombeau.utils_CGF_scale as CGFscale
import utils_Colombeau.utils_CGF_genfun as CGFgenfun
import utils_Colombeau.utils_CGF_wavefront as CGFwavefront
import utils_Colombeau.utils_CGF_symbols as CGFsymbols
import utils_Colombeau.utils_CGF_bichar as CGFbichar
import utils_Colombeau.utils_CGF_transport as CGFtransport
# import utils_CGF_config, utils_CGF_report, utils_CGF_checks -> imported and used in utils_CGF_cli
