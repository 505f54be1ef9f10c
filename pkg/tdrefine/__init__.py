# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

__all__ = [
    "graph_manager",
    "decomp_manager",
    "separator_manager",
    "slick_manager",
    "division_manager",
    "weak_manager",
    "oracle_manager",
    "io_manager",
    "config_manager",
    "utils",
]

from . import utils
from . import config_manager
from . import graph_manager
from . import decomp_manager
from . import separator_manager
from . import slick_manager
from . import division_manager
from . import weak_manager
from . import oracle_manager
from . import io_manager

from .version import __version__


# Clean up top-level namespace--delete everything that isn't in __all__
# or is a magic attribute, and that isn't a submodule of this package
for varname in dir():
    if not ((varname.startswith('__') and varname.endswith('__')) or
            varname in __all__):
        del locals()[varname]
del(varname)
