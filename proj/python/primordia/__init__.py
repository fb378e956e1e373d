"""Poro-mechano-chemical patterning toolkit.

Python bindings over the C++ core: steady states, dispersion relations,
patterning conditions, growth kinematics, and the coupled 2-D simulator.
"""

from ._primordia import *  # noqa: F401,F403
from ._primordia import __version__  # noqa: F401
