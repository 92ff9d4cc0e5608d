"""Private information retrieval with side information.

Thin wrapper over the compiled extension: databases, finite-field helpers,
capacity formulas, local scheme round trips, and privacy audits.
"""

from ._pirsi import *  # noqa: F401,F403
from ._pirsi import __version__  # noqa: F401
