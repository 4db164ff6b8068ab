"""While-CF verification toolkit.

The heavy lifting lives in the compiled extension; this package re-exports
its surface.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__doc__ = _core_doc
