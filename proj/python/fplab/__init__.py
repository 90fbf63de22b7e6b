"""Prime-field sum-product laboratory: set algebra, spectra, and coverings."""

from fplab._core import *  # noqa: F401,F403
from fplab._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
