"""Pseudospectral laboratory for generalized Benjamin-Ono equations.

Thin numpy-facing wrapper around the compiled extension. Installed wheels
carry the extension inside this package; development builds leave it on the
PYTHONPATH next to the CMake build tree.
"""

try:
    from gbo._gbo import *  # noqa: F401,F403
    from gbo._gbo import __doc__ as _core_doc  # noqa: F401
except ImportError:  # pragma: no cover - build-tree layout
    from _gbo import *  # noqa: F401,F403
    from _gbo import __doc__ as _core_doc  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
