"""Exact self-dual kicked-Ising simulator and Fock-space analytics.

Thin re-export of the compiled module; the full API lives in ``_sdkim``.
"""

try:
    from ._sdkim import *  # noqa: F401,F403
    from ._sdkim import __version__  # noqa: F401
except ImportError:  # running against a build tree, module on sys.path
    from _sdkim import *  # noqa: F401,F403
    from _sdkim import __version__  # noqa: F401
