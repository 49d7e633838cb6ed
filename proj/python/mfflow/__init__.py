"""Exact mean-field flow pipelines: fixed point, expansion, resummation."""

try:
    from ._mfflow import *  # noqa: F401,F403
    from ._mfflow import __version__  # noqa: F401
except ImportError:  # development tree: extension built next to the sources
    from _mfflow import *  # noqa: F401,F403
    from _mfflow import __version__  # noqa: F401
