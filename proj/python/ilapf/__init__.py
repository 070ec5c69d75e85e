"""Robust particle filtering with online outlier-range learning."""

try:
    from ._ilapf import *  # noqa: F401,F403  (installed package layout)
    from ._ilapf import __version__  # noqa: F401
except ImportError:  # pragma: no cover - in-tree builds put _ilapf on sys.path
    from _ilapf import *  # noqa: F401,F403
    from _ilapf import __version__  # noqa: F401
