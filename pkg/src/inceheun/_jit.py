"""Optional numba acceleration.

Set ``INCEHEUN_DISABLE_NUMBA=1`` to run every kernel as plain Python.
"""
import os

_flag = os.environ.get("INCEHEUN_DISABLE_NUMBA", "").strip().lower()
DISABLED = _flag not in ("", "0", "false", "no")

_njit = None
if not DISABLED:
    try:
        from numba import njit as _njit
    except ImportError:  # pragma: no cover - numba is a hard dependency
        _njit = None

ENABLED = _njit is not None


def njit(func=None, **kwargs):
    """Compile ``func`` with numba when available, else return it unchanged."""
    if func is None:
        return lambda f: njit(f, **kwargs)
    if _njit is None:
        return func
    kwargs.setdefault("cache", True)
    return _njit(**kwargs)(func)
