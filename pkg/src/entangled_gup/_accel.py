"""Numba switch.

Set ``ENTANGLED_GUP_DISABLE_NUMBA=1`` before import to force the pure-numpy
kernels. If numba is not importable the numpy path is used silently.
"""
import os

_FLAG = "ENTANGLED_GUP_DISABLE_NUMBA"


def _flag_set():
    return os.environ.get(_FLAG, "").strip().lower() not in ("", "0", "false", "no")


try:
    if _flag_set():
        raise ImportError("numba disabled by " + _FLAG)
    import numba
    from numba import njit, prange

    # the bundled TBB is too old and numba warns on every parallel launch
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        # bare @njit or @njit(cache=True, ...)
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrapper(func):
            return func

        return wrapper

    prange = range


USE_NUMBA = HAVE_NUMBA
