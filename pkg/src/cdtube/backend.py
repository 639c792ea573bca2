"""Backend selection for the hot numeric kernels.

The kernels in :mod:`cdtube._kernels` are plain numpy/scalar functions that
numba can compile unchanged.  The active backend is chosen once at import:

* ``CDTUBE_BACKEND=numba`` (default) compiles the kernels with ``@njit``,
  falling back silently to numpy if numba is unavailable.
* ``CDTUBE_BACKEND=numpy`` skips compilation and runs the same source in
  the interpreter.

Both paths produce the same results; ``benchmarks/bench_backends.py``
compares their speed.
"""

import os
import warnings

_VALID = ("numba", "numpy")


def requested_backend() -> str:
    """Backend named by the environment, before availability checks."""
    name = os.environ.get("CDTUBE_BACKEND", "numba").strip().lower()
    if name not in _VALID:
        warnings.warn(
            f"CDTUBE_BACKEND={name!r} is not one of {_VALID}; using 'numba'",
            stacklevel=2,
        )
        name = "numba"
    return name


def _resolve() -> tuple[str, object]:
    name = requested_backend()
    if name == "numba":
        try:
            import numba
        except ImportError:
            return "numpy", None
        return "numba", numba
    return "numpy", None


ACTIVE_BACKEND, _numba = _resolve()


def jit(func):
    """Compile ``func`` under the numba backend, return it unchanged otherwise."""
    if ACTIVE_BACKEND == "numba":
        return _numba.njit(cache=True)(func)
    return func
