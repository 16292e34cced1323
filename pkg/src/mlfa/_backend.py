"""Kernel backend selection.

The compiled extension ``mlfa._kernels`` is preferred; the pure-Python
module ``mlfa._kernels_py`` is used when the extension is not built or when
the environment variable ``MLFA_PURE_PYTHON`` is set to a non-empty value.

Library code reads the active backend through :func:`kernels` and
:func:`integrand` at call time, so :func:`use` can switch it (benchmarks,
parity tests).
"""

import contextlib
import os

from scipy import LowLevelCallable

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_INTEGRANDS = ("lap_integrand", "lap_integrand_sq", "donsker_x_integrand")


def _table(mod):
    if mod is _kernels_py:
        return {name: getattr(mod, name) for name in _INTEGRANDS}
    # C integrands of signature double(int, double*) that quad calls directly
    return {name: LowLevelCallable.from_cython(mod, name) for name in _INTEGRANDS}


_state = {}


def available():
    """Names of the importable backends."""
    return ("compiled", "python") if _compiled is not None else ("python",)


def set_backend(name):
    if name == "compiled":
        if _compiled is None:
            raise ImportError("compiled kernels are not built; run `pip install -e .`")
        mod = _compiled
    elif name == "python":
        mod = _kernels_py
    else:
        raise ValueError(f"unknown backend {name!r}")
    _state["mod"] = mod
    _state["name"] = name
    _state["integrands"] = _table(mod)


def current():
    return _state["name"]


def kernels():
    return _state["mod"]


def integrand(name):
    return _state["integrands"][name]


@contextlib.contextmanager
def use(name):
    prev = _state["name"]
    set_backend(name)
    try:
        yield kernels()
    finally:
        set_backend(prev)


set_backend("python" if (_compiled is None or os.environ.get("MLFA_PURE_PYTHON")) else "compiled")
