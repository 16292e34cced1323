"""Per-thread extended-precision contexts.

``mpmath.mp`` keeps its working precision in process-global state, so a
``workdps`` block in one thread changes the precision another thread is
computing with. Library code uses a private ``MPContext`` per thread instead.
"""

import contextlib
import threading

import mpmath

_local = threading.local()


def _context():
    ctx = getattr(_local, "ctx", None)
    if ctx is None:
        ctx = _local.ctx = mpmath.MPContext()
    return ctx


@contextlib.contextmanager
def mp_work(dps):
    """Yield this thread's context set to ``dps`` digits; the previous precision is restored on exit."""
    ctx = _context()
    old = ctx.dps
    ctx.dps = dps
    try:
        yield ctx
    finally:
        ctx.dps = old
