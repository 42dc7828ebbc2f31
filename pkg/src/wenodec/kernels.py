"""Reconstruction kernel backend selection.

The compiled Cython module is preferred when importable; the vectorized numpy
implementation is the fallback. Set WENODEC_KERNELS=numpy or =cython to force
one (forcing cython raises if the extension is missing).
"""

import os

from . import _weno_numpy

_forced = os.environ.get("WENODEC_KERNELS", "").strip().lower()

if _forced == "numpy":
    _impl = _weno_numpy
else:
    try:
        from . import _weno_cy as _impl
    except ImportError:
        if _forced == "cython":
            raise ImportError(
                "WENODEC_KERNELS=cython but the compiled extension is not available"
            )
        _impl = _weno_numpy

BACKEND = _impl.BACKEND
reconstruct_faces_1d = _impl.reconstruct_faces_1d
reconstruct_faces_2d = _impl.reconstruct_faces_2d


def get_backend(name=None):
    """Kernel module by name ('numpy' | 'cython' | None for the active one)."""
    if name in (None, BACKEND):
        return _impl
    if name == "numpy":
        return _weno_numpy
    if name == "cython":
        from . import _weno_cy

        return _weno_cy
    raise ValueError("unknown kernel backend %r" % name)
