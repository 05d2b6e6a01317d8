"""Backend selection for the hot kernels.

The compiled extension ``vazhu._ckernels`` is used when it has been built
(``python setup.py build_ext --inplace``); otherwise the pure-Python
reference ``vazhu._pykernels`` is used.  Set ``VAZHU_PURE_PYTHON=1`` to
force the fallback.
"""
import os

from . import _pykernels

if os.environ.get("VAZHU_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND
reduce_vector = _impl.reduce_vector
heis_act = _impl.heis_act
vir_act = _impl.vir_act
