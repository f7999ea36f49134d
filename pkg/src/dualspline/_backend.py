"""Select the compiled kernels when available, else the numpy fallback.

Set ``DUALSPLINE_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
kernels = _pykernels

if not os.environ.get("DUALSPLINE_PURE_PYTHON"):
    try:
        from . import _ckernels as kernels  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        pass

find_spans = kernels.find_spans
basis_nonzero = kernels.basis_nonzero
gram_accumulate = kernels.gram_accumulate
oslo_matrix = kernels.oslo_matrix
clenshaw_legendre = kernels.clenshaw_legendre

__all__ = [
    "BACKEND",
    "basis_nonzero",
    "clenshaw_legendre",
    "find_spans",
    "gram_accumulate",
    "kernels",
    "oslo_matrix",
]
