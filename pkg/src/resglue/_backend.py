"""Kernel backend selection.

The compiled extension is preferred; the numpy fallback is used when the
extension was not built or when RESGLUE_BACKEND=python is set.
"""

import os

from . import _kernels_py

if os.environ.get("RESGLUE_BACKEND") == "python":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND = "cython" if _impl is not _kernels_py else "python"

assoc_witness = _impl.assoc_witness
residuation_witness = _impl.residuation_witness
bounds_witness = _impl.bounds_witness
eval_term_all = _impl.eval_term_all
close_mask = _impl.close_mask
closure_all_seeds = _impl.closure_all_seeds

OP_VAR = _kernels_py.OP_VAR
OP_CONST = _kernels_py.OP_CONST
OP_TABLE = _kernels_py.OP_TABLE
OP_POW = _kernels_py.OP_POW
