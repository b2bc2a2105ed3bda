"""Select the defect-sum kernel at import.

The compiled extension is used when it was built; setting
``LENSETA_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

from . import _pykernels

py_defect_sum = _pykernels.defect_sum

try:
    if os.environ.get("LENSETA_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure Python requested")
    from ._cdefect import defect_sum as c_defect_sum
except ImportError:
    c_defect_sum = None

if c_defect_sum is not None:
    defect_sum = c_defect_sum
    BACKEND = "cython"
else:
    defect_sum = py_defect_sum
    BACKEND = "python"
