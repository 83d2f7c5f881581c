"""Backend selection for the hot kernels.

The compiled extension is used when it imports; ``THETA_LAB_PURE=1`` forces
the numpy/heapq fallback.  ``BACKEND`` names the active one.
"""

import os

from . import _kernels_py

BACKEND = "python"
cone_targets = _kernels_py.cone_targets
all_pairs = _kernels_py.all_pairs

if os.environ.get("THETA_LAB_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:  # extension not built
        pass
    else:
        BACKEND = "cython"
        cone_targets = _ckernels.cone_targets
        all_pairs = _ckernels.all_pairs
