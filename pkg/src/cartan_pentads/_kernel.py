"""Select the elimination kernel at import time.

The compiled extension is used when it was built; otherwise the pure-Python
module takes over.  Set ``CARTAN_PENTADS_PURE=1`` to force the fallback.
"""

import os

from . import _rref_py

BACKEND = "python"
rref_int = _rref_py.rref_int

if os.environ.get("CARTAN_PENTADS_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _rref_ext
    except ImportError:  # extension not built
        pass
    else:
        rref_int = _rref_ext.rref_int
        BACKEND = "cython"
