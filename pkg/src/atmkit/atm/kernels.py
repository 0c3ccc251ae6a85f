"""Backend selection for the Gibbs sweep.

The compiled extension is used when it was built; otherwise the pure-Python
sweep. Setting ``ATMKIT_PURE_PYTHON=1`` forces the fallback. Both backends
give bit-identical chains for the same inputs.
"""

import os

from . import _sweep_py

try:
    from . import _sweep as _compiled
except ImportError:  # extension not built
    _compiled = None

if _compiled is not None and os.environ.get("ATMKIT_PURE_PYTHON", "") in ("", "0"):
    gibbs_sweep = _compiled.gibbs_sweep
    BACKEND = "cython"
else:
    gibbs_sweep = _sweep_py.gibbs_sweep
    BACKEND = "python"

python_sweep = _sweep_py.gibbs_sweep
compiled_sweep = None if _compiled is None else _compiled.gibbs_sweep
