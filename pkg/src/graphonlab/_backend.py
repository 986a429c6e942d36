"""Pick the compiled kernels when available, else the pure-Python twins.

Set ``GRAPHONLAB_PURE=1`` to force the fallback (used by the benchmark and
by the backend-parity tests).
"""

import os

from . import _fallback

BACKEND = "python"
kernels = _fallback

if os.environ.get("GRAPHONLAB_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as kernels  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        pass

cut_norm_search = kernels.cut_norm_search
hom_count = kernels.hom_count
line_graph_pairs = kernels.line_graph_pairs
pa_attach = kernels.pa_attach
