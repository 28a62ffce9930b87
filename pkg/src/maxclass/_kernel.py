"""Backend selection for the collection kernel.

The compiled extension is used when it imports; otherwise the pure-Python
collector is used.  Setting ``MAXCLASS_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _collect_py

PythonCollector = _collect_py.Collector

try:
    from ._collect_c import Collector as CythonCollector
except ImportError:  # extension not built
    CythonCollector = None

if CythonCollector is not None and not os.environ.get("MAXCLASS_PURE_PYTHON"):
    Collector = CythonCollector
else:
    Collector = PythonCollector

BACKEND = Collector.backend
