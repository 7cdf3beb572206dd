"""Hot-loop kernels with a compiled core and a pure-numpy fallback.

The compiled Cython extension (`dimscope.kernels._native`) is preferred;
when it is missing, or when DIMSCOPE_PURE_PYTHON=1 is set, the numpy
implementations in `_numpy` are used instead. Both backends implement the
same two entry points:

  pairwise_complete_spearman(values) -> rho matrix
  two_opt_pass(order, d, lock_first, lock_last) -> improvement

`benchmarks/bench_kernels.py` compares the two backends head to head.
"""

import os

from . import _numpy

BACKEND = "python"
_impl = _numpy

if os.environ.get("DIMSCOPE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _native  # compiled extension, absent on source-only installs

        _impl = _native
        BACKEND = "native"
    except ImportError:
        pass


def pairwise_complete_spearman(values):
    """Spearman rho over pairwise-complete rows for every column pair.

    `values` is an (m, n) float64 array with NaN marking missing cells.
    Returns an (n, n) matrix; entries are NaN where fewer than 2 complete
    rows exist or either column is constant on the complete set.
    """
    return _impl.pairwise_complete_spearman(values)


def two_opt_pass(order, d, lock_first=False, lock_last=False):
    """One 2-opt sweep over an open path; mutates `order`, returns gain."""
    return _impl.two_opt_pass(order, d, lock_first, lock_last)
