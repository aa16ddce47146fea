"""Kernel backend selection.

Imports the compiled Cython kernels when the extension was built, otherwise
falls back to the pure-Python twins.  Both expose the same functions with
identical semantics; ``backend_name()`` reports which one is active and
``DMSHAPE_PURE=1`` in the environment forces the fallback.
"""

import os

if os.environ.get("DMSHAPE_PURE") == "1":
    from . import pure as _impl
else:
    try:
        from . import _speed as _impl
    except ImportError:
        from . import pure as _impl

mc_counts = _impl.mc_counts
cc_unrank = _impl.cc_unrank
cc_rank = _impl.cc_rank
energy_totals = _impl.energy_totals
shells_upto = _impl.shells_upto
pair_capacity = _impl.pair_capacity
pair_list = _impl.pair_list
trellis_build = _impl.trellis_build
ess_unrank = _impl.ess_unrank
ess_rank = _impl.ess_rank


def backend_name():
    return _impl.BACKEND
