"""Backend selection for the dense prime-field polynomial kernel.

The compiled ``_fastpoly`` extension is preferred; the pure-Python
``_purepoly`` module is a drop-in replacement.  Set ``DRINHEIGHTS_PURE=1``
to force the Python backend (used by the benchmark for comparison).
"""

import os

if os.environ.get("DRINHEIGHTS_PURE"):
    from drinheights import _purepoly as _impl
else:
    try:
        from drinheights import _fastpoly as _impl  # type: ignore[attr-defined]
    except ImportError:
        from drinheights import _purepoly as _impl

BACKEND = _impl.BACKEND
poly_mul = _impl.poly_mul
poly_divmod = _impl.poly_divmod
poly_mod = _impl.poly_mod
poly_gcd = _impl.poly_gcd
poly_powmod = _impl.poly_powmod


def backend_name():
    """Name of the active kernel backend: "c" or "python"."""
    return BACKEND
