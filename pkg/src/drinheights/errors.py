"""Exception types shared across the package.

The CLI maps these to exit codes: input problems exit 2, iteration budget
exhaustion exits 3, property violations exit 1.
"""


class NonMonicError(ValueError):
    """Reduction/height theory requires a monic module; monicize() first."""


class MonicizeError(ValueError):
    """No conjugating gamma exists in K; carries the obstruction."""


class InseparableKernelError(ValueError):
    """phi_b has vanishing constant term, so its kernel is inseparable."""


class IsotrivialModuleError(ValueError):
    """The operation requires positive relative modular transcendence degree."""


class BudgetExhaustedError(RuntimeError):
    """The iteration budget ran out before a certificate was reached."""
