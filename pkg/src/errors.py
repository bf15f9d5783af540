"""
@Description: Runtime guards shared by the solver, the oracle and the identity tools
@version:
@License: MIT
@Author: neolib maintainers
@Date: 2026-09-06 14:35:05
@LastEditors: neolib maintainers
@LastEditTime: 2026-10-07 15:55:25
"""


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive search is asked to go beyond its budget."""


class StabilizationError(RuntimeError):
    """Raised when powers of an implication fail to stabilize within the orbit-count guard."""
