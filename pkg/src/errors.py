"""
Exceptions shared by the toolkit modules
"""

from typing import Any, Optional


class InputError(ValueError):
    """Malformed or precondition-violating input"""


class CapacityError(RuntimeError):
    """An exhaustive search exceeded its configured cap"""

    def __init__(self, message: str, partial_count: int, report: Optional[Any] = None):
        super().__init__(message)
        self.partial_count = partial_count
        self.report = report


class ConstructionError(RuntimeError):
    """A generator produced an instance that fails its own certificate"""


class InvariantError(RuntimeError):
    """An internal invariant of a normalization procedure was violated"""


class ProvedClaimViolation(RuntimeError):
    """A proved theorem failed on some instance, which means an implementation bug"""

    def __init__(self, message: str, outcome: Any):
        super().__init__(message)
        self.outcome = outcome
