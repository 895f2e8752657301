"""Exception types shared across the package."""

from __future__ import annotations


class GraphError(ValueError):
    """Invalid graph data: loops, out-of-range endpoints, mismatched sizes."""


class ParseError(GraphError):
    """Malformed graph6 or edge-list input."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        self.detail = message
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)


class ResourceLimitError(RuntimeError):
    """An exact search was asked to run past a configured size limit."""

    def __init__(self, stage: str, limit_name: str, limit: int, value: int):
        self.stage = stage
        self.limit_name = limit_name
        self.limit = limit
        self.value = value
        super().__init__(f"{stage}: {limit_name}={value} exceeds limit {limit}")


class SearchTimeout(RuntimeError):
    """An exact search ran past its wall-clock deadline."""

    def __init__(self, stage: str):
        self.stage = stage
        super().__init__(f"{stage}: cutoff exceeded")


class NumericError(ArithmeticError):
    """Eigensolver non-convergence or a float/exact cross-check disagreement."""
