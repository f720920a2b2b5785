"""Exception types raised across the package."""

from __future__ import annotations


class MatroidError(ValueError):
    """Invalid input to a matroid operation (bad parameters, mismatched dims)."""


class DimensionCapError(MatroidError):
    """Requested dimension exceeds a supported cap."""


class ProofViolation(RuntimeError):
    """A case analysis that the structure theory guarantees has failed.

    Carries a serialized counterexample so the failing instance can be
    re-ingested by the CLI. This is never caught inside the library.
    """

    def __init__(self, message: str, counterexample: str = ""):
        super().__init__(message)
        self.counterexample = counterexample

    def __str__(self) -> str:
        base = super().__str__()
        if self.counterexample:
            return f"{base}\n--- counterexample ---\n{self.counterexample}"
        return base
