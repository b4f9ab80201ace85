"""Exception hierarchy shared by all modules.

Two top-level families, matching the CLI exit-code contract:

* ``InvalidInputError`` -- malformed data (bad dimensions, unparsable
  values, objects that fail their own structural preconditions).
  CLI exit code 1.
* ``DomainError`` -- structurally valid input outside an operation's
  mathematical domain (rank-0 slope, out-of-range index, refused
  configurations).  CLI exit code 2.
"""

from __future__ import annotations


class InvalidInputError(ValueError):
    """Input data is malformed or fails a structural precondition."""


class DomainError(ValueError):
    """Input is well-formed but outside the operation's domain."""


class InvariantViolationError(DomainError):
    """An internal invariant failed, flagging inconsistent input data.

    Raised e.g. when an equal-slope pair with vanishing backward Euler
    pairing fails the -2-class equations its invariants force, or when a
    mutation breaks the unit-triangular Gram certificate.
    """


class ExcludedPairError(DomainError):
    """A rank-1 pair twisted by (e + K) on a degree-1 surface.

    Such pairs are refused by the blow-down pipeline: with K^2 = 1 the
    restriction-splitting control that the peel step relies on genuinely
    fails for them.
    """


class PipelineError(DomainError):
    """A pipeline stage failed; carries the stage tag and the cause."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
