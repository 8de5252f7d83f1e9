"""Exception hierarchy. Each error carries the CLI exit code it maps to."""

from __future__ import annotations


class SelectivityError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 1
    kind = "error"

    def __init__(self, message: str, *, prime: str | None = None):
        super().__init__(message)
        self.message = message
        self.prime = prime

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "exit_code": self.exit_code,
            "message": self.message,
            "prime": self.prime,
        }


class ValidationError(SelectivityError, ValueError):
    kind = "validation"
    exit_code = 1


class NotEmbeddableError(ValidationError):
    """K does not embed into the algebra at some place."""

    kind = "not_embeddable"


class UndeterminedPrimeError(SelectivityError):
    """The monogenic order is not certified maximal at a prime where it matters."""

    kind = "undetermined_prime"
    exit_code = 2


class OracleNotApplicable(SelectivityError):
    kind = "oracle_not_applicable"
    exit_code = 1


class OracleMismatchError(SelectivityError):
    kind = "oracle_mismatch"
    exit_code = 3
