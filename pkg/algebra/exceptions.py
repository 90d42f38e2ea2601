"""
Exceptions shared by every app of the project.

All errors raised by the computations derive from DynamicsError so the job
runner can turn them into per-item error entries without catching unrelated
failures.
"""


class DynamicsError(Exception):
    """
    Base class for all computation errors.

    Attributes:
        kind (str): Short machine readable error kind used in reports.
    """

    kind = "error"

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def as_dict(self):
        payload = {"kind": self.kind, "message": self.message}
        payload.update({key: str(value) for key, value in self.details.items()})
        return payload


class ArgumentError(DynamicsError):
    """
    Raised for invalid parameters, including underdetermined systems.
    """

    kind = "argument"


class DomainError(DynamicsError):
    """
    Raised when a value lies outside the domain of an operation.
    """

    kind = "domain"


class PrecisionError(DynamicsError):
    """
    Raised when truncation or the working precision cannot support a result.
    """

    kind = "precision"


class UndecidedError(DynamicsError):
    """
    Raised when a question cannot be settled within the given budget.

    Attributes:
        obstruction (str): What prevented a decision.
    """

    kind = "undecided"

    def __init__(self, message, obstruction="", **details):
        super().__init__(message, obstruction=obstruction, **details)
        self.obstruction = obstruction


class PreconditionError(DynamicsError):
    """
    Raised when an input violates a precondition of the operation.
    """

    kind = "precondition"


class CertificateError(DynamicsError):
    """
    Raised when certificates contradict each other, which signals a bug.
    """

    kind = "certificate"
