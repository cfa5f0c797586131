"""Shared error taxonomy.

Every failure the service can signal is a subclass of :class:`ServiceError`
with a stable machine-readable ``code`` (the class name) and the HTTP status
the REST layer uses for it. Extra context (offending field, deficient
section, ...) rides in ``details`` and is merged into error bodies.
"""

from __future__ import annotations

from typing import Any


class ServiceError(Exception):
    """Base error; ``code`` doubles as the wire-level error identifier."""

    code: str = "InternalError"
    http_status: int = 500

    def __init__(self, message: str = "", **details: Any) -> None:
        super().__init__(message or self.code)
        self.details = details

    def body(self) -> dict:
        payload: dict = {"code": self.code, "message": str(self)}
        payload.update(self.details)
        return payload


class NotFound(ServiceError):
    code = "NotFound"
    http_status = 404


class ValidationError(ServiceError):
    code = "ValidationError"
    http_status = 422

    def __init__(self, field: str, message: str = "") -> None:
        super().__init__(message or f"invalid or missing field: {field}", field=field)
        self.field = field


class DomainError(ServiceError):
    code = "DomainError"
    http_status = 422


# --- registration ---

class DuplicateStudent(ServiceError):
    code = "DuplicateStudent"
    http_status = 409


# --- question bank / test sessions ---

class AlreadyApproved(ServiceError):
    code = "AlreadyApproved"
    http_status = 409


class InUse(ServiceError):
    code = "InUse"
    http_status = 409


class InsufficientQuestions(ServiceError):
    code = "InsufficientQuestions"
    http_status = 409

    def __init__(self, section: str, available: int, required: int) -> None:
        super().__init__(
            f"section {section} has {available} approved questions, needs {required}",
            section=section, available=available, required=required,
        )
        self.section = section


class SessionAlreadyOpen(ServiceError):
    code = "SessionAlreadyOpen"
    http_status = 409


class OutOfOrder(ServiceError):
    code = "OutOfOrder"
    http_status = 409


class AlreadyAnswered(ServiceError):
    code = "AlreadyAnswered"
    http_status = 409


class MalformedAnswers(ServiceError):
    code = "MalformedAnswers"
    http_status = 400


class NotSubmitted(ServiceError):
    code = "NotSubmitted"
    http_status = 409


# --- placement ---

class NoScoredTest(ServiceError):
    code = "NoScoredTest"
    http_status = 409


# --- enrollment / retake loop ---

class NotPlaced(ServiceError):
    code = "NotPlaced"
    http_status = 409


class NotEligibleStudent(ServiceError):
    code = "NotEligibleStudent"
    http_status = 409


class AlreadyEnrolled(ServiceError):
    code = "AlreadyEnrolled"
    http_status = 409


class NotEnrolled(ServiceError):
    code = "NotEnrolled"
    http_status = 409


class CourseAlreadyConcluded(ServiceError):
    code = "CourseAlreadyConcluded"
    http_status = 409


class RetakeNotRequired(ServiceError):
    code = "RetakeNotRequired"
    http_status = 409


# --- case base / feedback ---

class NotPassed(ServiceError):
    code = "NotPassed"
    http_status = 409


class DuplicateCase(ServiceError):
    code = "DuplicateCase"
    http_status = 409


class DuplicateFeedback(ServiceError):
    code = "DuplicateFeedback"
    http_status = 409


# --- persistence ---

class CorruptRecord(ServiceError):
    code = "CorruptRecord"
    http_status = 500

    def __init__(self, store: str, line: int, message: str = "") -> None:
        super().__init__(
            message or f"corrupt record in store {store} at line {line}",
            store=store, line=line,
        )


class NonEmptyTarget(ServiceError):
    code = "NonEmptyTarget"
    http_status = 409

    def __init__(self, store: str) -> None:
        super().__init__(f"import target store {store} is not empty", store=store)


class CorruptSnapshot(ServiceError):
    code = "CorruptSnapshot"
    http_status = 500

    def __init__(self, store: str, message: str = "") -> None:
        super().__init__(message or f"corrupt snapshot while reading store {store}", store=store)
        self.store = store


# --- service / analytics / simulation ---

class PortInUse(ServiceError):
    code = "PortInUse"
    http_status = 500


class BadConfig(ServiceError):
    code = "BadConfig"
    http_status = 422

    def __init__(self, field: str, message: str = "") -> None:
        super().__init__(message or f"bad config value: {field}", field=field)
        self.field = field


class UnknownDimension(ServiceError):
    code = "UnknownDimension"
    http_status = 422


class BadDistribution(ServiceError):
    code = "BadDistribution"
    http_status = 422
