"""Track routing and the course evaluation / retake loop.

Placed students (any level except not_eligible) are enrolled into the track
matching their level. Assignments and quizzes accumulate on the enrollment;
a final evaluation concludes the attempt: pass moves the enrollment to
passed_course and snapshots the student into the case base, fail parks it at
retake_required until ``retake`` opens the next attempt in the same track.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from typing import Dict

from .errors import (
    AlreadyEnrolled,
    CourseAlreadyConcluded,
    NotEligibleStudent,
    NotEnrolled,
    NotPlaced,
    RetakeNotRequired,
    ValidationError,
)
from .placement import Level
from .storage import RepositorySet

DEFAULT_PASS_THRESHOLD = 50.0


class Track(str, Enum):
    BEGINNER_TRACK = "beginner_track"
    INTERMEDIATE_TRACK = "intermediate_track"
    SKILLED_TRACK = "skilled_track"


TRACK_FOR_LEVEL: Dict[Level, Track] = {
    Level.BEGINNER: Track.BEGINNER_TRACK,
    Level.INTERMEDIATE: Track.INTERMEDIATE_TRACK,
    Level.SKILLED: Track.SKILLED_TRACK,
}


class EnrollmentStatus(str, Enum):
    ACTIVE = "active"
    PASSED_COURSE = "passed_course"
    RETAKE_REQUIRED = "retake_required"


class EvaluationKind(str, Enum):
    ASSIGNMENT = "assignment"
    QUIZ = "quiz"
    FINAL = "final"


@dataclass(frozen=True)
class EvaluationRecord:
    kind: EvaluationKind
    score_percentage: float
    passed: bool

    def to_record(self) -> dict:
        return {
            "kind": self.kind.value,
            "score_percentage": self.score_percentage,
            "passed": self.passed,
        }


class EnrollmentService:
    def __init__(self, repos: RepositorySet, casebase, pass_threshold: float = DEFAULT_PASS_THRESHOLD) -> None:
        self._repos = repos
        self._casebase = casebase
        self.pass_threshold = float(pass_threshold)
        self._lock = threading.Lock()

    def enroll(self, student_id: str) -> dict:
        with self._lock:
            if student_id not in self._repos.placements:
                raise NotPlaced(f"student {student_id} has no placement decision")
            placement = self._repos.placements.get(student_id)
            level = Level(placement["level"])
            if level == Level.NOT_ELIGIBLE:
                raise NotEligibleStudent(f"student {student_id} is not eligible for enrollment")
            if student_id in self._repos.enrollments:
                raise AlreadyEnrolled(f"student {student_id} already has an enrollment")
            record = {
                "student_id": student_id,
                "track": TRACK_FOR_LEVEL[level].value,
                "status": EnrollmentStatus.ACTIVE.value,
                "attempt_number": 1,
                "evaluations": [],
            }
            self._repos.enrollments.put(student_id, record)
        return record

    def get_enrollment(self, student_id: str) -> dict:
        if student_id not in self._repos.enrollments:
            raise NotEnrolled(f"student {student_id} is not enrolled")
        return self._repos.enrollments.get(student_id)

    def record_evaluation(self, student_id: str, kind: str, score_percentage: float) -> dict:
        try:
            kind = EvaluationKind(kind)
        except ValueError:
            raise ValidationError("kind", "kind must be one of: assignment, quiz, final")
        if (
            not isinstance(score_percentage, (int, float))
            or isinstance(score_percentage, bool)
            or not 0.0 <= float(score_percentage) <= 100.0
        ):
            raise ValidationError("score_percentage", "score_percentage must be in [0, 100]")
        score_percentage = float(score_percentage)
        with self._lock:
            enrollment = self.get_enrollment(student_id)
            if enrollment["status"] != EnrollmentStatus.ACTIVE.value:
                raise CourseAlreadyConcluded(
                    f"enrollment for {student_id} is {enrollment['status']}, not active"
                )
            evaluation = EvaluationRecord(
                kind=kind,
                score_percentage=score_percentage,
                passed=score_percentage >= self.pass_threshold,
            )
            enrollment["evaluations"].append(evaluation.to_record())
            if kind == EvaluationKind.FINAL:
                if evaluation.passed:
                    enrollment["status"] = EnrollmentStatus.PASSED_COURSE.value
                else:
                    enrollment["status"] = EnrollmentStatus.RETAKE_REQUIRED.value
            self._repos.enrollments.put(student_id, enrollment)
            if enrollment["status"] == EnrollmentStatus.PASSED_COURSE.value:
                self._casebase.store_case(student_id)
        return enrollment

    def retake(self, student_id: str) -> dict:
        with self._lock:
            enrollment = self.get_enrollment(student_id)
            if enrollment["status"] != EnrollmentStatus.RETAKE_REQUIRED.value:
                raise RetakeNotRequired(
                    f"enrollment for {student_id} is {enrollment['status']}, retake not required"
                )
            enrollment["status"] = EnrollmentStatus.ACTIVE.value
            enrollment["attempt_number"] += 1
            enrollment["evaluations"] = []
            self._repos.enrollments.put(student_id, enrollment)
        return enrollment
