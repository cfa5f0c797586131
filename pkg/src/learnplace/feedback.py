"""Post-pass feedback collection.

Only students whose enrollment reached passed_course may leave feedback, at
most once per passing attempt. Records go to the dedicated feedback
repository for later human review.
"""

from __future__ import annotations

import threading
from datetime import datetime, timezone

from .errors import DuplicateFeedback, NotPassed, ValidationError
from .lms import EnrollmentStatus
from .storage import RepositorySet

MAX_COMMENT_LENGTH = 2000


class FeedbackService:
    def __init__(self, repos: RepositorySet) -> None:
        self._repos = repos
        self._lock = threading.Lock()

    def submit_feedback(self, student_id: str, rating: int, comments: str = "") -> dict:
        if not isinstance(rating, int) or isinstance(rating, bool) or not 1 <= rating <= 5:
            raise ValidationError("rating", "rating must be an integer in 1..5")
        if not isinstance(comments, str):
            raise ValidationError("comments", "comments must be text")
        if len(comments) > MAX_COMMENT_LENGTH:
            raise ValidationError("comments", f"comments must be at most {MAX_COMMENT_LENGTH} characters")
        with self._lock:
            if student_id not in self._repos.enrollments:
                raise NotPassed(f"student {student_id} has not passed a course")
            enrollment = self._repos.enrollments.get(student_id)
            if enrollment["status"] != EnrollmentStatus.PASSED_COURSE.value:
                raise NotPassed(
                    f"enrollment for {student_id} is {enrollment['status']}, not passed_course"
                )
            attempt = enrollment["attempt_number"]
            key = f"{student_id}:{attempt}"
            if key in self._repos.feedback:
                raise DuplicateFeedback(f"feedback already recorded for {student_id} attempt {attempt}")
            record = {
                "student_id": student_id,
                "attempt": attempt,
                "rating": rating,
                "comments": comments,
                "submitted_at": datetime.now(timezone.utc).isoformat(),
            }
            self._repos.feedback.put(key, record)
        return record
