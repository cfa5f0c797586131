"""Case base: every passed student becomes an immutable retrievable case.

Retrieval ranks stored cases by a plain matching-attribute fraction over
five categorical profile attributes (each exact match adds 1/5), ties broken
by storage order (earlier first). Free-text attributes stay out of the
metric.
"""

from __future__ import annotations

import json
import threading
import uuid
from datetime import datetime, timezone
from typing import List, Tuple

from .errors import DomainError, DuplicateCase, NotPassed
from .lms import EnrollmentStatus
from .profiles import CulturalProfile
from .storage import RepositorySet

SIMILARITY_ATTRIBUTES: Tuple[str, ...] = (
    "medium_of_instruction",
    "computer_knowledge",
    "course_contents",
    "school_type",
    "economic_background",
)


def profile_similarity(a: dict | CulturalProfile, b: dict | CulturalProfile) -> float:
    """Fraction of the five categorical attributes on which both agree."""
    if isinstance(a, CulturalProfile):
        a = a.to_record()
    if isinstance(b, CulturalProfile):
        b = b.to_record()
    matches = sum(1 for attr in SIMILARITY_ATTRIBUTES if a.get(attr) == b.get(attr))
    return matches / len(SIMILARITY_ATTRIBUTES)


class CaseBase:
    def __init__(self, repos: RepositorySet) -> None:
        self._repos = repos
        self._lock = threading.Lock()

    def store_case(self, student_id: str) -> dict:
        """Snapshot a passed student; one case per (student, attempt)."""
        with self._lock:
            if student_id not in self._repos.enrollments:
                raise NotPassed(f"student {student_id} has not passed a course")
            enrollment = self._repos.enrollments.get(student_id)
            if enrollment["status"] != EnrollmentStatus.PASSED_COURSE.value:
                raise NotPassed(
                    f"enrollment for {student_id} is {enrollment['status']}, not passed_course"
                )
            attempt = enrollment["attempt_number"]
            pass_key = f"{student_id}:{attempt}"
            if pass_key in self._repos.cases:
                raise DuplicateCase(f"case already stored for {student_id} attempt {attempt}")
            cultural = self._repos.cultural.get(student_id)
            placement = self._repos.placements.get(student_id)
            record = {
                "case_id": "case-" + uuid.uuid4().hex[:12],
                "student_id": student_id,
                "cultural": cultural,
                "ra": placement["ra"],
                "aptitude_percentage": placement["percentage"],
                "assigned_level": placement["level"],
                "attempts_to_pass": attempt,
                "stored_at": datetime.now(timezone.utc).isoformat(),
            }
            self._repos.cases.put(pass_key, record)
        return record

    def similar_cases(self, cultural: dict | CulturalProfile, k: int) -> List[Tuple[dict, float]]:
        """Top-k stored cases by similarity to the given profile.

        Ordering is similarity descending; equal similarities keep storage
        order (earlier stored_at first), so repeated queries are identical.
        """
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise DomainError(f"k must be an integer >= 1, got {k!r}")
        if isinstance(cultural, CulturalProfile):
            cultural = cultural.to_record()
        scored = [
            (index, profile_similarity(cultural, case["cultural"]), case)
            for index, case in enumerate(self._repos.cases.scan())
        ]
        scored.sort(key=lambda item: (-item[1], item[0]))
        return [(case, similarity) for _, similarity, case in scored[:k]]

    def count(self) -> int:
        return self._repos.cases.count()

    def export_lines(self) -> List[str]:
        """Line-delimited JSON export of the full case set."""
        return [json.dumps(case, ensure_ascii=False) for case in self._repos.cases.scan()]
