"""Wires the repositories and domain services into one system object."""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Optional

from . import analytics
from .assessment import AssessmentService
from .casebase import CaseBase
from .feedback import FeedbackService
from .lms import DEFAULT_PASS_THRESHOLD, EnrollmentService
from .placement import PlacementService
from .profiles import ProfileRegistry
from .storage import RepositorySet


class PlacementSystem:
    """Everything behind the API: storage plus the per-module services."""

    def __init__(
        self,
        data_dir: str | Path,
        pass_threshold: float = DEFAULT_PASS_THRESHOLD,
        default_k: int = 5,
        fsync: bool = True,
    ) -> None:
        self.repos = RepositorySet(data_dir, fsync=fsync)
        self.profiles = ProfileRegistry(self.repos)
        self.assessment = AssessmentService(self.repos)
        self.placement = PlacementService(self.repos)
        self.casebase = CaseBase(self.repos)
        self.enrollments = EnrollmentService(self.repos, self.casebase, pass_threshold=pass_threshold)
        self.feedback = FeedbackService(self.repos)
        self.default_k = default_k

    def cohort_stats(self, dimension: str = "medium_of_instruction", filters: Optional[Mapping[str, str]] = None) -> dict:
        return analytics.compute_cohort_stats(self.repos, dimension=dimension, filters=filters)

    def similar_cases_for_student(self, student_id: str, k: Optional[int] = None) -> list:
        _, cultural = self.profiles.get_student(student_id)
        return self.casebase.similar_cases(cultural, k if k is not None else self.default_k)
