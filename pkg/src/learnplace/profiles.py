"""Student registration: personal and cultural profile records.

Personal and cultural data live in separate repositories. The cultural
profile carries the factors the placement engine consumes
(medium_of_instruction, computer_knowledge, course_contents) plus
stored-only context (school_type, region, school_environment,
economic_background) that the case base uses for similarity.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from datetime import date
from enum import Enum
from typing import Tuple

from .errors import DuplicateStudent, NotFound, ValidationError
from .storage import RepositorySet


class Gender(str, Enum):
    MALE = "male"
    FEMALE = "female"
    OTHER = "other"


class SchoolType(str, Enum):
    GOVERNMENT = "government"
    PRIVATE = "private"


class MediumOfInstruction(str, Enum):
    """Teaching language of prior schooling (e.g. Urdu counts as local_language)."""

    LOCAL_LANGUAGE = "local_language"
    ENGLISH = "english"


class CourseContents(str, Enum):
    LOCAL = "local"
    INTERNATIONAL = "international"


class ComputerKnowledge(str, Enum):
    NONE = "none"
    BASIC = "basic"
    PROFICIENT = "proficient"


class EconomicBackground(str, Enum):
    LOW = "low"
    MIDDLE = "middle"
    HIGH = "high"


@dataclass(frozen=True)
class PersonalProfile:
    student_id: str
    full_name: str
    gender: Gender
    date_of_birth: str  # ISO date
    contact_email: str

    def to_record(self) -> dict:
        return {
            "student_id": self.student_id,
            "full_name": self.full_name,
            "gender": self.gender.value,
            "date_of_birth": self.date_of_birth,
            "contact_email": self.contact_email,
        }


@dataclass(frozen=True)
class CulturalProfile:
    student_id: str
    school_type: SchoolType
    medium_of_instruction: MediumOfInstruction
    course_contents: CourseContents
    computer_knowledge: ComputerKnowledge
    region: str
    school_environment: str
    economic_background: EconomicBackground

    def to_record(self) -> dict:
        return {
            "student_id": self.student_id,
            "school_type": self.school_type.value,
            "medium_of_instruction": self.medium_of_instruction.value,
            "course_contents": self.course_contents.value,
            "computer_knowledge": self.computer_knowledge.value,
            "region": self.region,
            "school_environment": self.school_environment,
            "economic_background": self.economic_background.value,
        }


def _require_text(payload: dict, field: str, allow_empty: bool = False) -> str:
    value = payload.get(field)
    if value is None:
        if allow_empty:
            return ""
        raise ValidationError(field)
    if not isinstance(value, str):
        raise ValidationError(field, f"{field} must be text")
    if not allow_empty and not value.strip():
        raise ValidationError(field, f"{field} must be non-empty")
    return value


def _require_enum(payload: dict, field: str, enum_cls):
    value = payload.get(field)
    if value is None:
        raise ValidationError(field)
    try:
        return enum_cls(value)
    except ValueError:
        allowed = ", ".join(v.value for v in enum_cls)
        raise ValidationError(field, f"{field} must be one of: {allowed}")


def parse_personal(payload: dict) -> PersonalProfile:
    """Validate a personal payload, reporting the first failing field."""
    if not isinstance(payload, dict):
        raise ValidationError("personal", "personal profile must be an object")
    student_id = _require_text(payload, "student_id")
    full_name = _require_text(payload, "full_name").strip()
    gender = _require_enum(payload, "gender", Gender)
    dob = _require_text(payload, "date_of_birth")
    try:
        date.fromisoformat(dob)
    except ValueError:
        raise ValidationError("date_of_birth", "date_of_birth must be an ISO date (YYYY-MM-DD)")
    email = _require_text(payload, "contact_email")
    if "@" not in email:
        raise ValidationError("contact_email", "contact_email must contain '@'")
    return PersonalProfile(student_id, full_name, gender, dob, email)


def parse_cultural(payload: dict) -> CulturalProfile:
    if not isinstance(payload, dict):
        raise ValidationError("cultural", "cultural profile must be an object")
    return CulturalProfile(
        student_id=_require_text(payload, "student_id"),
        school_type=_require_enum(payload, "school_type", SchoolType),
        medium_of_instruction=_require_enum(payload, "medium_of_instruction", MediumOfInstruction),
        course_contents=_require_enum(payload, "course_contents", CourseContents),
        computer_knowledge=_require_enum(payload, "computer_knowledge", ComputerKnowledge),
        region=_require_text(payload, "region", allow_empty=True),
        school_environment=_require_text(payload, "school_environment", allow_empty=True),
        economic_background=_require_enum(payload, "economic_background", EconomicBackground),
    )


class ProfileRegistry:
    """Registration operations over the personal and cultural repositories."""

    def __init__(self, repos: RepositorySet) -> None:
        self._repos = repos
        self._write_lock = threading.Lock()

    def register_student(self, personal_payload: dict, cultural_payload: dict) -> str:
        personal = parse_personal(personal_payload)
        cultural = parse_cultural(cultural_payload)
        if cultural.student_id != personal.student_id:
            raise ValidationError("student_id", "cultural student_id does not match personal student_id")
        with self._write_lock:
            if personal.student_id in self._repos.personal or personal.student_id in self._repos.cultural:
                raise DuplicateStudent(f"student {personal.student_id} is already registered")
            self._repos.personal.put(personal.student_id, personal.to_record())
            self._repos.cultural.put(cultural.student_id, cultural.to_record())
        return personal.student_id

    def get_student(self, student_id: str) -> Tuple[dict, dict]:
        try:
            personal = self._repos.personal.get(student_id)
            cultural = self._repos.cultural.get(student_id)
        except NotFound:
            raise NotFound(f"student {student_id} is not registered")
        return personal, cultural

    def require_registered(self, student_id: str) -> None:
        if student_id not in self._repos.personal:
            raise NotFound(f"student {student_id} is not registered")
