"""Reference-value computation and the level decision table.

The placement engine has two pure parts:

* :func:`compute_reference_value` scores three cultural factors on small
  ordinal scales (medium of instruction 1..2, computer knowledge 1..3,
  course contents 1..2) and sums them into a reference value ``ra`` in 3..7.

* :func:`assign_level` runs a first-match rule chain over ``(ra, percentage)``
  in the order Skilled, Intermediate, Beginner, NotEligible. The band
  thresholds are listed below; two ``(ra, percentage)`` regions fall between
  bands (ra=5 with 75 <= % < 80 and ra=6 with 50 <= % < 60). Those take the
  level of the band immediately below them and are flagged ``gap_fill`` so
  callers can tell a backstop decision from a direct rule hit.

Comparisons are exact (``>=`` at lower bounds, ``<`` at upper bounds, no
rounding), so the table is total over {3..7} x [0, 100] and monotone in both
inputs.

:func:`PlacementService.place_student` joins the stored cultural profile
with the student's most recent scored test and persists the decision.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from typing import Dict, Optional

from .errors import DomainError, NoScoredTest, NotFound, ValidationError
from .profiles import ComputerKnowledge, CourseContents, CulturalProfile, MediumOfInstruction, parse_cultural
from .storage import RepositorySet


class Level(str, Enum):
    BEGINNER = "beginner"
    INTERMEDIATE = "intermediate"
    SKILLED = "skilled"
    NOT_ELIGIBLE = "not_eligible"


# NOT_ELIGIBLE < BEGINNER < INTERMEDIATE < SKILLED
LEVEL_ORDER: Dict[Level, int] = {
    Level.NOT_ELIGIBLE: 0,
    Level.BEGINNER: 1,
    Level.INTERMEDIATE: 2,
    Level.SKILLED: 3,
}


class RuleFired(str, Enum):
    """Which branch of the decision chain produced the level."""

    SKILLED_BAND = "skilled_band"
    INTERMEDIATE_BAND = "intermediate_band"
    BEGINNER_BAND = "beginner_band"
    NOT_ELIGIBLE = "not_eligible"
    GAP_FILL = "gap_fill"


MEDIUM_SCORES: Dict[MediumOfInstruction, int] = {
    MediumOfInstruction.LOCAL_LANGUAGE: 1,
    MediumOfInstruction.ENGLISH: 2,
}

COMPUTER_SCORES: Dict[ComputerKnowledge, int] = {
    ComputerKnowledge.NONE: 1,
    ComputerKnowledge.BASIC: 2,
    ComputerKnowledge.PROFICIENT: 3,
}

CONTENTS_SCORES: Dict[CourseContents, int] = {
    CourseContents.LOCAL: 1,
    CourseContents.INTERNATIONAL: 2,
}

RA_MIN = 3
RA_MAX = 7

# Per-ra minimum percentage for the Skilled band (upper bound is 100).
SKILLED_MIN: Dict[int, float] = {7: 60.0, 6: 70.0, 5: 80.0, 4: 85.0, 3: 90.0}

# Per-ra [low, high) percentage bands.
INTERMEDIATE_BAND: Dict[int, tuple] = {
    7: (50.0, 60.0),
    6: (60.0, 70.0),
    5: (60.0, 75.0),
    4: (70.0, 85.0),
    3: (80.0, 95.0),
}

BEGINNER_BAND: Dict[int, tuple] = {
    7: (40.0, 50.0),
    6: (40.0, 50.0),
    5: (40.0, 60.0),
    4: (40.0, 70.0),
    3: (40.0, 80.0),
}

NOT_ELIGIBLE_BELOW = 40.0


@dataclass(frozen=True)
class ReferenceValue:
    ra: int
    factor_scores: Dict[str, int]

    def to_record(self) -> dict:
        return {"ra": self.ra, "factor_scores": dict(self.factor_scores)}


@dataclass(frozen=True)
class PlacementDecision:
    level: Level
    ra: int
    percentage: float
    rule_fired: RuleFired

    def to_record(self) -> dict:
        return {
            "level": self.level.value,
            "ra": self.ra,
            "percentage": self.percentage,
            "rule_fired": self.rule_fired.value,
        }


def compute_reference_value(cultural: CulturalProfile | dict) -> ReferenceValue:
    """Score the three placement-relevant cultural factors and sum them."""
    if isinstance(cultural, dict):
        cultural = parse_cultural(cultural)
    for field in ("medium_of_instruction", "computer_knowledge", "course_contents"):
        if getattr(cultural, field, None) is None:
            raise ValidationError(field)
    scores = {
        "medium_of_instruction": MEDIUM_SCORES[cultural.medium_of_instruction],
        "computer_knowledge": COMPUTER_SCORES[cultural.computer_knowledge],
        "course_contents": CONTENTS_SCORES[cultural.course_contents],
    }
    return ReferenceValue(ra=sum(scores.values()), factor_scores=scores)


def _in_band(band: tuple, percentage: float) -> bool:
    low, high = band
    return low <= percentage < high


def _band_below(ra: int, percentage: float) -> Level:
    """Level of the band whose range sits immediately below ``percentage``."""
    bounds = [
        (NOT_ELIGIBLE_BELOW, Level.NOT_ELIGIBLE),
        (BEGINNER_BAND[ra][1], Level.BEGINNER),
        (INTERMEDIATE_BAND[ra][1], Level.INTERMEDIATE),
    ]
    candidates = [(high, level) for high, level in bounds if high <= percentage]
    if not candidates:
        raise DomainError(f"no band below ra={ra}, percentage={percentage}")
    return max(candidates, key=lambda item: item[0])[1]


def assign_level(ra: int, percentage: float) -> PlacementDecision:
    """Run the first-match decision chain for one ``(ra, percentage)`` pair."""
    if not isinstance(ra, int) or isinstance(ra, bool) or not RA_MIN <= ra <= RA_MAX:
        raise DomainError(f"ra must be an integer in [{RA_MIN}, {RA_MAX}], got {ra!r}")
    if not isinstance(percentage, (int, float)) or isinstance(percentage, bool) or not 0.0 <= percentage <= 100.0:
        raise DomainError(f"percentage must be in [0, 100], got {percentage!r}")
    percentage = float(percentage)

    if percentage >= SKILLED_MIN[ra]:
        return PlacementDecision(Level.SKILLED, ra, percentage, RuleFired.SKILLED_BAND)
    if _in_band(INTERMEDIATE_BAND[ra], percentage):
        return PlacementDecision(Level.INTERMEDIATE, ra, percentage, RuleFired.INTERMEDIATE_BAND)
    if _in_band(BEGINNER_BAND[ra], percentage):
        return PlacementDecision(Level.BEGINNER, ra, percentage, RuleFired.BEGINNER_BAND)
    if percentage < NOT_ELIGIBLE_BELOW:
        return PlacementDecision(Level.NOT_ELIGIBLE, ra, percentage, RuleFired.NOT_ELIGIBLE)
    return PlacementDecision(_band_below(ra, percentage), ra, percentage, RuleFired.GAP_FILL)


class PlacementService:
    """Applies the decision rules to stored profiles and test scores."""

    def __init__(self, repos: RepositorySet) -> None:
        self._repos = repos
        self._lock = threading.Lock()

    def latest_score(self, student_id: str) -> Optional[dict]:
        return self._repos.scores.last_match(lambda r: r.get("student_id") == student_id)

    def place_student(self, student_id: str) -> dict:
        with self._lock:
            if student_id not in self._repos.personal:
                raise NotFound(f"student {student_id} is not registered")
            score = self.latest_score(student_id)
            if score is None:
                raise NoScoredTest(f"student {student_id} has no scored aptitude test")
            cultural = self._repos.cultural.get(student_id)
            reference = compute_reference_value(cultural)
            decision = assign_level(reference.ra, score["percentage"])
            record = {
                "student_id": student_id,
                **decision.to_record(),
                "factor_scores": reference.factor_scores,
                "session_id": score["session_id"],
                "decided_at": datetime.now(timezone.utc).isoformat(),
            }
            self._repos.placements.put(student_id, record)
        return record
