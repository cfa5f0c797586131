"""Question bank and the four-section aptitude test.

Questions are four-option single-correct items worth one point each. New and
edited questions sit in ``draft`` until a reviewer approves them; only
approved questions can be served. A test session walks the fixed section
order english -> mathematical_reasoning -> computer -> intelligence_quotient,
serving 10 questions per section drawn by a seeded uniform sample without
replacement. Scoring sums the four section scores into a total out of 40 and
a percentage (total / 40 * 100).

Correct answers never leave this module through any student-facing call:
session views and question views expose prompts and options only.
"""

from __future__ import annotations

import json
import random
import threading
import uuid
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    AlreadyAnswered,
    AlreadyApproved,
    InsufficientQuestions,
    InUse,
    MalformedAnswers,
    NotFound,
    NotSubmitted,
    OutOfOrder,
    SessionAlreadyOpen,
    ValidationError,
)
from .storage import RepositorySet


class Section(str, Enum):
    ENGLISH = "english"
    MATHEMATICAL_REASONING = "mathematical_reasoning"
    COMPUTER = "computer"
    INTELLIGENCE_QUOTIENT = "intelligence_quotient"


SECTION_ORDER: Tuple[Section, ...] = (
    Section.ENGLISH,
    Section.MATHEMATICAL_REASONING,
    Section.COMPUTER,
    Section.INTELLIGENCE_QUOTIENT,
)

QUESTIONS_PER_SECTION = 10
OPTIONS_PER_QUESTION = 4
POINTS_PER_QUESTION = 1
MAX_TOTAL = QUESTIONS_PER_SECTION * len(SECTION_ORDER) * POINTS_PER_QUESTION


class QuestionStatus(str, Enum):
    DRAFT = "draft"
    APPROVED = "approved"


@dataclass(frozen=True)
class Question:
    question_id: str
    section: Section
    prompt: str
    options: Tuple[str, ...]
    correct_option: int
    status: QuestionStatus = QuestionStatus.DRAFT
    points: int = POINTS_PER_QUESTION

    def to_record(self) -> dict:
        return {
            "question_id": self.question_id,
            "section": self.section.value,
            "prompt": self.prompt,
            "options": list(self.options),
            "correct_option": self.correct_option,
            "status": self.status.value,
            "points": self.points,
        }

    def public_view(self) -> dict:
        """Wire form with the answer key stripped."""
        return {
            "question_id": self.question_id,
            "section": self.section.value,
            "prompt": self.prompt,
            "options": list(self.options),
            "status": self.status.value,
            "points": self.points,
        }

    @staticmethod
    def from_record(record: dict) -> "Question":
        return Question(
            question_id=record["question_id"],
            section=Section(record["section"]),
            prompt=record["prompt"],
            options=tuple(record["options"]),
            correct_option=record["correct_option"],
            status=QuestionStatus(record["status"]),
            points=record.get("points", POINTS_PER_QUESTION),
        )


@dataclass(frozen=True)
class TestScore:
    s_english: int
    s_math_reasoning: int
    s_computer: int
    s_iq: int

    @property
    def total(self) -> int:
        return self.s_english + self.s_math_reasoning + self.s_computer + self.s_iq

    @property
    def percentage(self) -> float:
        # 100 / MAX_TOTAL is an exact binary value (2.5), so the result is
        # exactly proportional to the integer total
        return self.total * (100.0 / MAX_TOTAL)

    def to_record(self) -> dict:
        return {
            "s_english": self.s_english,
            "s_math_reasoning": self.s_math_reasoning,
            "s_computer": self.s_computer,
            "s_iq": self.s_iq,
            "total": self.total,
            "percentage": self.percentage,
        }


class SessionState(str, Enum):
    IN_PROGRESS = "in_progress"
    SUBMITTED = "submitted"
    SCORED = "scored"


def parse_question_payload(payload: dict) -> dict:
    """Validate a question payload, reporting the first failing invariant."""
    if not isinstance(payload, dict):
        raise ValidationError("question", "question must be an object")
    section_value = payload.get("section")
    if section_value is None:
        raise ValidationError("section")
    try:
        section = Section(section_value)
    except ValueError:
        allowed = ", ".join(s.value for s in Section)
        raise ValidationError("section", f"section must be one of: {allowed}")
    prompt = payload.get("prompt")
    if not isinstance(prompt, str) or not prompt.strip():
        raise ValidationError("prompt", "prompt must be non-empty text")
    options = payload.get("options")
    if not isinstance(options, list) or len(options) != OPTIONS_PER_QUESTION:
        raise ValidationError("options", f"exactly {OPTIONS_PER_QUESTION} options are required")
    if any(not isinstance(o, str) or not o.strip() for o in options):
        raise ValidationError("options", "options must all be non-empty text")
    if len(set(options)) != OPTIONS_PER_QUESTION:
        raise ValidationError("options", "options must be pairwise distinct")
    correct = payload.get("correct_option")
    if not isinstance(correct, int) or isinstance(correct, bool) or not 0 <= correct < OPTIONS_PER_QUESTION:
        raise ValidationError("correct_option", f"correct_option must be an index 0..{OPTIONS_PER_QUESTION - 1}")
    if "points" in payload and payload["points"] != POINTS_PER_QUESTION:
        raise ValidationError("points", f"every question is worth {POINTS_PER_QUESTION} point")
    return {"section": section, "prompt": prompt, "options": tuple(options), "correct_option": correct}


class AssessmentService:
    """Question bank CRUD plus the session state machine."""

    def __init__(self, repos: RepositorySet) -> None:
        self._repos = repos
        self._lock = threading.Lock()

    # --- question bank ---

    def add_question(self, payload: dict) -> dict:
        parsed = parse_question_payload(payload)
        question = Question(question_id="q-" + uuid.uuid4().hex[:12], status=QuestionStatus.DRAFT, **parsed)
        self._repos.questions.put(question.question_id, question.to_record())
        return question.to_record()

    def get_question(self, question_id: str) -> dict:
        return self._repos.questions.get(question_id)

    def list_questions(self, section: Optional[str] = None, status: Optional[str] = None) -> List[dict]:
        records = self._repos.questions.scan()
        if section is not None:
            try:
                section = Section(section).value
            except ValueError:
                raise ValidationError("section")
            records = [r for r in records if r["section"] == section]
        if status is not None:
            try:
                status = QuestionStatus(status).value
            except ValueError:
                raise ValidationError("status")
            records = [r for r in records if r["status"] == status]
        return records

    def approve_question(self, question_id: str) -> dict:
        with self._lock:
            record = self._repos.questions.get(question_id)
            if record["status"] == QuestionStatus.APPROVED.value:
                raise AlreadyApproved(f"question {question_id} is already approved")
            record["status"] = QuestionStatus.APPROVED.value
            self._repos.questions.put(question_id, record)
        return record

    def update_question(self, question_id: str, payload: dict) -> dict:
        """Replace the question content; edits go back through review."""
        parsed = parse_question_payload(payload)
        with self._lock:
            if question_id not in self._repos.questions:
                raise NotFound(f"no question {question_id}")
            question = Question(question_id=question_id, status=QuestionStatus.DRAFT, **parsed)
            self._repos.questions.put(question_id, question.to_record())
        return question.to_record()

    def delete_question(self, question_id: str) -> None:
        with self._lock:
            if question_id not in self._repos.questions:
                raise NotFound(f"no question {question_id}")
            if self._question_in_open_session(question_id):
                raise InUse(f"question {question_id} is serving an open test session")
            self._repos.questions.delete(question_id)

    def _question_in_open_session(self, question_id: str) -> bool:
        def serving(session: dict) -> bool:
            if session["state"] != SessionState.IN_PROGRESS.value:
                return False
            return any(question_id in served for served in session["served_questions"].values())

        return self._repos.sessions.any_match(serving)

    def approved_pool(self, section: Section) -> List[str]:
        return [
            r["question_id"]
            for r in self._repos.questions.scan()
            if r["section"] == section.value and r["status"] == QuestionStatus.APPROVED.value
        ]

    # --- test sessions ---

    def start_test(self, student_id: str, seed: int) -> dict:
        if student_id not in self._repos.personal:
            raise NotFound(f"student {student_id} is not registered")
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise ValidationError("seed", "seed must be an integer")
        with self._lock:
            open_session = self._repos.sessions.any_match(
                lambda s: s["student_id"] == student_id and s["state"] == SessionState.IN_PROGRESS.value
            )
            if open_session:
                raise SessionAlreadyOpen(f"student {student_id} already has an open session")
            pools: Dict[Section, List[str]] = {}
            for section in SECTION_ORDER:
                pool = self.approved_pool(section)
                if len(pool) < QUESTIONS_PER_SECTION:
                    raise InsufficientQuestions(section.value, len(pool), QUESTIONS_PER_SECTION)
                pools[section] = pool
            rng = random.Random(seed)
            served = {
                section.value: rng.sample(pools[section], QUESTIONS_PER_SECTION)
                for section in SECTION_ORDER
            }
            record = {
                "session_id": "ts-" + uuid.uuid4().hex[:12],
                "student_id": student_id,
                "state": SessionState.IN_PROGRESS.value,
                "current_section": SECTION_ORDER[0].value,
                "section_order": [s.value for s in SECTION_ORDER],
                "served_questions": served,
                "answers": {},
                "section_scores": {},
                "seed": seed,
            }
            self._repos.sessions.put(record["session_id"], record)
        return record

    def get_session(self, session_id: str) -> dict:
        return self._repos.sessions.get(session_id)

    def current_section_view(self, session_id: str) -> dict:
        """Student-facing view of the section to answer next."""
        session = self._repos.sessions.get(session_id)
        completed = len(session["answers"])
        view = {
            "session_id": session_id,
            "state": session["state"],
            "current_section": session["current_section"],
            "progress": {"sections_completed": completed, "sections_total": len(SECTION_ORDER)},
            "questions": [],
        }
        if session["state"] == SessionState.IN_PROGRESS.value:
            section = session["current_section"]
            for qid in session["served_questions"][section]:
                question = Question.from_record(self._repos.questions.get(qid))
                view["questions"].append(
                    {"question_id": qid, "prompt": question.prompt, "options": list(question.options)}
                )
        return view

    def submit_section(self, session_id: str, section: Section | str, answers: Sequence[int]) -> dict:
        try:
            section = Section(section)
        except ValueError:
            raise ValidationError("section")
        with self._lock:
            session = self._repos.sessions.get(session_id)
            if section.value in session["answers"]:
                raise AlreadyAnswered(f"section {section.value} was already submitted")
            if session["state"] != SessionState.IN_PROGRESS.value:
                raise AlreadyAnswered(f"session {session_id} is already {session['state']}")
            if session["current_section"] != section.value:
                raise OutOfOrder(
                    f"current section is {session['current_section']}, not {section.value}"
                )
            if (
                not isinstance(answers, (list, tuple))
                or len(answers) != QUESTIONS_PER_SECTION
                or any(
                    not isinstance(a, int) or isinstance(a, bool) or not 0 <= a < OPTIONS_PER_QUESTION
                    for a in answers
                )
            ):
                raise MalformedAnswers(
                    f"answers must be {QUESTIONS_PER_SECTION} option indices in 0..{OPTIONS_PER_QUESTION - 1}"
                )
            served = session["served_questions"][section.value]
            score = 0
            for qid, answer in zip(served, answers):
                question = self._repos.questions.get(qid)
                if answer == question["correct_option"]:
                    score += question.get("points", POINTS_PER_QUESTION)
            session["answers"][section.value] = list(answers)
            session["section_scores"][section.value] = score
            order = [Section(s) for s in session["section_order"]]
            position = order.index(section)
            if position + 1 < len(order):
                session["current_section"] = order[position + 1].value
            else:
                session["current_section"] = None
                session["state"] = SessionState.SUBMITTED.value
            self._repos.sessions.put(session_id, session)
            return {
                "session_id": session_id,
                "section": section.value,
                "section_score": score,
                "state": session["state"],
                "current_section": session["current_section"],
            }

    def score_test(self, session_id: str) -> dict:
        with self._lock:
            session = self._repos.sessions.get(session_id)
            if session["state"] != SessionState.SUBMITTED.value:
                raise NotSubmitted(f"session {session_id} is {session['state']}, not submitted")
            scores = session["section_scores"]
            test_score = TestScore(
                s_english=scores[Section.ENGLISH.value],
                s_math_reasoning=scores[Section.MATHEMATICAL_REASONING.value],
                s_computer=scores[Section.COMPUTER.value],
                s_iq=scores[Section.INTELLIGENCE_QUOTIENT.value],
            )
            record = {
                "session_id": session_id,
                "student_id": session["student_id"],
                **test_score.to_record(),
            }
            self._repos.scores.put(session_id, record)
            session["state"] = SessionState.SCORED.value
            self._repos.sessions.put(session_id, session)
        return record

    # --- bulk import ---

    def import_questions(self, lines: Sequence[str]) -> List[dict]:
        """Import line-delimited question records; they enter as drafts.

        Each line is a JSON object with exactly the fields
        {section, prompt, options, correct_option}.
        """
        created: List[dict] = []
        allowed = {"section", "prompt", "options", "correct_option"}
        for line_no, raw in enumerate(lines, start=1):
            raw = raw.strip()
            if not raw:
                continue
            try:
                payload = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise ValidationError("line", f"line {line_no}: not valid JSON ({exc})")
            if not isinstance(payload, dict) or set(payload) != allowed:
                raise ValidationError(
                    "line", f"line {line_no}: fields must be exactly {sorted(allowed)}"
                )
            created.append(self.add_question(payload))
        return created
