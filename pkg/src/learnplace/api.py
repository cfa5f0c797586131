"""HTTP surface: JSON endpoints over the placement system.

Every error body is ``{"code": ..., "message": ..., ...details}`` where the
code comes from the shared error taxonomy. Client-side JSON shape problems
map to 400, domain validation to 422, missing resources to 404 and state
conflicts to 409.

Answer keys never appear in any response: question and session views are
serialized through the stripped public forms.
"""

from __future__ import annotations

import secrets
from typing import Optional

from fastapi import Body, FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .assessment import SECTION_ORDER, Question
from .core import PlacementSystem
from .errors import ServiceError
from .placement import compute_reference_value


def _session_view(record: dict) -> dict:
    return {
        "session_id": record["session_id"],
        "student_id": record["student_id"],
        "state": record["state"],
        "current_section": record["current_section"],
        "section_order": record["section_order"],
        "served_questions": record["served_questions"],
        "section_scores": record["section_scores"],
        "progress": {
            "sections_completed": len(record["answers"]),
            "sections_total": len(SECTION_ORDER),
        },
    }


def _question_view(record: dict) -> dict:
    return Question.from_record(record).public_view()


def create_app(system: PlacementSystem) -> FastAPI:
    app = FastAPI(title="learnplace", version="0.1.0")
    # the web UI is served from a separate origin; this is an unauthenticated prototype
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(ServiceError)
    async def service_error_handler(request: Request, exc: ServiceError) -> JSONResponse:
        return JSONResponse(status_code=exc.http_status, content=exc.body())

    @app.exception_handler(RequestValidationError)
    async def malformed_request_handler(request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"code": "MalformedRequest", "message": str(exc.errors()[:1])},
        )

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok"}

    # --- registration ---

    @app.post("/api/students", status_code=201)
    def register_student(payload: dict = Body(...)) -> dict:
        personal = payload.get("personal") or {}
        cultural = payload.get("cultural") or {}
        student_id = system.profiles.register_student(personal, cultural)
        reference = compute_reference_value(system.repos.cultural.get(student_id))
        return {"student_id": student_id, "reference_value": reference.to_record()}

    @app.get("/api/students/{student_id}")
    def get_student(student_id: str) -> dict:
        personal, cultural = system.profiles.get_student(student_id)
        return {"personal": personal, "cultural": cultural}

    # --- test sessions ---

    @app.post("/api/students/{student_id}/test-sessions", status_code=201)
    def start_test(student_id: str, payload: Optional[dict] = Body(None)) -> dict:
        seed = (payload or {}).get("seed")
        if seed is None:
            seed = secrets.randbits(32)
        record = system.assessment.start_test(student_id, seed)
        return _session_view(record)

    @app.get("/api/test-sessions/{session_id}/current-section")
    def current_section(session_id: str) -> dict:
        return system.assessment.current_section_view(session_id)

    @app.post("/api/test-sessions/{session_id}/sections/{section}/answers")
    def submit_answers(session_id: str, section: str, payload: dict = Body(...)) -> dict:
        return system.assessment.submit_section(session_id, section, payload.get("answers"))

    @app.post("/api/test-sessions/{session_id}/score")
    def score_test(session_id: str) -> dict:
        return system.assessment.score_test(session_id)

    # --- placement and the LMS loop ---

    @app.post("/api/students/{student_id}/placement")
    def place_student(student_id: str) -> dict:
        return system.placement.place_student(student_id)

    @app.post("/api/students/{student_id}/enrollment", status_code=201)
    def enroll(student_id: str) -> dict:
        return system.enrollments.enroll(student_id)

    @app.post("/api/students/{student_id}/evaluations")
    def record_evaluation(student_id: str, payload: dict = Body(...)) -> dict:
        return system.enrollments.record_evaluation(
            student_id, payload.get("kind"), payload.get("score_percentage")
        )

    @app.post("/api/students/{student_id}/retake")
    def retake(student_id: str) -> dict:
        return system.enrollments.retake(student_id)

    @app.post("/api/students/{student_id}/feedback", status_code=201)
    def submit_feedback(student_id: str, payload: dict = Body(...)) -> dict:
        return system.feedback.submit_feedback(
            student_id, payload.get("rating"), payload.get("comments", "")
        )

    # --- case retrieval and analytics ---

    @app.get("/api/cases/similar")
    def similar_cases(student_id: str, k: Optional[int] = Query(None)) -> dict:
        results = system.similar_cases_for_student(student_id, k)
        return {
            "student_id": student_id,
            "results": [{"case": case, "similarity": sim} for case, sim in results],
        }

    @app.get("/api/analytics/cohort")
    def cohort_stats(
        dimension: str = "medium_of_instruction",
        level: Optional[str] = None,
        gender: Optional[str] = None,
        school_type: Optional[str] = None,
        economic_background: Optional[str] = None,
        medium_of_instruction: Optional[str] = None,
        course_contents: Optional[str] = None,
        computer_knowledge: Optional[str] = None,
    ) -> dict:
        requested = {
            "level": level,
            "gender": gender,
            "school_type": school_type,
            "economic_background": economic_background,
            "medium_of_instruction": medium_of_instruction,
            "course_contents": course_contents,
            "computer_knowledge": computer_knowledge,
        }
        filters = {field: value for field, value in requested.items() if value is not None}
        return system.cohort_stats(dimension=dimension, filters=filters or None)

    # --- question administration ---

    @app.post("/api/admin/questions", status_code=201)
    def add_question(payload: dict = Body(...)) -> dict:
        return _question_view(system.assessment.add_question(payload))

    @app.get("/api/admin/questions")
    def list_questions(section: Optional[str] = None, status: Optional[str] = None) -> dict:
        records = system.assessment.list_questions(section=section, status=status)
        return {"questions": [_question_view(r) for r in records]}

    @app.get("/api/admin/questions/{question_id}")
    def get_question(question_id: str) -> dict:
        return _question_view(system.assessment.get_question(question_id))

    @app.put("/api/admin/questions/{question_id}")
    def update_question(question_id: str, payload: dict = Body(...)) -> dict:
        return _question_view(system.assessment.update_question(question_id, payload))

    @app.delete("/api/admin/questions/{question_id}", status_code=204)
    def delete_question(question_id: str) -> None:
        system.assessment.delete_question(question_id)

    @app.post("/api/admin/questions/{question_id}/approve")
    def approve_question(question_id: str) -> dict:
        return _question_view(system.assessment.approve_question(question_id))

    return app
