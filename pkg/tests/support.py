"""Shared test builders and the test-only decision-chain transcription."""

from __future__ import annotations

import socket
import threading
import time
from typing import Dict, Optional

import uvicorn

from learnplace import PlacementSystem
from learnplace.api import create_app
from learnplace.assessment import SECTION_ORDER, Section
from learnplace.placement import Level


def personal_payload(student_id: str, **over) -> dict:
    payload = {
        "student_id": student_id,
        "full_name": f"Student {student_id}",
        "gender": "female",
        "date_of_birth": "1999-04-21",
        "contact_email": f"{student_id}@example.org",
    }
    payload.update(over)
    return payload


def cultural_payload(student_id: str, **over) -> dict:
    payload = {
        "student_id": student_id,
        "school_type": "government",
        "medium_of_instruction": "english",
        "course_contents": "local",
        "computer_knowledge": "basic",
        "region": "north",
        "school_environment": "urban",
        "economic_background": "middle",
    }
    payload.update(over)
    return payload


def register(system: PlacementSystem, student_id: str, **cultural_over) -> str:
    return system.profiles.register_student(
        personal_payload(student_id), cultural_payload(student_id, **cultural_over)
    )


def question_payload(section: str, index: int, correct: int = 0, **over) -> dict:
    payload = {
        "section": section,
        "prompt": f"{section} question {index}",
        "options": [f"{section} q{index} option {c}" for c in "ABCD"],
        "correct_option": correct,
    }
    payload.update(over)
    return payload


def seed_bank(system: PlacementSystem, per_section: int = 10) -> Dict[str, int]:
    """Create and approve a full bank; returns question_id -> correct option."""
    key: Dict[str, int] = {}
    for section in SECTION_ORDER:
        for index in range(per_section):
            correct = index % 4
            record = system.assessment.add_question(question_payload(section.value, index, correct))
            system.assessment.approve_question(record["question_id"])
            key[record["question_id"]] = correct
    return key


def run_full_test(
    system: PlacementSystem,
    answer_key: Dict[str, int],
    student_id: str,
    seed: int,
    section_scores: Dict[Section, int],
) -> dict:
    """Drive one session to a chosen per-section score profile; returns the score record."""
    session = system.assessment.start_test(student_id, seed)
    for section in SECTION_ORDER:
        served = session["served_questions"][section.value]
        target = section_scores[section]
        answers = []
        for position, qid in enumerate(served):
            correct = answer_key[qid]
            answers.append(correct if position < target else (correct + 1) % 4)
        system.assessment.submit_section(session["session_id"], section, answers)
    return system.assessment.score_test(session["session_id"])


def start_http_server(system: PlacementSystem):
    """Serve the system on an ephemeral localhost port in a thread.

    TCP_NODELAY is set on the listener (inherited by accepted connections)
    to avoid 40 ms Nagle/delayed-ACK stalls per request.
    """
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.IPPROTO_TCP, socket.TCP_NODELAY, 1)
    sock.bind(("127.0.0.1", 0))
    port = sock.getsockname()[1]
    server = uvicorn.Server(uvicorn.Config(create_app(system), log_level="error"))
    thread = threading.Thread(target=server.run, kwargs={"sockets": [sock]}, daemon=True)
    thread.start()
    deadline = time.time() + 15
    while not server.started and time.time() < deadline:
        time.sleep(0.01)
    if not server.started:
        raise RuntimeError("server did not start within 15s")
    return server, thread, f"http://127.0.0.1:{port}"


def stop_http_server(server, thread) -> None:
    server.should_exit = True
    thread.join(timeout=15)


def rule_chain_reference(ra: int, pct: float) -> Optional[Level]:
    """Literal transcription of the published first-match level rules.

    Returns None on the two between-band regions; kept independent of the
    production table so the two can check each other.
    """
    if (
        (ra == 7 and pct >= 60)
        or (ra == 6 and pct >= 70)
        or (ra == 5 and pct >= 80)
        or (ra == 4 and pct >= 85)
        or (ra == 3 and pct >= 90)
    ):
        return Level.SKILLED
    if (
        (ra == 7 and pct < 60 and pct >= 50)
        or (ra == 6 and pct < 70 and pct >= 60)
        or (ra == 5 and pct < 75 and pct >= 60)
        or (ra == 4 and pct < 85 and pct >= 70)
        or (ra == 3 and pct < 95 and pct >= 80)
    ):
        return Level.INTERMEDIATE
    if (
        (ra == 7 and pct < 50 and pct >= 40)
        or (ra == 6 and pct < 50 and pct >= 40)
        or (ra == 5 and pct < 60 and pct >= 40)
        or (ra == 4 and pct < 70 and pct >= 40)
        or (ra == 3 and pct < 80 and pct >= 40)
    ):
        return Level.BEGINNER
    if pct < 40:
        return Level.NOT_ELIGIBLE
    return None
