#!/usr/bin/env python3
"""Walk one student through the whole service over HTTP.

Boots the API on an ephemeral port with a throwaway data directory, seeds a
question bank through the admin endpoints, then runs: register -> aptitude
test (four sections) -> score -> placement -> enrollment -> evaluations ->
feedback -> similar-case lookup, printing each response along the way.
"""

import json
import random
import socket
import tempfile
import threading
import time

import httpx
import uvicorn

from learnplace import PlacementSystem
from learnplace.api import create_app

SECTIONS = ["english", "mathematical_reasoning", "computer", "intelligence_quotient"]


def start_server() -> tuple:
    system = PlacementSystem(tempfile.mkdtemp(prefix="learnplace-demo-"))
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.IPPROTO_TCP, socket.TCP_NODELAY, 1)
    sock.bind(("127.0.0.1", 0))
    port = sock.getsockname()[1]
    server = uvicorn.Server(uvicorn.Config(create_app(system), log_level="error"))
    thread = threading.Thread(target=server.run, kwargs={"sockets": [sock]}, daemon=True)
    thread.start()
    while not server.started:
        time.sleep(0.01)
    return server, thread, f"http://127.0.0.1:{port}"


def show(step: str, payload) -> None:
    print(f"\n--- {step} ---")
    print(json.dumps(payload, indent=2))


def main() -> None:
    server, thread, base_url = start_server()
    client = httpx.Client(base_url=base_url)
    rng = random.Random(4)

    answer_key = {}
    for section in SECTIONS:
        for i in range(10):
            correct = rng.randrange(4)
            question = {
                "section": section,
                "prompt": f"{section} demo question {i + 1}",
                "options": [f"{section} q{i + 1} choice {c}" for c in "ABCD"],
                "correct_option": correct,
            }
            created = client.post("/api/admin/questions", json=question).json()
            client.post(f"/api/admin/questions/{created['question_id']}/approve")
            answer_key[created["question_id"]] = correct
    print(f"seeded and approved {len(answer_key)} questions")

    registration = client.post(
        "/api/students",
        json={
            "personal": {
                "student_id": "demo-1",
                "full_name": "Demo Student",
                "gender": "female",
                "date_of_birth": "2000-03-12",
                "contact_email": "demo@example.org",
            },
            "cultural": {
                "student_id": "demo-1",
                "school_type": "government",
                "medium_of_instruction": "english",
                "course_contents": "international",
                "computer_knowledge": "basic",
                "region": "islamabad",
                "school_environment": "urban",
                "economic_background": "middle",
            },
        },
    ).json()
    show("registered (reference value computed at signup)", registration)

    session = client.post("/api/students/demo-1/test-sessions", json={"seed": 42}).json()
    for _ in SECTIONS:
        view = client.get(f"/api/test-sessions/{session['session_id']}/current-section").json()
        answers = []
        for position, question in enumerate(view["questions"]):
            keyed = answer_key[question["question_id"]]
            answers.append(keyed if position < 8 else (keyed + 1) % 4)  # 8/10 per section
        result = client.post(
            f"/api/test-sessions/{session['session_id']}/sections/{view['current_section']}/answers",
            json={"answers": answers},
        ).json()
        print(f"submitted {result['section']}: score {result['section_score']}/10")

    score = client.post(f"/api/test-sessions/{session['session_id']}/score").json()
    show("scored", score)
    show("placement", client.post("/api/students/demo-1/placement").json())
    show("enrollment", client.post("/api/students/demo-1/enrollment").json())
    client.post("/api/students/demo-1/evaluations", json={"kind": "quiz", "score_percentage": 74})
    show(
        "final evaluation",
        client.post("/api/students/demo-1/evaluations", json={"kind": "final", "score_percentage": 81}).json(),
    )
    show("feedback", client.post("/api/students/demo-1/feedback", json={"rating": 5, "comments": "smooth"}).json())
    show("similar cases", client.get("/api/cases/similar", params={"student_id": "demo-1", "k": 3}).json())
    show("cohort analytics", client.get("/api/analytics/cohort", params={"dimension": "medium_of_instruction"}).json())

    client.close()
    server.should_exit = True
    thread.join(timeout=10)


if __name__ == "__main__":
    main()
