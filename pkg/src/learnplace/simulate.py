"""Seeded synthetic cohort runner.

Generates n students with profiles drawn from per-factor categorical
distributions, runs each through registration, the four-section test and
placement, then returns the cohort stats plus subgroup score means. All
draws come from one ``random.Random(seed)`` in a fixed order, so a given
(n, seed, distributions) triple replays identically on an empty data
directory.

Per-section scores follow a binomial-style model: each of the 10 questions
is answered correctly with probability ``base_rate`` plus boosts for
computer knowledge and an English medium of instruction, which builds the
expected directional pattern (English medium and computer exposure score
higher) into every generated cohort.

The runner talks to the system through a small client interface with two
implementations: in-process against a :class:`PlacementSystem`, or over
HTTP against a live server. The HTTP path exercises exactly the public
endpoints, nothing more.
"""

from __future__ import annotations

import random
from typing import Dict, List, Optional, Sequence, Tuple

import httpx

from .assessment import OPTIONS_PER_QUESTION, QUESTIONS_PER_SECTION, SECTION_ORDER
from .core import PlacementSystem
from .errors import BadDistribution, DomainError

FACTOR_VARIANTS: Dict[str, Tuple[str, ...]] = {
    "gender": ("male", "female", "other"),
    "school_type": ("government", "private"),
    "medium_of_instruction": ("local_language", "english"),
    "course_contents": ("local", "international"),
    "computer_knowledge": ("none", "basic", "proficient"),
    "economic_background": ("low", "middle", "high"),
}

DEFAULT_FACTOR_DISTRIBUTIONS: Dict[str, Dict[str, float]] = {
    "gender": {"male": 0.5, "female": 0.5},
    "school_type": {"government": 0.5, "private": 0.5},
    "medium_of_instruction": {"local_language": 0.5, "english": 0.5},
    "course_contents": {"local": 0.5, "international": 0.5},
    "computer_knowledge": {"none": 1 / 3, "basic": 1 / 3, "proficient": 1 / 3},
    "economic_background": {"low": 1 / 3, "middle": 1 / 3, "high": 1 / 3},
}

DEFAULT_SCORE_MODEL: Dict[str, object] = {
    "base_rate": 0.35,
    "computer_knowledge_boost": {"none": 0.0, "basic": 0.15, "proficient": 0.30},
    "english_medium_boost": 0.20,
}

DEFAULT_QUESTIONS_PER_SECTION = 12


def resolve_distributions(overrides: Optional[dict]) -> Dict[str, Dict[str, float]]:
    """Merge per-factor overrides over the defaults, validating each vector."""
    merged = {factor: dict(dist) for factor, dist in DEFAULT_FACTOR_DISTRIBUTIONS.items()}
    for factor, dist in (overrides or {}).items():
        if factor not in FACTOR_VARIANTS:
            raise BadDistribution(f"unknown factor {factor!r}")
        if not isinstance(dist, dict) or not dist:
            raise BadDistribution(f"distribution for {factor} must be a non-empty mapping")
        for variant, prob in dist.items():
            if variant not in FACTOR_VARIANTS[factor]:
                raise BadDistribution(f"unknown variant {variant!r} for factor {factor}")
            if not isinstance(prob, (int, float)) or isinstance(prob, bool) or prob < 0:
                raise BadDistribution(f"probability for {factor}.{variant} must be >= 0")
        total = sum(dist.values())
        if abs(total - 1.0) > 1e-6:
            raise BadDistribution(f"distribution for {factor} sums to {total}, expected 1.0")
        merged[factor] = {v: float(dist.get(v, 0.0)) for v in FACTOR_VARIANTS[factor]}
    return merged


def success_probability(cultural: dict, score_model: dict) -> float:
    boost = score_model["computer_knowledge_boost"][cultural["computer_knowledge"]]
    if cultural["medium_of_instruction"] == "english":
        boost += score_model["english_medium_boost"]
    return min(0.98, max(0.02, score_model["base_rate"] + boost))


class DirectClient:
    """Drives a PlacementSystem in-process."""

    def __init__(self, system: PlacementSystem) -> None:
        self.system = system

    def create_question(self, payload: dict) -> str:
        return self.system.assessment.add_question(payload)["question_id"]

    def approve_question(self, question_id: str) -> None:
        self.system.assessment.approve_question(question_id)

    def register(self, personal: dict, cultural: dict) -> str:
        return self.system.profiles.register_student(personal, cultural)

    def start_test(self, student_id: str, seed: int) -> str:
        return self.system.assessment.start_test(student_id, seed)["session_id"]

    def current_section(self, session_id: str) -> Tuple[str, List[str]]:
        view = self.system.assessment.current_section_view(session_id)
        return view["current_section"], [q["question_id"] for q in view["questions"]]

    def submit_section(self, session_id: str, section: str, answers: Sequence[int]) -> None:
        self.system.assessment.submit_section(session_id, section, list(answers))

    def score_test(self, session_id: str) -> dict:
        return self.system.assessment.score_test(session_id)

    def place(self, student_id: str) -> dict:
        return self.system.placement.place_student(student_id)

    def cohort_stats(self, dimension: str) -> dict:
        return self.system.cohort_stats(dimension=dimension)


class HttpClient:
    """Drives a running server through the public HTTP endpoints."""

    def __init__(self, base_url: str, timeout: float = 30.0) -> None:
        self._client = httpx.Client(base_url=base_url, timeout=timeout)

    def close(self) -> None:
        self._client.close()

    def _check(self, response: httpx.Response) -> dict:
        if response.status_code >= 400:
            raise RuntimeError(f"{response.request.method} {response.request.url} -> {response.status_code}: {response.text}")
        return response.json() if response.content else {}

    def create_question(self, payload: dict) -> str:
        return self._check(self._client.post("/api/admin/questions", json=payload))["question_id"]

    def approve_question(self, question_id: str) -> None:
        self._check(self._client.post(f"/api/admin/questions/{question_id}/approve"))

    def register(self, personal: dict, cultural: dict) -> str:
        body = {"personal": personal, "cultural": cultural}
        return self._check(self._client.post("/api/students", json=body))["student_id"]

    def start_test(self, student_id: str, seed: int) -> str:
        response = self._client.post(f"/api/students/{student_id}/test-sessions", json={"seed": seed})
        return self._check(response)["session_id"]

    def current_section(self, session_id: str) -> Tuple[str, List[str]]:
        view = self._check(self._client.get(f"/api/test-sessions/{session_id}/current-section"))
        return view["current_section"], [q["question_id"] for q in view["questions"]]

    def submit_section(self, session_id: str, section: str, answers: Sequence[int]) -> None:
        self._check(
            self._client.post(
                f"/api/test-sessions/{session_id}/sections/{section}/answers",
                json={"answers": list(answers)},
            )
        )

    def score_test(self, session_id: str) -> dict:
        return self._check(self._client.post(f"/api/test-sessions/{session_id}/score"))

    def place(self, student_id: str) -> dict:
        return self._check(self._client.post(f"/api/students/{student_id}/placement"))

    def cohort_stats(self, dimension: str) -> dict:
        return self._check(self._client.get("/api/analytics/cohort", params={"dimension": dimension}))


def _seed_question_bank(client, rng: random.Random, questions_per_section: int) -> Dict[str, int]:
    """Create and approve a synthetic bank; returns question_id -> keyed option."""
    answer_key: Dict[str, int] = {}
    for section in SECTION_ORDER:
        for index in range(questions_per_section):
            correct = rng.randrange(OPTIONS_PER_QUESTION)
            payload = {
                "section": section.value,
                "prompt": f"{section.value} practice item {index + 1}: pick the keyed choice",
                "options": [
                    f"{section.value} item {index + 1} choice {letter}" for letter in "ABCD"
                ],
                "correct_option": correct,
            }
            question_id = client.create_question(payload)
            client.approve_question(question_id)
            answer_key[question_id] = correct
    return answer_key


def _draw(rng: random.Random, distribution: Dict[str, float], variants: Sequence[str]) -> str:
    weights = [distribution.get(v, 0.0) for v in variants]
    return rng.choices(list(variants), weights=weights, k=1)[0]


def _mean_by(pairs: List[Tuple[str, float]], keys: Sequence[str]) -> Dict[str, Optional[float]]:
    out: Dict[str, Optional[float]] = {}
    for key in keys:
        values = [value for group, value in pairs if group == key]
        out[key] = (sum(values) / len(values)) if values else None
    return out


def simulate_cohort(
    client,
    n: int,
    seed: int,
    factor_distributions: Optional[dict] = None,
    score_model: Optional[dict] = None,
    questions_per_section: int = DEFAULT_QUESTIONS_PER_SECTION,
    dimension: str = "medium_of_instruction",
) -> dict:
    """Run a full synthetic cohort and return its stats summary."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    if questions_per_section < QUESTIONS_PER_SECTION:
        raise DomainError(f"questions_per_section must be >= {QUESTIONS_PER_SECTION}")
    distributions = resolve_distributions(factor_distributions)
    model = dict(DEFAULT_SCORE_MODEL)
    model.update(score_model or {})

    rng = random.Random(seed)
    answer_key = _seed_question_bank(client, rng, questions_per_section)

    by_medium: List[Tuple[str, float]] = []
    by_computer_knowledge: List[Tuple[str, float]] = []
    level_counts: Dict[str, int] = {}
    for index in range(n):
        student_id = f"sim-{index + 1:05d}"
        personal = {
            "student_id": student_id,
            "full_name": f"Simulated Student {index + 1}",
            "gender": _draw(rng, distributions["gender"], FACTOR_VARIANTS["gender"]),
            "date_of_birth": f"{1990 + index % 20:04d}-06-15",
            "contact_email": f"{student_id}@example.org",
        }
        cultural = {
            "student_id": student_id,
            "school_type": _draw(rng, distributions["school_type"], FACTOR_VARIANTS["school_type"]),
            "medium_of_instruction": _draw(
                rng, distributions["medium_of_instruction"], FACTOR_VARIANTS["medium_of_instruction"]
            ),
            "course_contents": _draw(rng, distributions["course_contents"], FACTOR_VARIANTS["course_contents"]),
            "computer_knowledge": _draw(
                rng, distributions["computer_knowledge"], FACTOR_VARIANTS["computer_knowledge"]
            ),
            "region": "synthetic",
            "school_environment": "synthetic",
            "economic_background": _draw(
                rng, distributions["economic_background"], FACTOR_VARIANTS["economic_background"]
            ),
        }
        client.register(personal, cultural)

        probability = success_probability(cultural, model)
        session_id = client.start_test(student_id, seed=rng.getrandbits(31))
        for _ in SECTION_ORDER:
            section, question_ids = client.current_section(session_id)
            hits = sum(1 for _ in range(QUESTIONS_PER_SECTION) if rng.random() < probability)
            hit_positions = set(rng.sample(range(QUESTIONS_PER_SECTION), hits))
            answers = []
            for position, question_id in enumerate(question_ids):
                keyed = answer_key.get(question_id, 0)
                if position in hit_positions:
                    answers.append(keyed)
                else:
                    answers.append((keyed + 1) % OPTIONS_PER_QUESTION)
            client.submit_section(session_id, section, answers)
        client.score_test(session_id)
        decision = client.place(student_id)
        level_counts[decision["level"]] = level_counts.get(decision["level"], 0) + 1
        by_medium.append((cultural["medium_of_instruction"], decision["percentage"]))
        by_computer_knowledge.append((cultural["computer_knowledge"], decision["percentage"]))

    return {
        "n": n,
        "seed": seed,
        "questions_per_section": questions_per_section,
        "level_counts": {key: level_counts[key] for key in sorted(level_counts)},
        "mean_percentage_by_medium_of_instruction": _mean_by(
            by_medium, FACTOR_VARIANTS["medium_of_instruction"]
        ),
        "mean_percentage_by_computer_knowledge": _mean_by(
            by_computer_knowledge, FACTOR_VARIANTS["computer_knowledge"]
        ),
        "cohort_stats": client.cohort_stats(dimension),
    }
