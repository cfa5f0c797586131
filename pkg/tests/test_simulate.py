"""Synthetic cohort generation: determinism, distributions, score model."""

import json

import pytest

from learnplace import PlacementSystem
from learnplace.errors import BadDistribution, DomainError
from learnplace.simulate import (
    DEFAULT_SCORE_MODEL,
    DirectClient,
    resolve_distributions,
    simulate_cohort,
    success_probability,
)


def run(tmp_path, name, **kwargs):
    system = PlacementSystem(tmp_path / name, fsync=False)
    return simulate_cohort(DirectClient(system), **kwargs)


def test_degenerate_distribution_forces_profile(tmp_path):
    forced = {
        "gender": {"other": 1.0},
        "school_type": {"private": 1.0},
        "medium_of_instruction": {"english": 1.0},
        "course_contents": {"international": 1.0},
        "computer_knowledge": {"proficient": 1.0},
        "economic_background": {"high": 1.0},
    }
    system = PlacementSystem(tmp_path / "one", fsync=False)
    summary = simulate_cohort(DirectClient(system), n=1, seed=123, factor_distributions=forced)
    assert summary["n"] == 1
    cultural = system.repos.cultural.get("sim-00001")
    assert cultural["medium_of_instruction"] == "english"
    assert cultural["computer_knowledge"] == "proficient"
    personal = system.repos.personal.get("sim-00001")
    assert personal["gender"] == "other"
    assert system.repos.placements.get("sim-00001")["ra"] == 7


def test_rerun_is_byte_identical(tmp_path):
    a = run(tmp_path, "a", n=40, seed=9)
    b = run(tmp_path, "b", n=40, seed=9)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_different_seeds_differ(tmp_path):
    a = run(tmp_path, "a", n=40, seed=9)
    b = run(tmp_path, "b", n=40, seed=10)
    assert json.dumps(a, sort_keys=True) != json.dumps(b, sort_keys=True)


def test_bad_distributions_rejected(tmp_path):
    cases = [
        {"gender": {"male": 0.5, "female": 0.4}},  # sums to 0.9
        {"eye_colour": {"green": 1.0}},
        {"gender": {"male": 1.0, "alien": 0.0}},
        {"gender": {"male": 1.5, "female": -0.5}},
    ]
    for bad in cases:
        with pytest.raises(BadDistribution):
            resolve_distributions(bad)
    system = PlacementSystem(tmp_path / "x", fsync=False)
    with pytest.raises(BadDistribution):
        simulate_cohort(DirectClient(system), n=1, seed=1, factor_distributions=cases[0])


def test_n_must_be_positive(tmp_path):
    system = PlacementSystem(tmp_path / "x", fsync=False)
    with pytest.raises(DomainError):
        simulate_cohort(DirectClient(system), n=0, seed=1)


def test_score_model_orders_success_probability():
    base = {"student_id": "x", "course_contents": "local"}
    low = success_probability({**base, "medium_of_instruction": "local_language", "computer_knowledge": "none"}, DEFAULT_SCORE_MODEL)
    mid = success_probability({**base, "medium_of_instruction": "local_language", "computer_knowledge": "proficient"}, DEFAULT_SCORE_MODEL)
    high = success_probability({**base, "medium_of_instruction": "english", "computer_knowledge": "proficient"}, DEFAULT_SCORE_MODEL)
    assert low < mid < high


def test_directional_pattern_in_generated_cohort(tmp_path):
    summary = run(tmp_path, "cohort", n=120, seed=21)
    means = summary["mean_percentage_by_medium_of_instruction"]
    assert means["english"] > means["local_language"]
    stats = summary["cohort_stats"]
    assert stats["cohort_size"] == 120
    total = sum(v["count"] for v in stats["level_distribution"].values())
    assert total == 120
