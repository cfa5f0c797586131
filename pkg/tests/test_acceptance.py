"""Acceptance suite: one test per release criterion, one printed line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the PASS/FAIL lines.
Tolerances are pinned here: exact agreement for the decision table, zero
violations for the property sweeps, byte-identical JSON for replays, and the
stated runtime budgets.
"""

import itertools
import json
import random
import time
from contextlib import contextmanager

import pytest

from learnplace import PlacementSystem
from learnplace.assessment import SECTION_ORDER, QUESTIONS_PER_SECTION
from learnplace.casebase import profile_similarity
from learnplace.errors import AlreadyAnswered, OutOfOrder
from learnplace.placement import LEVEL_ORDER, Level, RuleFired, assign_level, compute_reference_value
from learnplace.simulate import DirectClient, HttpClient, simulate_cohort
from learnplace.storage import STORE_NAMES, RepositorySet
from support import (
    cultural_payload,
    personal_payload,
    register,
    rule_chain_reference,
    run_full_test,
    seed_bank,
    start_http_server,
    stop_http_server,
)

RAS = range(3, 8)


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}")
        raise
    print(f"[PASS] {name}")


def test_decision_table_oracle_equivalence():
    with criterion("decision table agrees with the independent transcription on all 5x101 integer cells (<1s)"):
        start = time.perf_counter()
        for ra, pct in itertools.product(RAS, range(0, 101)):
            expected = rule_chain_reference(ra, float(pct))
            decision = assign_level(ra, float(pct))
            if expected is not None:
                assert decision.level == expected, (ra, pct)
                assert decision.rule_fired != RuleFired.GAP_FILL, (ra, pct)
        assert time.perf_counter() - start < 1.0


def test_gap_census():
    with criterion("gap census finds exactly (ra=5, 75<=%<80) and (ra=6, 50<=%<60) (<1s)"):
        start = time.perf_counter()
        integer_gaps = {
            (ra, pct)
            for ra, pct in itertools.product(RAS, range(0, 101))
            if rule_chain_reference(ra, float(pct)) is None
        }
        expected = {(5, pct) for pct in range(75, 80)} | {(6, pct) for pct in range(50, 60)}
        assert integer_gaps == expected
        rng = random.Random(20260809)
        for _ in range(5000):
            ra = rng.choice(list(RAS))
            pct = rng.uniform(0.0, 100.0)
            in_gap = (ra == 5 and 75.0 <= pct < 80.0) or (ra == 6 and 50.0 <= pct < 60.0)
            assert (rule_chain_reference(ra, pct) is None) == in_gap, (ra, pct)
            assert (assign_level(ra, pct).rule_fired == RuleFired.GAP_FILL) == in_gap, (ra, pct)
        assert time.perf_counter() - start < 1.0


def test_monotonicity_suite():
    with criterion("level monotone in ra and in percentage over 10,000 fuzzed reals (zero violations)"):
        rng = random.Random(424242)
        for _ in range(10_000):
            pct = rng.uniform(0.0, 100.0)
            ranks = [LEVEL_ORDER[assign_level(ra, pct).level] for ra in RAS]
            assert ranks == sorted(ranks), (pct, ranks)
            ra = rng.choice(list(RAS))
            other = rng.uniform(0.0, 100.0)
            low, high = min(pct, other), max(pct, other)
            assert LEVEL_ORDER[assign_level(ra, low).level] <= LEVEL_ORDER[assign_level(ra, high).level]


def test_not_eligible_boundary():
    with criterion("not_eligible exactly when percentage < 40, exhaustive and fuzzed (zero violations)"):
        for ra, pct in itertools.product(RAS, range(0, 101)):
            assert (assign_level(ra, float(pct)).level == Level.NOT_ELIGIBLE) == (pct < 40)
        rng = random.Random(77)
        for _ in range(10_000):
            ra = rng.choice(list(RAS))
            pct = rng.uniform(0.0, 100.0)
            assert (assign_level(ra, pct).level == Level.NOT_ELIGIBLE) == (pct < 40.0)


def test_scoring_identity_over_random_sessions(tmp_path):
    with criterion("1,000 random sessions: total = sum of section scores and percentage = 2.5 x total exactly"):
        system = PlacementSystem(tmp_path / "scoring", fsync=False)
        key = seed_bank(system)
        rng = random.Random(1001)
        for index in range(1000):
            sid = f"s{index:04d}"
            register(system, sid)
            session = system.assessment.start_test(sid, seed=rng.getrandbits(24))
            expected_total = 0
            expected_sections = {}
            for section in SECTION_ORDER:
                answers = [rng.randrange(4) for _ in range(QUESTIONS_PER_SECTION)]
                served = session["served_questions"][section.value]
                hits = sum(1 for qid, answer in zip(served, answers) if key[qid] == answer)
                expected_sections[section.value] = hits
                expected_total += hits
                system.assessment.submit_section(session["session_id"], section, answers)
            score = system.assessment.score_test(session["session_id"])
            assert score["total"] == expected_total
            assert score["total"] == (
                score["s_english"] + score["s_math_reasoning"] + score["s_computer"] + score["s_iq"]
            )
            assert {
                "english": score["s_english"],
                "mathematical_reasoning": score["s_math_reasoning"],
                "computer": score["s_computer"],
                "intelligence_quotient": score["s_iq"],
            } == expected_sections
            assert score["percentage"] == 2.5 * score["total"]


def test_session_state_machine_properties(tmp_path):
    with criterion("no out-of-order submission accepted; exactly 10 approved questions served per section (zero violations)"):
        system = PlacementSystem(tmp_path / "machine", fsync=False)
        key = seed_bank(system, per_section=13)
        approved = set(key)
        ordered = [s for s in SECTION_ORDER]
        rng = random.Random(31337)
        for index in range(150):
            sid = f"m{index:03d}"
            register(system, sid)
            session = system.assessment.start_test(sid, seed=rng.getrandbits(24))
            for section in SECTION_ORDER:
                served = session["served_questions"][section.value]
                assert len(served) == QUESTIONS_PER_SECTION
                assert len(set(served)) == QUESTIONS_PER_SECTION
                assert set(served) <= approved
            attempts = [rng.choice(ordered) for _ in range(rng.randint(1, 10))]
            accepted = []
            for section in attempts:
                try:
                    system.assessment.submit_section(session["session_id"], section, [0] * 10)
                    accepted.append(section)
                except (OutOfOrder, AlreadyAnswered):
                    pass
            assert accepted == ordered[: len(accepted)], (attempts, accepted)


def test_reference_value_rubric():
    with criterion("all 12 factor combinations land in [3,7] and the rubric is monotone in each factor"):
        media = ["local_language", "english"]
        knowledge = ["none", "basic", "proficient"]
        contents = ["local", "international"]

        def ra_of(m, k, c):
            return compute_reference_value(
                cultural_payload("x", medium_of_instruction=m, computer_knowledge=k, course_contents=c)
            ).ra

        combos = list(itertools.product(media, knowledge, contents))
        assert len(combos) == 12
        for m, k, c in combos:
            assert 3 <= ra_of(m, k, c) <= 7
        for k, c in itertools.product(knowledge, contents):
            assert ra_of("local_language", k, c) <= ra_of("english", k, c)
        for m, c in itertools.product(media, contents):
            ranks = [ra_of(m, k, c) for k in knowledge]
            assert ranks == sorted(ranks)
        for m, k in itertools.product(media, knowledge):
            assert ra_of(m, k, "local") <= ra_of(m, k, "international")


def test_case_similarity_metric(tmp_path):
    with criterion("similarity reflexive/symmetric on 1,000 random pairs; retrieval descending with stable ties"):
        variants = {
            "medium_of_instruction": ["local_language", "english"],
            "computer_knowledge": ["none", "basic", "proficient"],
            "course_contents": ["local", "international"],
            "school_type": ["government", "private"],
            "economic_background": ["low", "middle", "high"],
        }
        rng = random.Random(555)

        def random_profile():
            return cultural_payload("x", **{a: rng.choice(vs) for a, vs in variants.items()})

        for _ in range(1000):
            a, b = random_profile(), random_profile()
            assert profile_similarity(a, a) == 1.0
            assert profile_similarity(a, b) == profile_similarity(b, a)
            assert 0.0 <= profile_similarity(a, b) <= 1.0

        # crafted store with deliberate stored_at ties
        system = PlacementSystem(tmp_path / "cbr", fsync=False)
        for index in range(200):
            profile = random_profile()
            system.repos.cases.put(
                f"case{index:03d}:1",
                {
                    "case_id": f"case{index:03d}",
                    "student_id": f"case{index:03d}",
                    "cultural": profile,
                    "ra": 5,
                    "aptitude_percentage": 70.0,
                    "assigned_level": "intermediate",
                    "attempts_to_pass": 1,
                    "stored_at": f"2026-01-01T00:00:{index // 10:02d}+00:00",  # ties every 10 cases
                },
            )
        storage_order = [c["case_id"] for c in system.repos.cases.scan()]
        for _ in range(50):
            query = random_profile()
            results = system.casebase.similar_cases(query, k=200)
            sims = [sim for _, sim in results]
            assert sims == sorted(sims, reverse=True)
            for (a_case, a_sim), (b_case, b_sim) in zip(results, results[1:]):
                if a_sim == b_sim:
                    assert storage_order.index(a_case["case_id"]) < storage_order.index(b_case["case_id"])
            rerun = system.casebase.similar_cases(query, k=200)
            assert [(c["case_id"], s) for c, s in rerun] == [(c["case_id"], s) for c, s in results]


def test_end_to_end_http_replay(tmp_path):
    with criterion("HTTP simulate n=200 seed=7 replays byte-identically and cross-tab marginals match level counts (<30s)"):
        start = time.perf_counter()
        payloads = []
        for run in ("first", "second"):
            system = PlacementSystem(tmp_path / run)
            server, thread, base_url = start_http_server(system)
            try:
                client = HttpClient(base_url)
                summary = simulate_cohort(client, n=200, seed=7)
                client.close()
            finally:
                stop_http_server(server, thread)
            payloads.append(summary)
        first, second = payloads
        assert json.dumps(first["cohort_stats"], sort_keys=True) == json.dumps(
            second["cohort_stats"], sort_keys=True
        )
        assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)
        stats = first["cohort_stats"]
        assert stats["cohort_size"] == 200
        for level, dist in stats["level_distribution"].items():
            cross_total = sum(cells[level] for cells in stats["cross_tab"]["cells"].values())
            assert cross_total == dist["count"]
        elapsed = time.perf_counter() - start
        assert elapsed < 30.0, f"end-to-end took {elapsed:.1f}s"


def test_persistence_roundtrip_and_durability(tmp_path):
    with criterion("snapshot round-trip is field-identical for all nine stores; 1,000 writes survive restart"):
        system = PlacementSystem(tmp_path / "src")
        key = seed_bank(system)
        for index, sid in enumerate(["p1", "p2", "p3"]):
            register(system, sid)
            run_full_test(
                system, key, sid, seed=index,
                section_scores={s: 9 for s in SECTION_ORDER},
            )
            system.placement.place_student(sid)
            system.enrollments.enroll(sid)
            system.enrollments.record_evaluation(sid, "final", 80.0)
            system.feedback.submit_feedback(sid, 5, "solid")
        assert all(system.repos.stores[name].count() > 0 for name in STORE_NAMES)

        archive = tmp_path / "snapshot.archive"
        system.repos.snapshot_export(archive)
        restored = RepositorySet(tmp_path / "dst")
        restored.snapshot_import(archive)
        for name in STORE_NAMES:
            assert restored.stores[name].items() == system.repos.stores[name].items(), name

        durable = RepositorySet(tmp_path / "durable")
        for index in range(1000):
            durable.scores.put(f"w{index}", {"index": index, "payload": "x" * 20})
        reopened = RepositorySet(tmp_path / "durable")
        assert reopened.scores.count() == 1000
        assert [r["index"] for r in reopened.scores.scan()] == list(range(1000))


def test_directional_pattern(tmp_path):
    with criterion("balanced n=500 cohort: English-medium mean percentage exceeds local-language mean"):
        system = PlacementSystem(tmp_path / "cohort", fsync=False)
        summary = simulate_cohort(DirectClient(system), n=500, seed=11)
        means = summary["mean_percentage_by_medium_of_instruction"]
        assert means["english"] is not None and means["local_language"] is not None
        assert means["english"] > means["local_language"], means
