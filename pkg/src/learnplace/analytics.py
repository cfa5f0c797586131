"""Cohort aggregation over placed students.

Produces the gender split, the level distribution, and a level cross-tab
against one cultural dimension (medium_of_instruction, course_contents or
computer_knowledge). Output key order is fixed by the enum declarations so
identical store states serialize to identical JSON.
"""

from __future__ import annotations

from typing import Dict, List, Mapping, Optional

from .errors import UnknownDimension
from .placement import Level
from .profiles import ComputerKnowledge, CourseContents, EconomicBackground, Gender, MediumOfInstruction, SchoolType
from .storage import RepositorySet

CROSS_TAB_DIMENSIONS: Dict[str, type] = {
    "medium_of_instruction": MediumOfInstruction,
    "course_contents": CourseContents,
    "computer_knowledge": ComputerKnowledge,
}

FILTER_FIELDS: Dict[str, type] = {
    **CROSS_TAB_DIMENSIONS,
    "gender": Gender,
    "level": Level,
    "school_type": SchoolType,
    "economic_background": EconomicBackground,
}

LEVEL_KEYS = [level.value for level in Level]


def _cohort_rows(repos: RepositorySet) -> List[dict]:
    rows = []
    for placement in repos.placements.scan():
        student_id = placement["student_id"]
        if student_id not in repos.personal or student_id not in repos.cultural:
            continue
        personal = repos.personal.get(student_id)
        cultural = repos.cultural.get(student_id)
        rows.append(
            {
                "student_id": student_id,
                "level": placement["level"],
                "percentage": placement["percentage"],
                "gender": personal["gender"],
                "school_type": cultural["school_type"],
                "medium_of_instruction": cultural["medium_of_instruction"],
                "course_contents": cultural["course_contents"],
                "computer_knowledge": cultural["computer_knowledge"],
                "economic_background": cultural["economic_background"],
            }
        )
    return rows


def _distribution(rows: List[dict], field: str, keys: List[str]) -> Dict[str, dict]:
    total = len(rows)
    out: Dict[str, dict] = {}
    for key in keys:
        count = sum(1 for row in rows if row[field] == key)
        out[key] = {
            "count": count,
            "percentage": (count / total * 100.0) if total else 0.0,
        }
    return out


def compute_cohort_stats(
    repos: RepositorySet,
    dimension: str = "medium_of_instruction",
    filters: Optional[Mapping[str, str]] = None,
) -> dict:
    """Aggregate all placed students (optionally filtered) into cohort stats."""
    if dimension not in CROSS_TAB_DIMENSIONS:
        raise UnknownDimension(
            f"dimension must be one of: {', '.join(CROSS_TAB_DIMENSIONS)}; got {dimension!r}"
        )
    rows = _cohort_rows(repos)
    for field, wanted in (filters or {}).items():
        if field not in FILTER_FIELDS:
            raise UnknownDimension(f"unknown filter field {field!r}")
        rows = [row for row in rows if row[field] == wanted]

    dimension_keys = [v.value for v in CROSS_TAB_DIMENSIONS[dimension]]
    cross_tab_cells = {
        value: {
            level: sum(1 for row in rows if row[dimension] == value and row["level"] == level)
            for level in LEVEL_KEYS
        }
        for value in dimension_keys
    }
    return {
        "cohort_size": len(rows),
        "gender_distribution": _distribution(rows, "gender", [g.value for g in Gender]),
        "level_distribution": _distribution(rows, "level", LEVEL_KEYS),
        "cross_tab": {"dimension": dimension, "cells": cross_tab_cells},
    }
