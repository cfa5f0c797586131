"""Registration validation and repository separation."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from learnplace.errors import DuplicateStudent, NotFound, ValidationError
from support import cultural_payload, personal_payload, register


def test_register_and_get_roundtrip(system):
    sid = register(system, "s1")
    personal, cultural = system.profiles.get_student(sid)
    assert personal == personal_payload("s1")
    assert cultural == cultural_payload("s1")
    assert system.repos.personal.count() == 1
    assert system.repos.cultural.count() == 1


def test_register_duplicate(system):
    register(system, "s1")
    with pytest.raises(DuplicateStudent):
        register(system, "s1")


def test_missing_medium_of_instruction(system):
    cultural = cultural_payload("s1")
    del cultural["medium_of_instruction"]
    with pytest.raises(ValidationError) as exc:
        system.profiles.register_student(personal_payload("s1"), cultural)
    assert exc.value.field == "medium_of_instruction"


def test_unknown_enum_value(system):
    cultural = cultural_payload("s1", computer_knowledge="wizard")
    with pytest.raises(ValidationError) as exc:
        system.profiles.register_student(personal_payload("s1"), cultural)
    assert exc.value.field == "computer_knowledge"


def test_blank_name_rejected(system):
    with pytest.raises(ValidationError) as exc:
        system.profiles.register_student(personal_payload("s1", full_name="   "), cultural_payload("s1"))
    assert exc.value.field == "full_name"


def test_bad_date_rejected(system):
    with pytest.raises(ValidationError) as exc:
        system.profiles.register_student(
            personal_payload("s1", date_of_birth="21-04-1999"), cultural_payload("s1")
        )
    assert exc.value.field == "date_of_birth"


def test_mismatched_ids_rejected(system):
    with pytest.raises(ValidationError) as exc:
        system.profiles.register_student(personal_payload("s1"), cultural_payload("s2"))
    assert exc.value.field == "student_id"


def test_get_unknown_student(system):
    with pytest.raises(NotFound):
        system.profiles.get_student("ghost")


def test_read_is_idempotent(system):
    register(system, "s1")
    assert system.profiles.get_student("s1") == system.profiles.get_student("s1")


def test_failed_registration_writes_nothing(system):
    cultural = cultural_payload("s1")
    del cultural["course_contents"]
    with pytest.raises(ValidationError):
        system.profiles.register_student(personal_payload("s1"), cultural)
    assert system.repos.personal.count() == 0
    assert system.repos.cultural.count() == 0


def test_deleting_one_repository_leaves_the_other(system):
    register(system, "s1")
    system.repos.cultural.delete("s1")
    assert system.repos.personal.get("s1") == personal_payload("s1")


identifiers = st.text(
    alphabet=st.characters(whitelist_categories=("Ll", "Lu", "Nd")), min_size=1, max_size=12
)


@given(identifiers)
@settings(max_examples=25, deadline=None)
def test_read_after_write_property(tmp_path_factory, sid):
    from learnplace import PlacementSystem

    system = PlacementSystem(tmp_path_factory.mktemp("data"))
    register(system, sid)
    personal, cultural = system.profiles.get_student(sid)
    assert personal == personal_payload(sid)
    assert cultural == cultural_payload(sid)
