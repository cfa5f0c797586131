import pytest

from learnplace import PlacementSystem


@pytest.fixture
def system(tmp_path):
    return PlacementSystem(tmp_path / "data")
