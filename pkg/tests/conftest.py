"""Shared table data and registry builders for the test suite.

The tuples below mirror the reference sample-data tables that the fixture
CSV files under fixtures/ also carry; tests that exercise the CSV path use
the files, tests that exercise the library use these.
"""

from pathlib import Path

import pytest

from fairpool.registry import Category, DestinationEntity, Registry

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"

# (name, key, category, priority, size)
ENTITIES_SAMPLE_1 = [
    ("charity", "GAIRWQ", 1, 1, 6),
    ("health", "CAIRWQ", 4, 2, 5),
    ("education", "BAIRWQ", 2, 2, 4),
    ("economy", "NNIRWQ", 3, 2, 1),
]
ENTITIES_SAMPLE_2 = [
    ("charity", "GAIRWQ", 1, 1, 6),
    ("health", "CAIRWQ", 4, 6, 5),
    ("education", "BAIRWQ", 2, 2, 4),
    ("economy", "NNIRWQ", 3, 2, 1),
]
ENTITIES_SAMPLE_3 = [
    ("charity", "GAIRWQ", 1, 1, 6),
    ("health", "CAIRWQ", 4, 6, 5),
    ("education", "BAIRWQ", 2, 2, 4),
    ("economy", "NNIRWQ", 3, 2, 13),
]
ENTITIES_UNIFORM = [
    ("charity", "GAIRWQ", 1, 1, 1),
    ("health", "CAIRWQ", 4, 1, 1),
    ("education", "BAIRWQ", 2, 1, 1),
    ("economy", "NNIRWQ", 3, 1, 1),
]

INTERESTS_SAMPLE_1 = {"charity": 1, "education": 1, "economy": 3, "health": 4}
INTERESTS_SAMPLE_2 = {"charity": 1, "education": 5, "economy": 2, "health": 4}
INTERESTS_SAMPLE_3 = {"charity": 3, "education": 2, "economy": 1, "health": 2}

# (destination key, federation id), in original file order
VOTES_SAMPLE_1 = [
    ("GAIRWQ", "user-1"),
    ("GAIRWQ", "user-2"),
    ("BAIRWQ", "user-2"),
    ("GAIRWQ", "user-2"),
    ("BAIRWQ", "user-2"),
    ("BAIRWQ", "user-2"),
    ("CAIRWQ", "user-2"),
    ("GAIRWQ", "user-2"),
]
VOTES_SAMPLE_2 = [
    ("BAIRWQ", "user-2"),
    ("GAIRWQ", "user-2"),
    ("BAIRWQ", "user-2"),
    ("CAIRWQ", "user-2"),
    ("CAIRWQ", "user-2"),
    ("GAIRWQ", "user-1"),
]


def identity(fid: str) -> dict[str, str]:
    return {
        "name": fid,
        "mobile": "0911111111",
        "email": f"{fid}@example.test",
        "national_code": "1234567890",
    }


def make_registry(entities=ENTITIES_SAMPLE_1, interests=None, votes=()):
    """Registry with the given catalog, per-user interests, and vote history.

    interests maps federation id -> rating dict; users referenced anywhere
    are registered automatically.
    """
    registry = Registry()
    for name, key, category, priority, size in entities:
        registry.register_entity(DestinationEntity(
            name=name, public_key=key, category=Category(category), priority=priority, size=size))

    def ensure(fid):
        if not registry.has_user(fid):
            registry.register_user(fid, **identity(fid))

    for fid, ratings in (interests or {}).items():
        ensure(fid)
        registry.record_interests(fid, ratings)
    for dest, fid in votes:
        ensure(fid)
        registry.append_vote(fid, dest)
    return registry


@pytest.fixture
def sample_registry():
    return make_registry(interests={"user-1": INTERESTS_SAMPLE_1}, votes=VOTES_SAMPLE_1)
