"""CSV fixture formats, shaped so reference table data pastes straight in.

entities.csv   name,walletID,category,priority,size
interests.csv  federationID,charity,education,economy,health
votes.csv      destinationID,federationID

All files are comma-separated with a required header row. Users referenced
by interests or votes are auto-registered with placeholder identity fields;
the registry only needs them to exist.
"""

from __future__ import annotations

import csv
from pathlib import Path

from .errors import FixtureParseError
from .registry import Category, DestinationEntity, Registry

ENTITIES_HEADER = ["name", "walletID", "category", "priority", "size"]
INTERESTS_HEADER = ["federationID", "charity", "education", "economy", "health"]
VOTES_HEADER = ["destinationID", "federationID"]

ENTITIES_FILE = "entities.csv"
INTERESTS_FILE = "interests.csv"
VOTES_FILE = "votes.csv"


def _read_rows(path: Path, expected_header: list[str]) -> list[list[str]]:
    try:
        with path.open("r", encoding="utf-8", newline="") as fh:
            rows = [row for row in csv.reader(fh) if row and any(cell.strip() for cell in row)]
    except OSError as exc:
        raise FixtureParseError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise FixtureParseError(f"{path}: empty fixture file")
    header = [cell.strip() for cell in rows[0]]
    if header != expected_header:
        raise FixtureParseError(
            f"{path}: expected header {','.join(expected_header)}, got {','.join(header)}"
        )
    body = []
    for lineno, row in enumerate(rows[1:], start=2):
        cells = [cell.strip() for cell in row]
        if len(cells) != len(expected_header):
            raise FixtureParseError(f"{path}:{lineno}: expected {len(expected_header)} fields")
        body.append(cells)
    return body


def _int_field(path: Path, label: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise FixtureParseError(f"{path}: {label} must be an integer, got {raw!r}") from None


def load_entities(path: Path) -> list[DestinationEntity]:
    entities = []
    for name, key, category, priority, size in _read_rows(path, ENTITIES_HEADER):
        entities.append(DestinationEntity(
            name=name,
            public_key=key,
            category=Category(_int_field(path, "category", category)),
            priority=_int_field(path, "priority", priority),
            size=_int_field(path, "size", size),
        ))
    return entities


def load_interests(path: Path) -> dict[str, dict[Category, int]]:
    """Interest ratings keyed by federation id, in file order."""
    result: dict[str, dict[Category, int]] = {}
    for fid, charity, education, economy, health in _read_rows(path, INTERESTS_HEADER):
        result[fid] = {
            Category.CHARITY: _int_field(path, "charity", charity),
            Category.EDUCATION: _int_field(path, "education", education),
            Category.ECONOMY: _int_field(path, "economy", economy),
            Category.HEALTHCARE: _int_field(path, "health", health),
        }
    return result


def load_votes(path: Path) -> list[tuple[str, str]]:
    """(destination key, federation id) pairs in file order."""
    return [(dest, fid) for dest, fid in _read_rows(path, VOTES_HEADER)]


def placeholder_identity(federation_id: str) -> dict[str, str]:
    return {
        "name": federation_id,
        "mobile": "0000000000",
        "email": f"{federation_id}@fixtures.local",
        "national_code": "0000000000",
    }


def build_registry(fixtures_dir: str | Path) -> Registry:
    """Load whichever fixture files exist in a directory into a registry.

    entities.csv is required; interests.csv and votes.csv are optional.
    Referenced users are auto-registered.
    """
    root = Path(fixtures_dir)
    entities_path = root / ENTITIES_FILE
    if not entities_path.exists():
        raise FixtureParseError(f"{root}: missing {ENTITIES_FILE}")

    registry = Registry()
    for entity in load_entities(entities_path):
        registry.register_entity(entity)

    def ensure_user(fid: str) -> None:
        if not registry.has_user(fid):
            registry.register_user(fid, **placeholder_identity(fid))

    interests_path = root / INTERESTS_FILE
    if interests_path.exists():
        for fid, ratings in load_interests(interests_path).items():
            ensure_user(fid)
            registry.record_interests(fid, ratings)

    votes_path = root / VOTES_FILE
    if votes_path.exists():
        for dest, fid in load_votes(votes_path):
            ensure_user(fid)
            registry.append_vote(fid, dest)

    return registry
