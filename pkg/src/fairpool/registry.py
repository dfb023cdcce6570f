"""Off-chain registry: user identities, key links, interests, entities, votes.

Users are keyed by a human-memorable federation id and optionally linked
one-to-one to a ledger public key. Each user rates the four activity
categories 1..5; destination entities carry a category, an admin-assigned
priority, and a size (people served). Vote records are append-only and
globally sequence-numbered, feeding the recommender's collaborative stage.

An optional single-file journal (JSON lines, one event per line) persists
every mutation; ``Registry.open`` replays it and ``compact`` rewrites it
atomically.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from enum import IntEnum
from pathlib import Path
from typing import Iterable, Mapping

from .errors import (
    DuplicateKey,
    DuplicateUniqueId,
    KeyAlreadyLinked,
    MissingCategory,
    OutOfRangeRating,
    UnknownEntity,
    UnknownUser,
    ValidationError,
)

RATING_MIN = 1
RATING_MAX = 5


class Category(IntEnum):
    CHARITY = 1
    EDUCATION = 2
    ECONOMY = 3
    HEALTHCARE = 4

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def coerce(cls, value) -> "Category":
        """Accept a Category, its integer id, or a label ("health" included
        as the fixture-dialect alias for healthcare)."""
        if isinstance(value, cls):
            return value
        if isinstance(value, bool):
            raise ValidationError(f"not a category: {value!r}")
        if isinstance(value, int):
            try:
                return cls(value)
            except ValueError:
                raise ValidationError(f"category id must be 1..4, got {value}") from None
        if isinstance(value, str):
            name = value.strip().lower()
            if name == "health":
                return cls.HEALTHCARE
            for member in cls:
                if member.label == name:
                    return member
        raise ValidationError(f"not a category: {value!r}")


@dataclass
class UserProfile:
    unique_id: str
    name: str
    mobile: str
    email: str
    national_code: str
    public_key: str | None = None
    interests: dict[Category, int] | None = None


@dataclass(frozen=True)
class DestinationEntity:
    name: str
    public_key: str
    category: Category
    priority: int
    size: int


@dataclass(frozen=True)
class VoteRecord:
    federation_id: str
    destination_key: str
    sequence: int


class Registry:
    """In-memory record store with an optional append-only journal."""

    def __init__(self, journal_path: str | Path | None = None):
        self._users: dict[str, UserProfile] = {}
        self._entities: dict[str, DestinationEntity] = {}
        self._key_to_user: dict[str, str] = {}
        self._votes: list[VoteRecord] = []
        self._vote_sequence = 0
        self._journal_path = Path(journal_path) if journal_path is not None else None
        self._replaying = False

    @classmethod
    def open(cls, journal_path: str | Path) -> "Registry":
        """Load a registry from its journal, creating the file if absent."""
        registry = cls()
        path = Path(journal_path)
        if path.exists():
            registry._replaying = True
            try:
                with path.open("r", encoding="utf-8") as fh:
                    for line in fh:
                        line = line.strip()
                        if line:
                            registry._apply(json.loads(line))
            finally:
                registry._replaying = False
        registry._journal_path = path
        return registry

    # users

    def register_user(self, unique_id: str, name: str, mobile: str, email: str, national_code: str) -> UserProfile:
        for label, value in (("unique_id", unique_id), ("name", name), ("mobile", mobile),
                             ("email", email), ("national_code", national_code)):
            if not isinstance(value, str) or not value.strip():
                raise ValidationError(f"{label} must be a non-empty string")
        if unique_id in self._users:
            raise DuplicateUniqueId(f"unique id already registered: {unique_id}")
        profile = UserProfile(unique_id=unique_id, name=name, mobile=mobile, email=email,
                              national_code=national_code)
        self._users[unique_id] = profile
        self._log({"op": "user", "unique_id": unique_id, "name": name, "mobile": mobile,
                   "email": email, "national_code": national_code})
        return profile

    def link_public_key(self, unique_id: str, public_key: str) -> None:
        profile = self.user(unique_id)
        if not isinstance(public_key, str) or not public_key.strip():
            raise ValidationError("public_key must be a non-empty string")
        owner = self._key_to_user.get(public_key)
        if owner is not None and owner != unique_id:
            raise KeyAlreadyLinked(f"key {public_key} already linked to {owner}")
        if profile.public_key is not None and profile.public_key != public_key:
            del self._key_to_user[profile.public_key]
        profile.public_key = public_key
        self._key_to_user[public_key] = unique_id
        self._log({"op": "key", "unique_id": unique_id, "public_key": public_key})

    def record_interests(self, unique_id: str, ratings: Mapping) -> None:
        profile = self.user(unique_id)
        normalized: dict[Category, int] = {}
        for key, value in ratings.items():
            category = Category.coerce(key)
            if not isinstance(value, int) or isinstance(value, bool) or not (RATING_MIN <= value <= RATING_MAX):
                raise OutOfRangeRating(
                    f"rating for {category.label} must be an integer {RATING_MIN}..{RATING_MAX}, got {value!r}"
                )
            normalized[category] = value
        missing = [c.label for c in Category if c not in normalized]
        if missing:
            raise MissingCategory(f"missing categories: {', '.join(missing)}")
        profile.interests = {c: normalized[c] for c in Category}
        self._log({"op": "interests", "unique_id": unique_id,
                   "ratings": {c.label: normalized[c] for c in Category}})

    def user(self, unique_id: str) -> UserProfile:
        try:
            return self._users[unique_id]
        except KeyError:
            raise UnknownUser(f"no such user: {unique_id}") from None

    def has_user(self, unique_id: str) -> bool:
        return unique_id in self._users

    def user_ids(self) -> list[str]:
        return sorted(self._users)

    def user_for_key(self, public_key: str) -> UserProfile | None:
        unique_id = self._key_to_user.get(public_key)
        return self._users[unique_id] if unique_id is not None else None

    # entities

    def register_entity(self, entity: DestinationEntity) -> None:
        if not isinstance(entity.name, str) or not entity.name.strip():
            raise ValidationError("entity name must be a non-empty string")
        if not isinstance(entity.public_key, str) or not entity.public_key.strip():
            raise ValidationError("entity public_key must be a non-empty string")
        category = Category.coerce(entity.category)
        for label, value in (("priority", entity.priority), ("size", entity.size)):
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ValidationError(f"entity {label} must be an integer >= 1, got {value!r}")
        if entity.public_key in self._entities:
            raise DuplicateKey(f"entity key already registered: {entity.public_key}")
        stored = DestinationEntity(name=entity.name, public_key=entity.public_key,
                                   category=category, priority=entity.priority, size=entity.size)
        self._entities[stored.public_key] = stored
        self._log({"op": "entity", "name": stored.name, "public_key": stored.public_key,
                   "category": int(stored.category), "priority": stored.priority, "size": stored.size})

    def entity(self, public_key: str) -> DestinationEntity:
        try:
            return self._entities[public_key]
        except KeyError:
            raise UnknownEntity(f"no such entity: {public_key}") from None

    def has_entity(self, public_key: str) -> bool:
        return public_key in self._entities

    def entities(self) -> list[DestinationEntity]:
        """Catalog in deterministic order (by public key)."""
        return [self._entities[k] for k in sorted(self._entities)]

    # votes

    def append_vote(self, federation_id: str, destination_key: str) -> VoteRecord:
        self.user(federation_id)
        self.entity(destination_key)
        self._vote_sequence += 1
        record = VoteRecord(federation_id=federation_id, destination_key=destination_key,
                            sequence=self._vote_sequence)
        self._votes.append(record)
        self._log({"op": "vote", "federation_id": federation_id,
                   "destination_key": destination_key, "sequence": record.sequence})
        return record

    def votes(self) -> tuple[VoteRecord, ...]:
        return tuple(self._votes)

    def vote_counts(self, federation_id: str) -> dict[str, int]:
        """Votes cast by one user, over the full entity set (absent = 0)."""
        self.user(federation_id)
        counts = {key: 0 for key in sorted(self._entities)}
        for record in self._votes:
            if record.federation_id == federation_id:
                counts[record.destination_key] += 1
        return counts

    # journal

    def compact(self) -> None:
        """Atomically rewrite the journal as one event per current record."""
        if self._journal_path is None:
            return
        events: list[dict] = []
        for uid in sorted(self._users):
            p = self._users[uid]
            events.append({"op": "user", "unique_id": uid, "name": p.name, "mobile": p.mobile,
                           "email": p.email, "national_code": p.national_code})
            if p.public_key is not None:
                events.append({"op": "key", "unique_id": uid, "public_key": p.public_key})
            if p.interests is not None:
                events.append({"op": "interests", "unique_id": uid,
                               "ratings": {c.label: p.interests[c] for c in Category}})
        for key in sorted(self._entities):
            e = self._entities[key]
            events.append({"op": "entity", "name": e.name, "public_key": key,
                           "category": int(e.category), "priority": e.priority, "size": e.size})
        for record in self._votes:
            events.append({"op": "vote", "federation_id": record.federation_id,
                           "destination_key": record.destination_key, "sequence": record.sequence})
        payload = "".join(json.dumps(ev, sort_keys=True) + "\n" for ev in events)
        fd, tmp = tempfile.mkstemp(dir=str(self._journal_path.parent), prefix=".journal-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(payload)
            os.replace(tmp, self._journal_path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def _log(self, event: dict) -> None:
        if self._journal_path is None or self._replaying:
            return
        with self._journal_path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, sort_keys=True) + "\n")

    def _apply(self, event: dict) -> None:
        op = event.get("op")
        if op == "user":
            self.register_user(event["unique_id"], event["name"], event["mobile"],
                               event["email"], event["national_code"])
        elif op == "key":
            self.link_public_key(event["unique_id"], event["public_key"])
        elif op == "interests":
            self.record_interests(event["unique_id"], event["ratings"])
        elif op == "vote":
            record = self.append_vote(event["federation_id"], event["destination_key"])
            stored = int(event["sequence"])
            if stored != record.sequence:
                self._votes[-1] = VoteRecord(record.federation_id, record.destination_key, stored)
                self._vote_sequence = stored
        elif op == "entity":
            self.register_entity(DestinationEntity(
                name=event["name"], public_key=event["public_key"],
                category=Category.coerce(event["category"]),
                priority=event["priority"], size=event["size"]))
        else:
            raise ValidationError(f"unknown journal event: {op!r}")
