"""Two-stage ranked recommendation of voting destinations.

Stage one (collaborative) looks at the vote histories of users similar to
the target, Pearson-style, and surfaces the destinations those neighbors
picked most. Stage two (context) scores each destination from its own
attributes plus the target's interest in its category:

    score = (0.4 * priority + 0.6 * size) / 2 + interest_in_category

Priority, size and interest are integers, so context scores are computed
in exact rational arithmetic: a unit change in priority moves the raw
score by exactly 1/5 and a unit change in size by exactly 3/10. The two
stage outputs are combined as a weighted average and min-max normalized,
so the top candidate always scores 1.0 and the bottom one 0.0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple

from .errors import DimensionMismatch, EmptyInput, InterestsUnset, ValidationError
from .registry import Registry

PRIORITY_WEIGHT = Fraction(2, 10)  # 0.4 / 2
SIZE_WEIGHT = Fraction(3, 10)      # 0.6 / 2

COLLAB_TOP_COUNT = "top-count"
COLLAB_PROPORTIONAL = "proportional"


@dataclass(frozen=True)
class UserVoteVector:
    """One user's vote counts over the full registered entity set."""

    federation_id: str
    counts: dict[str, int]


@dataclass(frozen=True)
class CollabPolicy:
    """Collaborative-stage knobs.

    top-count awards 1.0 to every destination whose aggregated neighbor
    vote count is maximal (and positive), 0.0 to the rest; proportional
    min-max normalizes the aggregated counts instead. Destinations the
    target already voted for are excluded from winning unless
    exclude_own_history is turned off.
    """

    mode: str = COLLAB_TOP_COUNT
    exclude_own_history: bool = True

    def __post_init__(self):
        if self.mode not in (COLLAB_TOP_COUNT, COLLAB_PROPORTIONAL):
            raise ValidationError(f"unknown collaborative policy: {self.mode!r}")


@dataclass(frozen=True)
class CombinationWeights:
    w_collab: float = 0.5
    w_context: float = 0.5

    def __post_init__(self):
        if self.w_collab < 0 or self.w_context < 0:
            raise ValidationError("combination weights must be non-negative")
        if self.w_collab == 0 and self.w_context == 0:
            raise ValidationError("combination weights must not both be zero")

    def normalized(self) -> tuple[float, float]:
        total = self.w_collab + self.w_context
        return self.w_collab / total, self.w_context / total


class StageScores(NamedTuple):
    collab_score: float
    context_score: float


@dataclass(frozen=True)
class ScoredCandidate:
    destination_key: str
    raw_score: float
    normalized_score: float


@dataclass(frozen=True)
class RecommendationList:
    """Candidates sorted by normalized score descending, ties by key.

    stage_breakdown holds, per destination, the collaborative score and the
    min-max-normalized context score that entered the combination.
    """

    federation_id: str
    candidates: tuple[ScoredCandidate, ...]
    stage_breakdown: dict[str, StageScores]


DEFAULT_POLICY = CollabPolicy()
DEFAULT_WEIGHTS = CombinationWeights()


def vote_vector(registry: Registry, federation_id: str) -> UserVoteVector:
    return UserVoteVector(federation_id, registry.vote_counts(federation_id))


def pearson_similarity(u: UserVoteVector, v: UserVoteVector) -> float | None:
    """Pearson correlation of two vote-count vectors, None when undefined.

    Undefined when either vector has zero variance (constant counts) or
    fewer than two entities exist to correlate over.
    """
    if set(u.counts) != set(v.counts):
        raise DimensionMismatch("vote vectors cover different entity sets")
    keys = sorted(u.counts)
    n = len(keys)
    if n < 2:
        return None
    xs = [float(u.counts[k]) for k in keys]
    ys = [float(v.counts[k]) for k in keys]
    mean_x = math.fsum(xs) / n
    mean_y = math.fsum(ys) / n
    sxx = math.fsum((x - mean_x) ** 2 for x in xs)
    syy = math.fsum((y - mean_y) ** 2 for y in ys)
    if sxx == 0.0 or syy == 0.0:
        return None
    sxy = math.fsum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    return sxy / math.sqrt(sxx * syy)


def collaborative_scores(registry: Registry, target: str,
                         policy: CollabPolicy | None = None) -> dict[str, float]:
    """Score destinations from the vote histories of similar users.

    Neighbors are the other users with a defined, positive Pearson
    similarity to the target. When no such neighbor exists (the target has
    no history, a degenerate vector, or only dissimilar peers), every other
    user counts as a neighbor with equal weight; a sparse desk-scale
    population still yields a signal that way. Neighbor vote counts are
    aggregated unweighted, destinations already voted for by the target are
    excluded per policy, and the policy mode maps counts to scores.
    """
    policy = policy or DEFAULT_POLICY
    target_vec = vote_vector(registry, target)
    entity_keys = sorted(target_vec.counts)
    scores = {key: 0.0 for key in entity_keys}
    others = [uid for uid in registry.user_ids() if uid != target]
    if not others or not entity_keys:
        return scores

    vectors = {uid: vote_vector(registry, uid) for uid in others}
    neighbors = []
    for uid in others:
        similarity = pearson_similarity(target_vec, vectors[uid])
        if similarity is not None and similarity > 0:
            neighbors.append(uid)
    if not neighbors:
        neighbors = list(others)

    aggregated = {key: 0 for key in entity_keys}
    for uid in neighbors:
        for key, count in vectors[uid].counts.items():
            aggregated[key] += count

    excluded = set()
    if policy.exclude_own_history:
        excluded = {key for key, count in target_vec.counts.items() if count > 0}
    candidates = {key: aggregated[key] for key in entity_keys if key not in excluded}
    if not candidates:
        return scores

    if policy.mode == COLLAB_TOP_COUNT:
        top = max(candidates.values())
        if top > 0:
            for key, count in candidates.items():
                if count == top:
                    scores[key] = 1.0
    else:
        values = set(candidates.values())
        if len(values) > 1:
            scores.update(normalize_minmax(candidates))
    return scores


def context_scores(registry: Registry, target: str) -> dict[str, Fraction]:
    """Raw context score per entity, as exact rationals.

    score = priority/5 + size*3/10 + the target's interest rating for the
    entity's category (the (0.4p + 0.6s)/2 weighted average plus interest).
    """
    profile = registry.user(target)
    if profile.interests is None:
        raise InterestsUnset(f"user {target} has not recorded interests")
    scores: dict[str, Fraction] = {}
    for entity in registry.entities():
        base = PRIORITY_WEIGHT * entity.priority + SIZE_WEIGHT * entity.size
        scores[entity.public_key] = base + profile.interests[entity.category]
    return scores


def normalize_minmax(raw: Mapping[str, object]) -> dict[str, float]:
    """Map values to [0, 1] via (x - min) / (max - min).

    All-equal input maps to all zeros (nothing stands out, nothing shown as
    best). Exact over Fraction inputs; idempotent on non-degenerate output.
    """
    if not raw:
        raise EmptyInput("cannot normalize an empty score map")
    values = list(raw.values())
    low = min(values)
    high = max(values)
    if low == high:
        return {key: 0.0 for key in raw}
    span = high - low
    return {key: float((value - low) / span) for key, value in raw.items()}


def recommend(registry: Registry, target: str,
              weights: CombinationWeights | None = None,
              policy: CollabPolicy | None = None) -> RecommendationList:
    """Full two-stage recommendation for one user.

    Combined raw score per entity is
    w_collab * collab + w_context * minmax(context); the combined scores
    are min-max normalized again and sorted descending, ties broken by
    destination key ascending. Every registered entity appears exactly
    once.
    """
    w_collab, w_context = (weights or DEFAULT_WEIGHTS).normalized()
    context_raw = context_scores(registry, target)
    if not context_raw:
        return RecommendationList(federation_id=target, candidates=(), stage_breakdown={})
    context = normalize_minmax(context_raw)
    collab = collaborative_scores(registry, target, policy)

    combined = {key: w_collab * collab[key] + w_context * context[key] for key in context}
    normalized = normalize_minmax(combined)
    order = sorted(combined, key=lambda key: (-normalized[key], key))
    candidates = tuple(
        ScoredCandidate(destination_key=key, raw_score=combined[key], normalized_score=normalized[key])
        for key in order
    )
    breakdown = {key: StageScores(collab[key], context[key]) for key in order}
    return RecommendationList(federation_id=target, candidates=candidates, stage_breakdown=breakdown)
