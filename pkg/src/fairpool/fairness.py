"""Fairness audits over recommendation outputs and payout rounds.

The auditors treat a run of the system as data: which entities were
selected (top-k of a recommendation list, or paid in a distribution
round), which group each entity falls into under a binary sensitive
attribute, and optionally which entities are externally labeled as
qualified. None of these metrics feed back into ranking; they report.

Sensitive attribute derivation defaults to size: entities serving at
least ``size_threshold`` people are the "large" group (A = 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    BothZero,
    EmptyGroup,
    NoQualifiedMembers,
    UnknownEntity,
    ValidationError,
)
from .recommender import RecommendationList
from .registry import DestinationEntity

DEFAULT_SIZE_THRESHOLD = 100
DEFAULT_P = 0.8
DEFAULT_LIPSCHITZ = 1.0


def derive_sensitive_attr(entities: Iterable[DestinationEntity],
                          size_threshold: int = DEFAULT_SIZE_THRESHOLD) -> dict[str, int]:
    """A = 1 for entities at or above the size threshold, else 0."""
    return {e.public_key: int(e.size >= size_threshold) for e in entities}


def top_k_selection(recommendation: RecommendationList, k: int = 1) -> dict[str, int]:
    """C = 1 for entities in the top k of the list, 0 for the rest."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    chosen = {c.destination_key for c in recommendation.candidates[:k]}
    return {c.destination_key: int(c.destination_key in chosen) for c in recommendation.candidates}


def payout_selection(payouts: Mapping[str, int], population: Iterable[str]) -> dict[str, int]:
    """C = 1 for entities that received any payout in a round."""
    return {key: int(payouts.get(key, 0) > 0) for key in population}


def _group_members(outcomes: Mapping[str, int], attr: Mapping[str, int], group: int) -> list[str]:
    members = []
    for key in outcomes:
        try:
            a = attr[key]
        except KeyError:
            raise ValidationError(f"sensitive attribute missing for {key}") from None
        if a == group:
            members.append(key)
    return members


def selection_rates(outcomes: Mapping[str, int], attr: Mapping[str, int]) -> tuple[float, float]:
    """Per-group selection rates (rate for A=0, rate for A=1)."""
    rates = []
    for group in (0, 1):
        members = _group_members(outcomes, attr, group)
        if not members:
            raise EmptyGroup(f"group A={group} has no members")
        selected = sum(1 for key in members if outcomes[key])
        rates.append(selected / len(members))
    return rates[0], rates[1]


def p_percent_rule(rates: tuple[float, float], p: float = DEFAULT_P) -> tuple[float, bool]:
    """Ratio of the smaller selection rate to the larger, pass iff >= p."""
    rate_a0, rate_a1 = rates
    if rate_a0 < 0 or rate_a1 < 0:
        raise ValidationError("selection rates must be non-negative")
    if rate_a0 == 0 and rate_a1 == 0:
        raise BothZero("both selection rates are zero")
    ratio = min(rate_a0, rate_a1) / max(rate_a0, rate_a1)
    return ratio, ratio >= p


def equal_opportunity_gap(outcomes: Mapping[str, int], attr: Mapping[str, int],
                          labels: Mapping[str, int]) -> float:
    """|P[C=1 | Y=1, A=0] - P[C=1 | Y=1, A=1]|; 0 means the criterion holds."""
    probs = []
    for group in (0, 1):
        qualified = [key for key in _group_members(outcomes, attr, group) if labels.get(key, 0) == 1]
        if not qualified:
            raise NoQualifiedMembers(f"group A={group} has no qualified (Y=1) members")
        selected = sum(1 for key in qualified if outcomes[key])
        probs.append(selected / len(qualified))
    return abs(probs[0] - probs[1])


def awareness_check(recommend_fn: Callable[[str, Mapping[str, int]], RecommendationList],
                    target_user: str, entity_key: str, labels: Mapping[str, int]) -> bool:
    """True iff flipping only one entity's sensitive label leaves that
    entity's normalized score and rank unchanged.

    recommend_fn receives the target user and a full sensitive labeling;
    a recommender that ignores the labeling (as the shipped one does)
    passes for every entity.
    """
    if entity_key not in labels:
        raise UnknownEntity(f"no sensitive label for entity: {entity_key}")
    flipped = dict(labels)
    flipped[entity_key] = 1 - int(labels[entity_key])

    def locate(rec: RecommendationList) -> tuple[int, float]:
        for rank, candidate in enumerate(rec.candidates):
            if candidate.destination_key == entity_key:
                return rank, candidate.normalized_score
        raise UnknownEntity(f"entity {entity_key} missing from recommendation output")

    base_rank, base_score = locate(recommend_fn(target_user, dict(labels)))
    flip_rank, flip_score = locate(recommend_fn(target_user, flipped))
    return base_rank == flip_rank and base_score == flip_score


def feature_metric(w_category: float = 1.0, w_priority: float = 0.2,
                   w_size: float = 0.3) -> Callable[[DestinationEntity, DestinationEntity], float]:
    """Weighted distance over (category one-hot, priority, size).

    The defaults mirror the context-score coefficients, making the raw
    context score 1-Lipschitz in priority and size under this metric.
    """

    def metric(e1: DestinationEntity, e2: DestinationEntity) -> float:
        d = 0.0
        if e1.category != e2.category:
            d += w_category
        d += w_priority * abs(e1.priority - e2.priority)
        d += w_size * abs(e1.size - e2.size)
        return d

    return metric


def individual_fairness_check(
    score_fn: Callable[[DestinationEntity], float],
    metric_fn: Callable[[DestinationEntity, DestinationEntity], float],
    entity_pairs: Iterable[tuple[DestinationEntity, DestinationEntity]],
    lipschitz_bound: float = DEFAULT_LIPSCHITZ,
) -> list[tuple[DestinationEntity, DestinationEntity]]:
    """All pairs whose score difference exceeds bound * distance.

    An infinite bound is the "unbounded" sentinel and never flags a pair.
    """
    violations = []
    for e1, e2 in entity_pairs:
        delta = abs(score_fn(e1) - score_fn(e2))
        if delta > lipschitz_bound * metric_fn(e1, e2):
            violations.append((e1, e2))
    return violations


@dataclass(frozen=True)
class FairnessReport:
    """Flat audit summary; fields whose inputs were unavailable are None.

    eo_gap needs externally supplied qualification labels, awareness_pass a
    sweepable recommender, lipschitz_violations a score function; a payout
    round on its own provides none of those.
    """

    selection_rate_a0: float | None
    selection_rate_a1: float | None
    p_ratio: float | None
    p_pass: bool | None
    eo_gap: float | None
    awareness_pass: bool | None
    lipschitz_violations: int | None

    def to_flat_dict(self) -> dict[str, str]:
        def fmt(value) -> str:
            if value is None:
                return ""
            if isinstance(value, bool):
                return "true" if value else "false"
            if isinstance(value, float):
                return format(value, ".4f")
            return str(value)

        return {
            "selection_rate_a0": fmt(self.selection_rate_a0),
            "selection_rate_a1": fmt(self.selection_rate_a1),
            "p_ratio": fmt(self.p_ratio),
            "p_pass": fmt(self.p_pass),
            "eo_gap": fmt(self.eo_gap),
            "awareness_pass": fmt(self.awareness_pass),
            "lipschitz_violations": fmt(self.lipschitz_violations),
        }

    def to_text(self) -> str:
        return "\n".join(f"{key}={value}" for key, value in self.to_flat_dict().items()) + "\n"


def payout_report(entities: Sequence[DestinationEntity], payouts: Mapping[str, int],
                  size_threshold: int = DEFAULT_SIZE_THRESHOLD, p: float = DEFAULT_P,
                  labels: Mapping[str, int] | None = None) -> FairnessReport:
    """Audit one distribution round's payouts across the size groups.

    Group rates degrade to None when a group is empty; the p-rule fields
    degrade to None when no entity was paid at all.
    """
    attr = derive_sensitive_attr(entities, size_threshold)
    outcomes = payout_selection(payouts, [e.public_key for e in entities])
    rate_a0 = rate_a1 = p_ratio = None
    p_pass = None
    try:
        rate_a0, rate_a1 = selection_rates(outcomes, attr)
        p_ratio, p_pass = p_percent_rule((rate_a0, rate_a1), p)
    except (EmptyGroup, BothZero):
        pass
    eo_gap = None
    if labels is not None:
        try:
            eo_gap = equal_opportunity_gap(outcomes, attr, labels)
        except (NoQualifiedMembers, EmptyGroup):
            pass
    return FairnessReport(
        selection_rate_a0=rate_a0,
        selection_rate_a1=rate_a1,
        p_ratio=p_ratio,
        p_pass=p_pass,
        eo_gap=eo_gap,
        awareness_pass=None,
        lipschitz_violations=None,
    )
