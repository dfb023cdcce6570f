"""Recommender behavior: Pearson stage, context stage, normalization, combination.

Expected values for the reference sample-data tables were derived by hand
from the scoring formula before implementation (see the Fraction
arithmetic inline); the Pearson oracle below evaluates the raw sum formula
independently of the implementation's mean-centered path.
"""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fairpool.errors import DimensionMismatch, EmptyInput, InterestsUnset, UnknownUser, ValidationError
from fairpool.recommender import (
    CollabPolicy,
    CombinationWeights,
    UserVoteVector,
    collaborative_scores,
    context_scores,
    normalize_minmax,
    pearson_similarity,
    recommend,
    vote_vector,
)
from fairpool.registry import Category

from conftest import (
    ENTITIES_SAMPLE_1,
    ENTITIES_SAMPLE_2,
    ENTITIES_SAMPLE_3,
    ENTITIES_UNIFORM,
    INTERESTS_SAMPLE_1,
    INTERESTS_SAMPLE_2,
    INTERESTS_SAMPLE_3,
    VOTES_SAMPLE_1,
    VOTES_SAMPLE_2,
    make_registry,
)


def pearson_oracle(xs, ys):
    """Raw sum-formula Pearson, exact rational core, float at the end."""
    n = len(xs)
    sum_x, sum_y = sum(xs), sum(ys)
    sum_xx = sum(x * x for x in xs)
    sum_yy = sum(y * y for y in ys)
    sum_xy = sum(x * y for x, y in zip(xs, ys))
    num = n * sum_xy - sum_x * sum_y
    den_sq = (n * sum_xx - sum_x * sum_x) * (n * sum_yy - sum_y * sum_y)
    if den_sq == 0:
        return None
    return num / math.sqrt(den_sq)


def vec(counts: dict, fid="u") -> UserVoteVector:
    return UserVoteVector(fid, counts)


class TestPearson:
    def test_self_correlation(self):
        v = vec({"a": 1, "b": 2, "c": 5})
        assert pearson_similarity(v, v) == pytest.approx(1.0)

    def test_disjoint_single_votes_match_oracle(self):
        # frozen oracle value: n=4, sums give -1 / 3
        u = vec({"a": 1, "b": 0, "c": 0, "d": 0})
        v = vec({"a": 0, "b": 1, "c": 0, "d": 0})
        got = pearson_similarity(u, v)
        assert got == pytest.approx(-1 / 3, abs=1e-12)
        assert got == pytest.approx(pearson_oracle([1, 0, 0, 0], [0, 1, 0, 0]), abs=1e-12)

    def test_constant_vector_undefined(self):
        u = vec({"a": 2, "b": 2, "c": 2})
        v = vec({"a": 1, "b": 2, "c": 3})
        assert pearson_similarity(u, v) is None
        assert pearson_similarity(v, u) is None

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            pearson_similarity(vec({"a": 1, "b": 0}), vec({"a": 1, "c": 0}))

    def test_single_entity_undefined(self):
        assert pearson_similarity(vec({"a": 3}), vec({"a": 5})) is None

    def test_oracle_equivalence_sweep(self):
        rng = random.Random(17)
        for _ in range(1000):
            n = rng.randint(2, 10)
            keys = [f"e{i}" for i in range(n)]
            xs = [rng.randint(0, 9) for _ in range(n)]
            ys = [rng.randint(0, 9) for _ in range(n)]
            got = pearson_similarity(vec(dict(zip(keys, xs))), vec(dict(zip(keys, ys))))
            want = pearson_oracle(xs, ys)
            if want is None:
                assert got is None
            else:
                assert got == pytest.approx(want, abs=1e-12)

    @given(st.lists(st.tuples(st.integers(0, 50), st.integers(0, 50)), min_size=2, max_size=12))
    @settings(max_examples=300, deadline=None)
    def test_symmetry(self, pairs):
        keys = [f"e{i}" for i in range(len(pairs))]
        u = vec({k: p[0] for k, p in zip(keys, pairs)})
        v = vec({k: p[1] for k, p in zip(keys, pairs)})
        assert pearson_similarity(u, v) == pearson_similarity(v, u)

    @given(counts=st.lists(st.tuples(st.integers(0, 20), st.integers(0, 20)), min_size=2, max_size=8),
           scale=st.integers(1, 5), shift=st.integers(0, 10))
    @settings(max_examples=300, deadline=None)
    def test_affine_invariance(self, counts, scale, shift):
        keys = [f"e{i}" for i in range(len(counts))]
        u = {k: c[0] for k, c in zip(keys, counts)}
        v = {k: c[1] for k, c in zip(keys, counts)}
        base = pearson_similarity(vec(u), vec(v))
        scaled = pearson_similarity(vec({k: scale * x + shift for k, x in u.items()}),
                                    vec({k: scale * y + shift for k, y in v.items()}))
        if base is None:
            assert scaled is None
        else:
            assert scaled == pytest.approx(base, abs=1e-9)


class TestCollaborative:
    def test_table_history_one_winner(self):
        registry = make_registry(votes=VOTES_SAMPLE_1)
        scores = collaborative_scores(registry, "user-1")
        assert scores == {"BAIRWQ": 1.0, "CAIRWQ": 0.0, "GAIRWQ": 0.0, "NNIRWQ": 0.0}

    def test_table_history_two_coequal_winners(self):
        registry = make_registry(votes=VOTES_SAMPLE_2)
        scores = collaborative_scores(registry, "user-1")
        assert scores == {"BAIRWQ": 1.0, "CAIRWQ": 1.0, "GAIRWQ": 0.0, "NNIRWQ": 0.0}

    def test_no_other_users(self):
        registry = make_registry(interests={"user-1": INTERESTS_SAMPLE_1})
        scores = collaborative_scores(registry, "user-1")
        assert set(scores.values()) == {0.0}

    def test_own_history_excluded_by_default(self):
        registry = make_registry(votes=VOTES_SAMPLE_1)
        # GAIRWQ has the joint-highest neighbor count but user-1 voted it
        assert collaborative_scores(registry, "user-1")["GAIRWQ"] == 0.0
        inclusive = collaborative_scores(registry, "user-1", CollabPolicy(exclude_own_history=False))
        assert inclusive["GAIRWQ"] == 1.0
        assert inclusive["BAIRWQ"] == 1.0

    def test_proportional_policy(self):
        registry = make_registry(votes=VOTES_SAMPLE_1)
        scores = collaborative_scores(registry, "user-1", CollabPolicy(mode="proportional"))
        # neighbor counts over non-excluded: B=3, C=1, N=0
        assert scores["BAIRWQ"] == pytest.approx(1.0)
        assert scores["CAIRWQ"] == pytest.approx(1 / 3)
        assert scores["NNIRWQ"] == pytest.approx(0.0)
        assert scores["GAIRWQ"] == 0.0

    def test_empty_target_history_uses_all_neighbors(self):
        votes = [("GAIRWQ", "user-2"), ("GAIRWQ", "user-2"), ("BAIRWQ", "user-3")]
        registry = make_registry(interests={"user-1": INTERESTS_SAMPLE_1}, votes=votes)
        scores = collaborative_scores(registry, "user-1")
        assert scores["GAIRWQ"] == 1.0
        assert scores["BAIRWQ"] == 0.0

    def test_unknown_user(self):
        registry = make_registry()
        with pytest.raises(UnknownUser):
            collaborative_scores(registry, "ghost")

    def test_bad_policy_mode(self):
        with pytest.raises(ValidationError):
            CollabPolicy(mode="magic")


# Raw context scores for sample data 2, derived by hand:
# (0.4*priority + 0.6*size) / 2 with equal interest k added to each:
#   GAIRWQ (1,6) -> 2.0 + k ; CAIRWQ (6,5) -> 2.7 + k
#   BAIRWQ (2,4) -> 1.6 + k ; NNIRWQ (2,1) -> 0.7 + k
SAMPLE_2_RAW_BASE = {
    "GAIRWQ": Fraction(2),
    "CAIRWQ": Fraction(27, 10),
    "BAIRWQ": Fraction(8, 5),
    "NNIRWQ": Fraction(7, 10),
}


class TestContextScores:
    def test_sample_2_raw_values(self):
        k = 3
        registry = make_registry(entities=ENTITIES_SAMPLE_2,
                                 interests={"user-1": {c.label if c.label != "healthcare" else "health": k
                                                       for c in Category}})
        raw = context_scores(registry, "user-1")
        assert raw == {key: base + k for key, base in SAMPLE_2_RAW_BASE.items()}

    def test_first_row_arithmetic(self):
        # priority 1, size 6, interest contributes on top: (0.4 + 3.6) / 2 = 2.0
        registry = make_registry(entities=[("charity", "GAIRWQ", 1, 1, 6)],
                                 interests={"user-1": INTERESTS_SAMPLE_1})
        raw = context_scores(registry, "user-1")
        assert raw["GAIRWQ"] == Fraction(2) + INTERESTS_SAMPLE_1["charity"]

    def test_priority_equals_size_identity(self):
        # 0.4p + 0.6p = p, so the base collapses to p/2... times 1/2 of (p+p) = p/2? no:
        # (0.4p + 0.6p)/2 = p/2; with priority == size == p the base is p/2.
        registry = make_registry(entities=[("charity", "K", 1, 4, 4)],
                                 interests={"user-1": INTERESTS_SAMPLE_1})
        raw = context_scores(registry, "user-1")
        assert raw["K"] == Fraction(4, 2) + INTERESTS_SAMPLE_1["charity"]

    def test_unit_deltas_are_exact(self):
        rng = random.Random(5)
        for _ in range(120):
            priority = rng.randint(1, 50)
            size = rng.randint(1, 200)
            rating = rng.randint(1, 5)
            base = make_registry(entities=[("charity", "K", 1, priority, size)],
                                 interests={"u": {"charity": rating, "education": 1,
                                                  "economy": 1, "health": 1}})
            bumped_p = make_registry(entities=[("charity", "K", 1, priority + 1, size)],
                                     interests={"u": {"charity": rating, "education": 1,
                                                      "economy": 1, "health": 1}})
            bumped_s = make_registry(entities=[("charity", "K", 1, priority, size + 1)],
                                     interests={"u": {"charity": rating, "education": 1,
                                                      "economy": 1, "health": 1}})
            score = context_scores(base, "u")["K"]
            assert context_scores(bumped_p, "u")["K"] - score == Fraction(2, 10)
            assert context_scores(bumped_s, "u")["K"] - score == Fraction(3, 10)

    def test_interests_unset(self):
        registry = make_registry()
        registry.register_user("user-9", name="x", mobile="1", email="a@b", national_code="1")
        with pytest.raises(InterestsUnset):
            context_scores(registry, "user-9")

    def test_strictly_increasing_in_each_input(self):
        base = make_registry(entities=ENTITIES_SAMPLE_1, interests={"u": INTERESTS_SAMPLE_1})
        score = context_scores(base, "u")["CAIRWQ"]
        higher_interest = dict(INTERESTS_SAMPLE_1, health=5)
        assert context_scores(make_registry(entities=ENTITIES_SAMPLE_1,
                                            interests={"u": higher_interest}), "u")["CAIRWQ"] > score


class TestNormalizeMinmax:
    def test_sample_2_column(self):
        raw = {k: v + 3 for k, v in SAMPLE_2_RAW_BASE.items()}
        normalized = normalize_minmax(raw)
        assert normalized == {"CAIRWQ": 1.0, "GAIRWQ": 0.65, "BAIRWQ": 0.45, "NNIRWQ": 0.0}

    def test_sample_3_column(self):
        registry = make_registry(entities=ENTITIES_SAMPLE_3,
                                 interests={"u": {"charity": 3, "education": 3, "economy": 3, "health": 3}})
        normalized = normalize_minmax(context_scores(registry, "u"))
        assert normalized["NNIRWQ"] == 1.0
        assert normalized["BAIRWQ"] == 0.0
        assert normalized["CAIRWQ"] == pytest.approx(11 / 27)
        assert normalized["GAIRWQ"] == pytest.approx(4 / 27)

    def test_degenerate_all_equal(self):
        assert normalize_minmax({"a": 5, "b": 5, "c": 5}) == {"a": 0.0, "b": 0.0, "c": 0.0}

    def test_empty_input(self):
        with pytest.raises(EmptyInput):
            normalize_minmax({})

    def test_idempotent_on_normalized(self):
        raw = {"a": 0.3, "b": 1.7, "c": -2.0, "d": 0.0}
        once = normalize_minmax(raw)
        assert normalize_minmax(once) == once

    @given(st.dictionaries(st.text(min_size=1, max_size=3), st.integers(-10**6, 10**6),
                           min_size=1, max_size=10),
           st.integers(1, 1000), st.integers(-10**6, 10**6))
    @settings(max_examples=300, deadline=None)
    def test_affine_transform_preserves_values(self, raw, scale, shift):
        base = normalize_minmax(raw)
        moved = normalize_minmax({k: Fraction(scale) * v + shift for k, v in raw.items()})
        # positive-slope affine transforms change nothing after normalization
        for key in raw:
            assert moved[key] == pytest.approx(base[key], abs=1e-12)

    @given(st.dictionaries(st.text(min_size=1, max_size=3), st.floats(-1e6, 1e6),
                           min_size=2, max_size=10))
    @settings(max_examples=300, deadline=None)
    def test_bounds_and_order(self, raw):
        normalized = normalize_minmax(raw)
        values = list(normalized.values())
        assert min(values) >= 0.0 and max(values) <= 1.0
        if len(set(raw.values())) > 1:
            assert max(values) == 1.0 and min(values) == 0.0
        ordered = sorted(raw, key=raw.__getitem__)
        for first, second in zip(ordered, ordered[1:]):
            assert normalized[first] <= normalized[second]


class TestRecommend:
    def test_interest_column_1(self):
        registry = make_registry(entities=ENTITIES_UNIFORM, interests={"user-1": INTERESTS_SAMPLE_1})
        rec = recommend(registry, "user-1", CombinationWeights(0, 1))
        scores = {c.destination_key: c.normalized_score for c in rec.candidates}
        assert scores["CAIRWQ"] == 1.0          # healthcare
        assert scores["NNIRWQ"] == pytest.approx(2 / 3)  # economy
        assert scores["GAIRWQ"] == 0.0
        assert scores["BAIRWQ"] == 0.0
        assert rec.candidates[0].destination_key == "CAIRWQ"

    def test_interest_column_3_with_tie(self):
        registry = make_registry(entities=ENTITIES_UNIFORM, interests={"user-1": INTERESTS_SAMPLE_3})
        rec = recommend(registry, "user-1", CombinationWeights(0, 1))
        scores = {c.destination_key: c.normalized_score for c in rec.candidates}
        assert scores == {"GAIRWQ": 1.0, "BAIRWQ": 0.5, "CAIRWQ": 0.5, "NNIRWQ": 0.0}
        # tie broken by key: BAIRWQ before CAIRWQ
        assert [c.destination_key for c in rec.candidates] == ["GAIRWQ", "BAIRWQ", "CAIRWQ", "NNIRWQ"]

    def test_similarity_column_2(self):
        registry = make_registry(votes=VOTES_SAMPLE_2, interests={"user-1": INTERESTS_SAMPLE_1})
        rec = recommend(registry, "user-1", CombinationWeights(1, 0))
        scores = {c.destination_key: c.normalized_score for c in rec.candidates}
        assert scores == {"BAIRWQ": 1.0, "CAIRWQ": 1.0, "GAIRWQ": 0.0, "NNIRWQ": 0.0}

    def test_sorted_descending_every_entity_once(self):
        registry = make_registry(votes=VOTES_SAMPLE_1, interests={"user-1": INTERESTS_SAMPLE_1})
        rec = recommend(registry, "user-1")
        keys = [c.destination_key for c in rec.candidates]
        assert sorted(keys) == ["BAIRWQ", "CAIRWQ", "GAIRWQ", "NNIRWQ"]
        scores = [c.normalized_score for c in rec.candidates]
        assert scores == sorted(scores, reverse=True)
        assert set(rec.stage_breakdown) == set(keys)

    def test_interests_required(self):
        registry = make_registry(votes=VOTES_SAMPLE_1)
        with pytest.raises(InterestsUnset):
            recommend(registry, "user-1", CombinationWeights(1, 0))

    def test_unknown_user(self):
        with pytest.raises(UnknownUser):
            recommend(make_registry(), "ghost")

    def test_weights_validation(self):
        with pytest.raises(ValidationError):
            CombinationWeights(0, 0)
        with pytest.raises(ValidationError):
            CombinationWeights(-1, 2)
        assert CombinationWeights(2, 2).normalized() == (0.5, 0.5)

    def test_context_only_ignores_history(self):
        interests = {"user-1": INTERESTS_SAMPLE_1}
        quiet = make_registry(entities=ENTITIES_SAMPLE_2, interests=interests)
        noisy = make_registry(entities=ENTITIES_SAMPLE_2, interests=interests, votes=VOTES_SAMPLE_1)
        w = CombinationWeights(0, 1)
        # candidate scores and order are history-free (the stage breakdown
        # still reports what the collaborative stage saw)
        assert recommend(quiet, "user-1", w).candidates == recommend(noisy, "user-1", w).candidates

    def test_collab_only_ignores_interests_and_catalog_attrs(self):
        votes = VOTES_SAMPLE_1
        a = make_registry(entities=ENTITIES_SAMPLE_1, interests={"user-1": INTERESTS_SAMPLE_1}, votes=votes)
        b = make_registry(entities=ENTITIES_SAMPLE_2, interests={"user-1": INTERESTS_SAMPLE_3}, votes=votes)
        w = CombinationWeights(1, 0)
        got_a = [(c.destination_key, c.normalized_score) for c in recommend(a, "user-1", w).candidates]
        got_b = [(c.destination_key, c.normalized_score) for c in recommend(b, "user-1", w).candidates]
        assert got_a == got_b

    @given(st.integers(-2, 2))
    @settings(max_examples=20, deadline=None)
    def test_constant_interest_shift_leaves_scores_unchanged(self, shift):
        base = {"charity": 3, "education": 2, "economy": 3, "health": 3}
        shifted = {k: v + shift for k, v in base.items()}
        if not all(1 <= v <= 5 for v in shifted.values()):
            return
        r1 = make_registry(entities=ENTITIES_SAMPLE_2, interests={"u": base})
        r2 = make_registry(entities=ENTITIES_SAMPLE_2, interests={"u": shifted})
        w = CombinationWeights(0, 1)
        got1 = [(c.destination_key, c.normalized_score) for c in recommend(r1, "u", w).candidates]
        got2 = [(c.destination_key, c.normalized_score) for c in recommend(r2, "u", w).candidates]
        assert got1 == got2

    def test_degenerate_scores_fall_back_to_key_order(self):
        registry = make_registry(entities=ENTITIES_UNIFORM,
                                 interests={"u": {"charity": 2, "education": 2, "economy": 2, "health": 2}})
        rec = recommend(registry, "u", CombinationWeights(0, 1))
        assert [c.normalized_score for c in rec.candidates] == [0.0, 0.0, 0.0, 0.0]
        assert [c.destination_key for c in rec.candidates] == ["BAIRWQ", "CAIRWQ", "GAIRWQ", "NNIRWQ"]
