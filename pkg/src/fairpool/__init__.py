"""fairpool: simulated token ledger with vote-weighted pool distribution,
a context-aware destination recommender, and fairness audits."""

from .errors import FairpoolError
from .ledger import Account, InflationRoundResult, Ledger, LedgerParams, PoolState, Receipt
from .recommender import (
    CollabPolicy,
    CombinationWeights,
    RecommendationList,
    ScoredCandidate,
    UserVoteVector,
    collaborative_scores,
    context_scores,
    normalize_minmax,
    pearson_similarity,
    recommend,
)
from .registry import Category, DestinationEntity, Registry, UserProfile, VoteRecord

__all__ = [
    "Account",
    "Category",
    "CollabPolicy",
    "CombinationWeights",
    "DestinationEntity",
    "FairpoolError",
    "InflationRoundResult",
    "Ledger",
    "LedgerParams",
    "PoolState",
    "Receipt",
    "RecommendationList",
    "Registry",
    "ScoredCandidate",
    "UserProfile",
    "UserVoteVector",
    "VoteRecord",
    "collaborative_scores",
    "context_scores",
    "normalize_minmax",
    "pearson_similarity",
    "recommend",
]

__version__ = "0.1.0"
