"""Seeded end-to-end voting simulation.

Generates a synthetic population (random interests, funded ledger
accounts), then loops rounds of: every user votes for their top
recommendation, random fee-paying payments circulate tokens, and the
ledger distributes the round's pool. Reports payout concentration and a
per-round fairness audit. Everything derives from one PRNG seed, so a
given seed reproduces identical output bytes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import InvalidParams
from .fairness import DEFAULT_P, DEFAULT_SIZE_THRESHOLD, payout_report
from .ledger import Ledger, LedgerParams
from .recommender import CollabPolicy, CombinationWeights, DEFAULT_POLICY, DEFAULT_WEIGHTS, recommend
from .registry import Category, DestinationEntity, Registry

USER_FUNDING_RANGE = (1_000, 100_000)
ENTITY_PRIORITY_RANGE = (1, 5)
ENTITY_SIZE_RANGE = (1, 200)
PAYMENT_CAP = 10_000


@dataclass(frozen=True)
class SimulationParams:
    users: int
    entities: int
    rounds: int
    seed: int = 0
    uniform_votes: bool = False
    weights: CombinationWeights = DEFAULT_WEIGHTS
    policy: CollabPolicy = DEFAULT_POLICY
    size_threshold: int = DEFAULT_SIZE_THRESHOLD
    p_threshold: float = DEFAULT_P

    def __post_init__(self):
        if self.users < 1:
            raise InvalidParams("users must be >= 1")
        if self.entities < 1:
            raise InvalidParams("entities must be >= 1")
        if self.rounds < 0:
            raise InvalidParams("rounds must be >= 0")


@dataclass(frozen=True)
class RoundRow:
    round: int
    pool: int
    minted: int
    pool_paid: int
    carried_over: int
    top_destination: str
    top_share: float | None
    selection_rate_a0: float | None
    selection_rate_a1: float | None
    p_ratio: float | None
    p_pass: bool | None


@dataclass
class SimulationReport:
    params: SimulationParams
    rows: list[RoundRow] = field(default_factory=list)
    final_ledger: str = ""  # canonical text snapshot, reloadable as a fixture

    CSV_HEADER = ("round,pool,minted,pool_paid,carried_over,top_destination,top_share,"
                  "selection_rate_a0,selection_rate_a1,p_ratio,p_pass")

    @staticmethod
    def _fmt(value) -> str:
        if value is None:
            return ""
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, float):
            return format(value, ".4f")
        return str(value)

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        for r in self.rows:
            lines.append(",".join(self._fmt(v) for v in (
                r.round, r.pool, r.minted, r.pool_paid, r.carried_over, r.top_destination,
                r.top_share, r.selection_rate_a0, r.selection_rate_a1, r.p_ratio, r.p_pass)))
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        p = self.params
        head = (f"simulation users={p.users} entities={p.entities} rounds={p.rounds} "
                f"seed={p.seed} uniform_votes={'true' if p.uniform_votes else 'false'}")
        return head + "\n" + self.to_csv()


def _build_population(params: SimulationParams, rng: random.Random) -> tuple[Registry, Ledger, dict[str, str]]:
    registry = Registry()
    ledger = Ledger(LedgerParams(uniform_vote_weight=params.uniform_votes))

    for i in range(params.entities):
        key = f"SIM-E{i:03d}"
        category = Category((i % 4) + 1)
        registry.register_entity(DestinationEntity(
            name=category.label, public_key=key, category=category,
            priority=rng.randint(*ENTITY_PRIORITY_RANGE), size=rng.randint(*ENTITY_SIZE_RANGE)))
        ledger.create_account(key, 0)

    user_keys: dict[str, str] = {}
    for i in range(params.users):
        fid = f"user-{i:03d}"
        key = f"SIM-G{i:03d}"
        registry.register_user(fid, name=fid, mobile=f"09{i:08d}",
                               email=f"{fid}@sim.local", national_code=f"{i:010d}")
        registry.record_interests(fid, {c: rng.randint(1, 5) for c in Category})
        registry.link_public_key(fid, key)
        ledger.create_account(key, rng.randint(*USER_FUNDING_RANGE))
        user_keys[fid] = key
    return registry, ledger, user_keys


def run_simulation(params: SimulationParams) -> SimulationReport:
    rng = random.Random(params.seed)
    registry, ledger, user_keys = _build_population(params, rng)
    user_ids = sorted(user_keys)
    report = SimulationReport(params=params)

    for round_no in range(1, params.rounds + 1):
        for fid in user_ids:
            rec = recommend(registry, fid, params.weights, params.policy)
            top = rec.candidates[0].destination_key
            registry.append_vote(fid, top)
            ledger.set_inflation_destination(user_keys[fid], top)

        for _ in range(len(user_ids) if len(user_ids) >= 2 else 0):
            src, dst = rng.sample(user_ids, 2)
            src_key, dst_key = user_keys[src], user_keys[dst]
            spendable = ledger.account(src_key).balance - ledger.params.base_fee
            if spendable >= 1:
                amount = rng.randint(1, min(spendable, PAYMENT_CAP))
                ledger.submit_payment(src_key, dst_key, amount)

        result = ledger.run_inflation_round()
        if result.payouts:
            top_dest, top_paid = max(result.payouts.items(), key=lambda kv: (kv[1], kv[0]))
        else:
            top_dest, top_paid = "", 0
        top_share = top_paid / result.pool_paid if result.pool_paid > 0 else None

        audit = payout_report(registry.entities(), result.payouts,
                              size_threshold=params.size_threshold, p=params.p_threshold)
        report.rows.append(RoundRow(
            round=round_no, pool=result.pool, minted=result.minted, pool_paid=result.pool_paid,
            carried_over=result.carried_over, top_destination=top_dest, top_share=top_share,
            selection_rate_a0=audit.selection_rate_a0, selection_rate_a1=audit.selection_rate_a1,
            p_ratio=audit.p_ratio, p_pass=audit.p_pass))
    report.final_ledger = ledger.export_text()
    return report
