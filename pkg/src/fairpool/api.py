"""HTTP JSON gateway over the registry, recommender, ledger, and audits.

All routes live under /v1 and speak application/json. Requests carry the
caller's federation id explicitly; the server keeps no session state.
Every domain error surfaces as its stable machine code with the mapped
status. Scores are serialized with 4 decimal places, round-half-even,
which is the wire format's only lossy point.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel

from .errors import FairpoolError, ValidationError
from .fairness import DEFAULT_P, DEFAULT_SIZE_THRESHOLD, payout_report
from .fixtures import build_registry
from .ledger import Ledger, LedgerParams, Receipt
from .recommender import (
    CollabPolicy,
    CombinationWeights,
    DEFAULT_POLICY,
    DEFAULT_WEIGHTS,
    RecommendationList,
    recommend,
)
from .registry import Registry

DEFAULT_FUNDING_BALANCE = 10_000


@dataclass
class GatewayConfig:
    weights: CombinationWeights = DEFAULT_WEIGHTS
    policy: CollabPolicy = DEFAULT_POLICY
    size_threshold: int = DEFAULT_SIZE_THRESHOLD
    p_threshold: float = DEFAULT_P
    funding_balance: int = DEFAULT_FUNDING_BALANCE


@dataclass
class GatewayState:
    """Shared application state; mutations funnel through one lock."""

    registry: Registry = field(default_factory=Registry)
    ledger: Ledger = field(default_factory=Ledger)
    config: GatewayConfig = field(default_factory=GatewayConfig)
    lock: threading.RLock = field(default_factory=threading.RLock)

    @classmethod
    def from_fixtures(cls, fixtures_dir: str | Path,
                      config: GatewayConfig | None = None,
                      ledger_params: LedgerParams | None = None) -> "GatewayState":
        """Build serving state from a fixtures directory.

        Every destination entity gets a zero-balance ledger account so
        votes can flow through to inflation destinations.
        """
        state = cls(registry=build_registry(fixtures_dir),
                    ledger=Ledger(ledger_params),
                    config=config or GatewayConfig())
        for entity in state.registry.entities():
            state.ledger.create_account(entity.public_key, 0)
        return state


def load_route_manifest() -> dict:
    return json.loads(resources.files("fairpool").joinpath("route_manifest.json").read_text("utf-8"))


class UserIn(BaseModel):
    unique_id: str
    name: str
    mobile: str
    email: str
    national_code: str


class InterestsIn(BaseModel):
    charity: int
    education: int
    economy: int
    health: int


class KeyIn(BaseModel):
    public_key: str


class VoteIn(BaseModel):
    federation_id: str
    destination_key: str


class PaymentIn(BaseModel):
    src: str
    dst: str
    amount: int


def _score(value: float) -> float:
    return round(value, 4)


def _profile_doc(profile) -> dict:
    interests = None
    if profile.interests is not None:
        interests = {c.label: rating for c, rating in profile.interests.items()}
    return {
        "unique_id": profile.unique_id,
        "name": profile.name,
        "mobile": profile.mobile,
        "email": profile.email,
        "national_code": profile.national_code,
        "public_key": profile.public_key,
        "interests": interests,
    }


def _entity_doc(entity) -> dict:
    return {
        "name": entity.name,
        "public_key": entity.public_key,
        "category": int(entity.category),
        "category_label": entity.category.label,
        "priority": entity.priority,
        "size": entity.size,
    }


def _receipt_doc(receipt: Receipt) -> dict:
    return {
        "sequence": receipt.sequence,
        "kind": receipt.kind,
        "src": receipt.src,
        "dst": receipt.dst,
        "amount": receipt.amount,
        "fee": receipt.fee,
    }


def _recommendation_doc(registry: Registry, rec: RecommendationList) -> dict:
    candidates = []
    for candidate in rec.candidates:
        entity = registry.entity(candidate.destination_key)
        stages = rec.stage_breakdown[candidate.destination_key]
        candidates.append({
            "destination_key": candidate.destination_key,
            "display_name": entity.category.label,
            "category": int(entity.category),
            "normalized_score": _score(candidate.normalized_score),
            "collab_score": _score(stages.collab_score),
            "context_score": _score(stages.context_score),
        })
    return {"federation_id": rec.federation_id, "candidates": candidates}


def create_app(state: GatewayState | None = None, frontend_dir: str | Path | None = None) -> FastAPI:
    state = state or GatewayState()
    app = FastAPI(title="fairpool gateway", docs_url=None, redoc_url=None, openapi_url=None)

    @app.exception_handler(FairpoolError)
    async def domain_error(_request: Request, exc: FairpoolError):
        return JSONResponse(status_code=exc.http_status,
                            content={"code": exc.code, "message": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def malformed_request(_request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400,
                            content={"code": "validation_error", "message": str(exc.errors())})

    @app.get("/v1/manifest")
    def manifest():
        return load_route_manifest()

    @app.post("/v1/users", status_code=201)
    def register_user(body: UserIn):
        with state.lock:
            profile = state.registry.register_user(
                unique_id=body.unique_id, name=body.name, mobile=body.mobile,
                email=body.email, national_code=body.national_code)
        return _profile_doc(profile)

    @app.get("/v1/users/{id}")
    def get_user(id: str):
        return _profile_doc(state.registry.user(id))

    @app.put("/v1/users/{id}/interests", status_code=204)
    def set_interests(id: str, body: InterestsIn):
        with state.lock:
            state.registry.record_interests(id, {
                "charity": body.charity, "education": body.education,
                "economy": body.economy, "health": body.health})
        return Response(status_code=204)

    @app.post("/v1/users/{id}/key", status_code=201)
    def link_key(id: str, body: KeyIn):
        with state.lock:
            state.registry.link_public_key(id, body.public_key)
            if not state.ledger.has_account(body.public_key):
                state.ledger.create_account(body.public_key, state.config.funding_balance)
            balance = state.ledger.account(body.public_key).balance
        return {"public_key": body.public_key, "balance": balance}

    @app.get("/v1/entities")
    def list_entities():
        return [_entity_doc(e) for e in state.registry.entities()]

    @app.get("/v1/recommendations/{id}")
    def recommendations(id: str,
                        w_collab: float | None = Query(default=None),
                        w_context: float | None = Query(default=None),
                        policy: str | None = Query(default=None)):
        weights = state.config.weights
        if w_collab is not None or w_context is not None:
            if w_collab is None or w_context is None:
                raise ValidationError("w_collab and w_context must be supplied together")
            weights = CombinationWeights(w_collab, w_context)
        collab_policy = state.config.policy if policy is None else CollabPolicy(mode=policy)
        rec = recommend(state.registry, id, weights, collab_policy)
        return _recommendation_doc(state.registry, rec)

    @app.post("/v1/votes", status_code=201)
    def cast_vote(body: VoteIn):
        with state.lock:
            record = state.registry.append_vote(body.federation_id, body.destination_key)
            profile = state.registry.user(body.federation_id)
            ledger_update = (
                profile.public_key is not None
                and state.ledger.has_account(profile.public_key)
                and state.ledger.has_account(body.destination_key)
            )
            if ledger_update:
                state.ledger.set_inflation_destination(profile.public_key, body.destination_key)
        return {
            "federation_id": record.federation_id,
            "destination_key": record.destination_key,
            "sequence": record.sequence,
            "ledger_update": ledger_update,
        }

    @app.post("/v1/payments", status_code=201)
    def submit_payment(body: PaymentIn):
        with state.lock:
            receipt = state.ledger.submit_payment(body.src, body.dst, body.amount)
        return _receipt_doc(receipt)

    @app.get("/v1/ledger/accounts/{key}")
    def get_account(key: str):
        account = state.ledger.account(key)
        return {
            "public_key": account.public_key,
            "balance": account.balance,
            "inflation_destination": account.inflation_destination,
        }

    @app.get("/v1/ledger/accounts/{key}/history")
    def account_history(key: str):
        return [_receipt_doc(r) for r in state.ledger.get_history(key)]

    @app.post("/v1/inflation/run")
    def run_inflation(audit: int = Query(default=0)):
        with state.lock:
            result = state.ledger.run_inflation_round()
        doc = {
            "minted": result.minted,
            "fees_consumed": result.fees_consumed,
            "carryover_consumed": result.carryover_consumed,
            "pool": result.pool,
            "pool_paid": result.pool_paid,
            "payouts": result.payouts,
            "carried_over": result.carried_over,
        }
        if audit:
            report = payout_report(state.registry.entities(), result.payouts,
                                   size_threshold=state.config.size_threshold,
                                   p=state.config.p_threshold)
            doc["fairness"] = report.to_flat_dict()
        return doc

    if frontend_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(frontend_dir), html=True), name="frontend")

    return app
