"""Deterministic in-process token ledger with fee pooling and vote payouts.

Balances are integers in the smallest token unit. Every payment charges a
flat fee that accumulates in a collective pool. ``run_inflation_round``
mints new tokens at the configured rate, adds the pooled fees plus any
carryover from earlier rounds, and splits the total among the destinations
that account holders have nominated, proportionally to vote weight.

All rate parameters are exact rationals (``Fraction``), payouts use floor
division, and the integer remainder rolls into the next round, so
``pool_paid + carried_over`` always equals the pre-round pool exactly and
total supply is conserved to the unit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DuplicateKey,
    InsufficientBalance,
    NonPositiveAmount,
    UnknownAccount,
    ValidationError,
)


def _as_fraction(value, name: str) -> Fraction:
    """Coerce a rate parameter to an exact Fraction.

    Floats go through their decimal string form, so 0.0001 means 1/10000
    rather than the nearest binary float.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValidationError(f"{name} must be a number")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (float, str)):
        try:
            return Fraction(str(value))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"{name}: cannot parse {value!r}") from exc
    raise ValidationError(f"{name} must be a number, got {type(value).__name__}")


@dataclass(frozen=True)
class LedgerParams:
    """Ledger configuration.

    base_fee: flat fee charged on every payment, in token units.
    inflation_rate_per_round: fraction of total supply minted per round.
    min_vote_fraction: share of the total vote weight a destination needs
        to qualify for a payout.
    uniform_vote_weight: if true, every voting account counts as weight 1;
        otherwise a voter's weight is its balance (stake-weighted).
    """

    base_fee: int = 100
    inflation_rate_per_round: Fraction = Fraction(1, 10000)
    min_vote_fraction: Fraction = Fraction(1, 2000)
    uniform_vote_weight: bool = False

    def __post_init__(self):
        if not isinstance(self.base_fee, int) or isinstance(self.base_fee, bool) or self.base_fee < 1:
            raise ValidationError("base_fee must be an integer >= 1")
        rate = _as_fraction(self.inflation_rate_per_round, "inflation_rate_per_round")
        if not (0 <= rate < 1):
            raise ValidationError("inflation_rate_per_round must be in [0, 1)")
        frac = _as_fraction(self.min_vote_fraction, "min_vote_fraction")
        if not (0 <= frac <= 1):
            raise ValidationError("min_vote_fraction must be in [0, 1]")
        object.__setattr__(self, "inflation_rate_per_round", rate)
        object.__setattr__(self, "min_vote_fraction", frac)


@dataclass
class Account:
    public_key: str
    balance: int
    inflation_destination: str | None = None


@dataclass
class PoolState:
    collected_fees: int = 0
    carryover: int = 0


@dataclass(frozen=True)
class Receipt:
    """One ledger credit/debit event, globally sequence-numbered.

    kind is "payment" (src pays dst plus fee) or "inflation" (pool payout,
    src is None). Folding an account's receipts over its genesis balance
    re-derives its current balance exactly.
    """

    sequence: int
    kind: str
    src: str | None
    dst: str
    amount: int
    fee: int


@dataclass(frozen=True)
class InflationRoundResult:
    """Outcome of one distribution round.

    pool == minted + fees_consumed + carryover_consumed, and
    pool == pool_paid + carried_over, both as exact integers.
    vote_weights holds the per-destination weight sums used for
    qualification and proportional shares.
    """

    minted: int
    fees_consumed: int
    carryover_consumed: int
    pool: int
    pool_paid: int
    payouts: dict[str, int]
    carried_over: int
    vote_weights: dict[str, int]
    total_vote_weight: int


class Ledger:
    """Single-writer token ledger.

    All mutating calls are expected to be serialized by the caller; reads
    never observe a half-applied round because rounds are computed fully
    before any balance is credited.
    """

    def __init__(self, params: LedgerParams | None = None):
        self.params = params or LedgerParams()
        self.pool = PoolState()
        self._accounts: dict[str, Account] = {}
        self._genesis: dict[str, int] = {}
        self._receipts: list[Receipt] = []
        self._sequence = 0
        self._total_supply = 0
        self._total_minted = 0

    # inspection

    @property
    def total_supply(self) -> int:
        """All tokens ever created: genesis funding plus minted inflation."""
        return self._total_supply

    @property
    def total_minted(self) -> int:
        return self._total_minted

    def account(self, public_key: str) -> Account:
        try:
            return self._accounts[public_key]
        except KeyError:
            raise UnknownAccount(f"no such account: {public_key}") from None

    def has_account(self, public_key: str) -> bool:
        return public_key in self._accounts

    def accounts(self) -> list[Account]:
        """All accounts, ordered by public key."""
        return [self._accounts[k] for k in sorted(self._accounts)]

    def genesis_balance(self, public_key: str) -> int:
        self.account(public_key)
        return self._genesis[public_key]

    # mutations

    def create_account(self, public_key: str, starting_balance: int = 0) -> Account:
        if not isinstance(public_key, str) or not public_key or public_key != public_key.strip() or any(c.isspace() for c in public_key):
            raise ValidationError("public_key must be a non-empty string without whitespace")
        if not isinstance(starting_balance, int) or isinstance(starting_balance, bool) or starting_balance < 0:
            raise ValidationError("starting_balance must be an integer >= 0")
        if public_key in self._accounts:
            raise DuplicateKey(f"account already exists: {public_key}")
        account = Account(public_key=public_key, balance=starting_balance)
        self._accounts[public_key] = account
        self._genesis[public_key] = starting_balance
        self._total_supply += starting_balance
        return account

    def submit_payment(self, src: str, dst: str, amount: int) -> Receipt:
        source = self.account(src)
        self.account(dst)
        if not isinstance(amount, int) or isinstance(amount, bool) or amount <= 0:
            raise NonPositiveAmount(f"payment amount must be a positive integer, got {amount!r}")
        fee = self.params.base_fee
        if source.balance < amount + fee:
            raise InsufficientBalance(
                f"{src} holds {source.balance}, needs {amount + fee} (amount {amount} + fee {fee})"
            )
        source.balance -= amount + fee
        self._accounts[dst].balance += amount
        self.pool.collected_fees += fee
        return self._record("payment", src, dst, amount, fee)

    def set_inflation_destination(self, account: str, dest: str) -> None:
        acct = self.account(account)
        self.account(dest)
        acct.inflation_destination = dest

    def run_inflation_round(self) -> InflationRoundResult:
        minted = math.floor(self.params.inflation_rate_per_round * self._total_supply)
        fees = self.pool.collected_fees
        carry_in = self.pool.carryover
        pool_total = minted + fees + carry_in

        weights: dict[str, int] = {}
        for key in sorted(self._accounts):
            acct = self._accounts[key]
            if acct.inflation_destination is None:
                continue
            w = 1 if self.params.uniform_vote_weight else acct.balance
            weights[acct.inflation_destination] = weights.get(acct.inflation_destination, 0) + w
        total_weight = sum(weights.values())

        winners = [
            d
            for d in sorted(weights)
            if weights[d] > 0
            and total_weight > 0
            and Fraction(weights[d], total_weight) >= self.params.min_vote_fraction
        ]

        payouts: dict[str, int] = {}
        if winners:
            winner_weight = sum(weights[d] for d in winners)
            payouts = {d: pool_total * weights[d] // winner_weight for d in winners}
        paid = sum(payouts.values())
        carried = pool_total - paid

        self._total_supply += minted
        self._total_minted += minted
        self.pool.collected_fees = 0
        self.pool.carryover = carried
        for dest, amount in payouts.items():
            self._accounts[dest].balance += amount
            if amount > 0:
                self._record("inflation", None, dest, amount, 0)

        return InflationRoundResult(
            minted=minted,
            fees_consumed=fees,
            carryover_consumed=carry_in,
            pool=pool_total,
            pool_paid=paid,
            payouts=payouts,
            carried_over=carried,
            vote_weights=dict(sorted(weights.items())),
            total_vote_weight=total_weight,
        )

    def get_history(self, account: str) -> list[Receipt]:
        self.account(account)
        return [r for r in self._receipts if r.src == account or r.dst == account]

    def _record(self, kind: str, src: str | None, dst: str, amount: int, fee: int) -> Receipt:
        self._sequence += 1
        receipt = Receipt(sequence=self._sequence, kind=kind, src=src, dst=dst, amount=amount, fee=fee)
        self._receipts.append(receipt)
        return receipt

    # canonical text snapshot, used by experiment fixtures

    def export_text(self) -> str:
        """Serialize params, pool, and accounts as a canonical text document.

        One line per account (key, balance, destination or "-"), sorted by
        key; integers in decimal; rates as exact fractions. History is not
        part of the snapshot.
        """
        p = self.params
        lines = [
            "fairpool-ledger v1",
            f"params base_fee={p.base_fee} inflation_rate={p.inflation_rate_per_round}"
            f" min_vote_fraction={p.min_vote_fraction} uniform_vote_weight={int(p.uniform_vote_weight)}",
            f"pool collected_fees={self.pool.collected_fees} carryover={self.pool.carryover}",
        ]
        for key in sorted(self._accounts):
            acct = self._accounts[key]
            dest = acct.inflation_destination if acct.inflation_destination is not None else "-"
            lines.append(f"account {key} {acct.balance} {dest}")
        return "\n".join(lines) + "\n"

    @classmethod
    def import_text(cls, document: str) -> "Ledger":
        """Rebuild a ledger from ``export_text`` output.

        The imported state starts a fresh conservation baseline: imported
        balances count as genesis and minted resets to zero.
        """
        lines = [ln for ln in document.splitlines() if ln.strip()]
        if not lines or lines[0] != "fairpool-ledger v1":
            raise ValidationError("not a fairpool ledger document")

        def fields(line: str, tag: str) -> dict[str, str]:
            parts = line.split()
            if parts[0] != tag:
                raise ValidationError(f"expected {tag} line, got: {line}")
            return dict(part.split("=", 1) for part in parts[1:])

        try:
            praw = fields(lines[1], "params")
            params = LedgerParams(
                base_fee=int(praw["base_fee"]),
                inflation_rate_per_round=Fraction(praw["inflation_rate"]),
                min_vote_fraction=Fraction(praw["min_vote_fraction"]),
                uniform_vote_weight=bool(int(praw["uniform_vote_weight"])),
            )
            pool_raw = fields(lines[2], "pool")
        except (KeyError, ValueError, IndexError) as exc:
            raise ValidationError(f"malformed ledger document: {exc}") from exc

        ledger = cls(params)
        destinations: dict[str, str] = {}
        for line in lines[3:]:
            parts = line.split()
            if len(parts) != 4 or parts[0] != "account":
                raise ValidationError(f"malformed account line: {line}")
            _, key, balance, dest = parts
            ledger.create_account(key, int(balance))
            if dest != "-":
                destinations[key] = dest
        for key, dest in destinations.items():
            ledger.set_inflation_destination(key, dest)
        ledger.pool.collected_fees = int(pool_raw["collected_fees"])
        ledger.pool.carryover = int(pool_raw["carryover"])
        # pool tokens are part of supply: genesis accounting includes them
        ledger._total_supply += ledger.pool.collected_fees + ledger.pool.carryover
        return ledger
