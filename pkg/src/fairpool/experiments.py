"""Replay of the reference scoring experiments over CSV fixtures.

Each experiment pins the stage weights so exactly one recommendation stage
drives the output: size-priority and interest run the context stage alone
(weights 0,1), similarity runs the collaborative stage alone (weights 1,0).
A fixtures directory is either a single test case (it contains
entities.csv directly) or a set of subdirectories, one test case each,
processed in name order; the result is one normalized-score column per
case, rows keyed by destination public key with category-derived display
names.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import FixtureParseError, InvalidParams, UnknownEntity, UnknownReference, UnknownUser
from .fixtures import ENTITIES_FILE, build_registry, placeholder_identity
from .recommender import CollabPolicy, CombinationWeights, DEFAULT_POLICY, recommend
from .registry import Category, Registry

EXPERIMENT_SIZE_PRIORITY = "size-priority"
EXPERIMENT_INTEREST = "interest"
EXPERIMENT_SIMILARITY = "similarity"
EXPERIMENT_SIMULATE = "simulate"

STAGE_WEIGHTS = {
    EXPERIMENT_SIZE_PRIORITY: CombinationWeights(0.0, 1.0),
    EXPERIMENT_INTEREST: CombinationWeights(0.0, 1.0),
    EXPERIMENT_SIMILARITY: CombinationWeights(1.0, 0.0),
}

NEUTRAL_RATING = 3


@dataclass(frozen=True)
class ExperimentSpec:
    """One experiment run: which command, over which fixtures, with what knobs."""

    name: str
    fixtures: Path | None = None
    out: Path | None = None
    target: str | None = None
    policy: CollabPolicy = DEFAULT_POLICY
    seed: int = 0
    rounds: int = 0
    users: int = 0
    entities: int = 0
    uniform_votes: bool = False

    def __post_init__(self):
        valid = (EXPERIMENT_SIZE_PRIORITY, EXPERIMENT_INTEREST, EXPERIMENT_SIMILARITY, EXPERIMENT_SIMULATE)
        if self.name not in valid:
            raise InvalidParams(f"unknown experiment: {self.name!r}")

    @property
    def weights(self) -> CombinationWeights | None:
        return STAGE_WEIGHTS.get(self.name)


@dataclass
class ResultTable:
    """Rows of (destination key, display name), one score column per case."""

    rows: list[tuple[str, str]]
    columns: list[str]
    values: dict[tuple[str, str], float] = field(default_factory=dict)

    def to_csv(self) -> str:
        lines = [",".join(["destination", "name"] + self.columns)]
        for key, name in self.rows:
            cells = [key, name] + [format(self.values[(key, col)], ".4f") for col in self.columns]
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        header = ["destination", "name"] + self.columns
        table = [header]
        for key, name in self.rows:
            table.append([key, name] + [format(self.values[(key, col)], ".4f") for col in self.columns])
        widths = [max(len(row[i]) for row in table) for i in range(len(header))]
        lines = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip() for row in table]
        return "\n".join(lines) + "\n"


def discover_cases(fixtures_dir: Path) -> list[tuple[str, Path]]:
    """Test cases under a fixtures directory, in deterministic name order."""
    root = Path(fixtures_dir)
    if not root.is_dir():
        raise FixtureParseError(f"fixtures directory not found: {root}")
    if (root / ENTITIES_FILE).exists():
        return [(root.name, root)]
    cases = [(d.name, d) for d in sorted(root.iterdir()) if d.is_dir() and (d / ENTITIES_FILE).exists()]
    if not cases:
        raise FixtureParseError(f"{root}: no {ENTITIES_FILE} found in directory or subdirectories")
    return cases


def _case_registry(case_dir: Path) -> Registry:
    try:
        return build_registry(case_dir)
    except (UnknownEntity, UnknownUser) as exc:
        raise UnknownReference(str(exc)) from exc


def _resolve_target(registry: Registry, requested: str | None) -> str:
    if requested is not None:
        if not registry.has_user(requested):
            raise UnknownReference(f"target user not in fixtures: {requested}")
        return requested
    users = registry.user_ids()
    if users:
        return users[0]
    # pure-catalog fixtures (size-priority) get a synthetic observer
    registry.register_user("user-1", **placeholder_identity("user-1"))
    return "user-1"


def _ensure_interests(registry: Registry, target: str) -> None:
    # equal-interest default; any constant cancels under normalization
    if registry.user(target).interests is None:
        registry.record_interests(target, {c: NEUTRAL_RATING for c in Category})


def run_experiment(spec: ExperimentSpec):
    """Run one experiment; returns a ResultTable (or a SimulationReport)."""
    if spec.name == EXPERIMENT_SIMULATE:
        from .simulate import SimulationParams, run_simulation

        return run_simulation(SimulationParams(
            users=spec.users, entities=spec.entities, rounds=spec.rounds,
            seed=spec.seed, uniform_votes=spec.uniform_votes, policy=spec.policy))

    if spec.fixtures is None:
        raise InvalidParams(f"experiment {spec.name} requires a fixtures directory")
    cases = discover_cases(Path(spec.fixtures))

    rows: list[tuple[str, str]] | None = None
    table: ResultTable | None = None
    for case_name, case_dir in cases:
        registry = _case_registry(case_dir)
        target = _resolve_target(registry, spec.target)
        _ensure_interests(registry, target)
        recommendation = recommend(registry, target, spec.weights, spec.policy)

        case_rows = [(e.public_key, e.category.label) for e in registry.entities()]
        if table is None:
            rows = case_rows
            table = ResultTable(rows=case_rows, columns=[])
        elif case_rows != rows:
            raise FixtureParseError(
                f"{case_dir}: entity catalog differs from earlier cases; "
                "one experiment compares scores over a fixed destination set"
            )
        table.columns.append(case_name)
        for candidate in recommendation.candidates:
            table.values[(candidate.destination_key, case_name)] = candidate.normalized_score
    assert table is not None
    return table
