"""Command-line harness: experiment replays, seeded simulations, serving.

Exit codes: 0 on success, 2 on fixture/parameter errors, 3 on reference
errors (fixtures naming users or entities that do not resolve).
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .errors import FairpoolError, FixtureParseError, InvalidParams, UnknownReference
from .experiments import (
    EXPERIMENT_INTEREST,
    EXPERIMENT_SIMILARITY,
    EXPERIMENT_SIZE_PRIORITY,
    ExperimentSpec,
    run_experiment,
)
from .recommender import COLLAB_PROPORTIONAL, COLLAB_TOP_COUNT, CollabPolicy
from .simulate import SimulationParams, run_simulation

EXIT_FIXTURE_ERROR = 2
EXIT_REFERENCE_ERROR = 3


def _fail(exc: FairpoolError) -> None:
    click.echo(f"error ({exc.code}): {exc}", err=True)
    if isinstance(exc, UnknownReference):
        sys.exit(EXIT_REFERENCE_ERROR)
    if isinstance(exc, (FixtureParseError, InvalidParams)):
        sys.exit(EXIT_FIXTURE_ERROR)
    sys.exit(1)


def _emit(result, out: Path | None) -> None:
    click.echo(result.to_text(), nl=False)
    if out is not None:
        out.write_text(result.to_csv(), encoding="utf-8")


@click.group()
def main():
    """Collective-pool distribution toolkit."""


@main.group()
def experiment():
    """Replay a scoring experiment over a fixtures directory."""


def _experiment_command(name: str):
    @click.command(name=name)
    @click.option("--fixtures", required=True, type=click.Path(path_type=Path),
                  help="Directory with entities.csv (plus interests.csv / votes.csv), "
                       "or one subdirectory per test case.")
    @click.option("--out", type=click.Path(path_type=Path), default=None,
                  help="Also write the result as CSV to this file.")
    @click.option("--target", default=None,
                  help="Federation id to score for (default: first user in the fixtures).")
    @click.option("--policy", type=click.Choice([COLLAB_TOP_COUNT, COLLAB_PROPORTIONAL]),
                  default=COLLAB_TOP_COUNT, show_default=True)
    def command(fixtures: Path, out: Path | None, target: str | None, policy: str):
        try:
            spec = ExperimentSpec(name=name, fixtures=fixtures, out=out, target=target,
                                  policy=CollabPolicy(mode=policy))
            _emit(run_experiment(spec), out)
        except FairpoolError as exc:
            _fail(exc)

    return command


experiment.add_command(_experiment_command(EXPERIMENT_SIZE_PRIORITY))
experiment.add_command(_experiment_command(EXPERIMENT_INTEREST))
experiment.add_command(_experiment_command(EXPERIMENT_SIMILARITY))


@main.command()
@click.option("--users", required=True, type=int)
@click.option("--entities", required=True, type=int)
@click.option("--rounds", required=True, type=int)
@click.option("--seed", required=True, type=int)
@click.option("--uniform-votes", is_flag=True, default=False,
              help="Count one vote per account instead of stake-weighting by balance.")
@click.option("--out", type=click.Path(path_type=Path), default=None)
@click.option("--ledger-out", type=click.Path(path_type=Path), default=None,
              help="Write the final ledger state as a canonical text snapshot.")
def simulate(users: int, entities: int, rounds: int, seed: int, uniform_votes: bool,
             out: Path | None, ledger_out: Path | None):
    """Run a seeded multi-round voting simulation."""
    try:
        report = run_simulation(SimulationParams(
            users=users, entities=entities, rounds=rounds, seed=seed, uniform_votes=uniform_votes))
        _emit(report, out)
        if ledger_out is not None:
            ledger_out.write_text(report.final_ledger, encoding="utf-8")
    except FairpoolError as exc:
        _fail(exc)


@main.command()
@click.option("--fixtures", type=click.Path(path_type=Path), default=None,
              help="Fixture directory to preload (entities/interests/votes).")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, type=int, show_default=True)
@click.option("--frontend", type=click.Path(path_type=Path), default=None,
              help="Directory of static wallet files to serve at /.")
def serve(fixtures: Path | None, host: str, port: int, frontend: Path | None):
    """Serve the JSON gateway (and optionally the wallet UI)."""
    import uvicorn

    from .api import GatewayState, create_app

    try:
        state = GatewayState.from_fixtures(fixtures) if fixtures is not None else GatewayState()
    except FairpoolError as exc:
        _fail(exc)
        return
    app = create_app(state, frontend_dir=frontend)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
