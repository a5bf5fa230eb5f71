import os
import argparse
import bittensor as bt


def add_args(cls, parser: argparse.ArgumentParser):

    # Engine.
    parser.add_argument(
        "--engine.name",
        type=str,
        help="Runs of this engine log under logging.logging_dir / engine.name",
        default="dcs",
    )
    parser.add_argument(
        "--engine.max_expansions",
        type=int,
        help="Give up after expanding this many composite states.",
        default=1_000_000,
    )
    parser.add_argument(
        "--engine.timeout_s",
        type=float,
        help="Wall-clock budget of one synthesis run, in seconds.",
        default=300.0,
    )

    # Composition.
    parser.add_argument(
        "--compose.max_states",
        type=int,
        help="Cap on explicitly explored product states (oracle, compose, verify).",
        default=10**7,
    )

    # Bench.
    parser.add_argument(
        "--bench.timeout_s",
        type=float,
        help="Per-row wall-clock budget, in seconds.",
        default=300.0,
    )
    parser.add_argument(
        "--bench.workers",
        type=int,
        help="Processes running bench rows in parallel. 0 runs them inline.",
        default=0,
    )
    parser.add_argument(
        "--bench.csv",
        type=str,
        help="Where the bench rows are written.",
        default=None,
    )

    # Wandb
    parser.add_argument(
        "--wandb.on", action="store_true", help="Turn on wandb.", default=False
    )
    parser.add_argument(
        "--wandb.project_name",
        type=str,
        help="The name of the project where youre sending the new run.",
        default=None,
    )
    parser.add_argument(
        "--wandb.entity",
        type=str,
        help="An entity is a username or team name where youre sending runs.",
        default=None,
    )

    bt.logging.add_args(parser)


def config(cls, args=None) -> "bt.Config":
    parser = argparse.ArgumentParser()
    add_args(cls, parser)
    return bt.config(parser, args=[] if args is None else args)


def check_config(cls, config: "bt.Config"):
    bt.logging.check_config(config)
    if config.engine.max_expansions <= 0:
        raise ValueError(f"engine.max_expansions must be positive, got {config.engine.max_expansions}")
    if config.engine.timeout_s <= 0 or config.bench.timeout_s <= 0:
        raise ValueError("timeouts must be positive")
    if config.bench.workers < 0:
        raise ValueError(f"bench.workers must be >= 0, got {config.bench.workers}")
    if config.compose.max_states <= 0:
        raise ValueError(f"compose.max_states must be positive, got {config.compose.max_states}")
    config.engine.full_path = os.path.expanduser(
        "{}/{}".format(config.logging.logging_dir, config.engine.name)
    )
    if config.wandb.on and not os.path.exists(config.engine.full_path):
        os.makedirs(config.engine.full_path)
