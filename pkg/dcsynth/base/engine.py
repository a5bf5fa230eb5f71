import copy
import json
import wandb
import argparse
import bittensor as bt

from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, TYPE_CHECKING

from .config import config, check_config

if TYPE_CHECKING:
    from dcsynth.engine.controller import Controller
    from dcsynth.lts.lts import ControlProblem


class Verdict(str, Enum):
    CONTROLLER = "controller"
    NONE = "none"
    TIMEOUT = "timeout"
    OUT_OF_MEMORY = "out-of-memory"


@dataclass
class SynthesisStats:
    expanded: int = 0
    abstractions_built: int = 0
    peak_open: int = 0
    wall_ms: float = 0.0
    verdict: str = Verdict.NONE.value

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass
class EngineRun:
    verdict: Verdict
    stats: SynthesisStats = field(default_factory=SynthesisStats)
    controller: Optional["Controller"] = None
    extra: Dict[str, Any] = field(default_factory=dict)


class BaseEngine(ABC):
    """Shared scaffolding of the synthesis engines: config merge, caps and optional wandb tracking."""

    @classmethod
    def config(cls, args=None) -> "bt.Config":
        return config(cls, args)

    @classmethod
    @abstractmethod
    def add_args(cls, parser: argparse.ArgumentParser):
        ...

    @abstractmethod
    def solve(self, problem: "ControlProblem") -> EngineRun:
        ...

    def __init__(self, config: "bt.Config" = None):

        # Grab super config.
        super_config = copy.deepcopy(config or BaseEngine.config())

        # Grab child config, then overwrite from the super config.
        self.config = self.config()
        self.config.merge(super_config)
        check_config(BaseEngine, self.config)

        if self.config.wandb.on:
            wandb.init(
                project=self.config.wandb.project_name,
                entity=self.config.wandb.entity,
                config=self.config,
                mode="online" if self.config.wandb.on else "offline",
                dir=self.config.engine.full_path,
            )

    def log_run(self, run: EngineRun, **fields):
        step_log = dict(run.stats.to_dict(), **fields)
        bt.logging.debug(str(step_log))
        if self.config.wandb.on:
            wandb.log(step_log)
