import csv
import time
import wandb
import bittensor as bt

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import product
from typing import Iterable, List, Optional

from tqdm import tqdm

from dcsynth.base.engine import Verdict
from dcsynth.base.errors import CapExceededError, DcsError
from dcsynth.bench.transfer_line import generate_transfer_line
from dcsynth.engine.directed import DEFAULT_MAX_EXPANSIONS, synthesize
from dcsynth.fsp import load_problem
from dcsynth.lts.compose import DEFAULT_MAX_STATES, explore, product_bound
from dcsynth.oracle.solve import solve_monolithic, strategy_controller
from dcsynth.oracle.verify import verify_controller

ENGINES = ("dcs", "mono")
CSV_COLUMNS = (
    "M",
    "W",
    "C",
    "engine",
    "verdict",
    "wall_ms",
    "expanded",
    "controller_states",
    "product_bound",
    "product_exact",
)

# Above this analytic bound the exact reachable count is not computed for `dcs` rows.
EXACT_COUNT_LIMIT = 200_000


@dataclass(frozen=True)
class TlConfig:
    machines: int
    workload: int
    capacity: int
    engine: str = "dcs"
    timeout_s: float = 300.0
    max_expansions: int = DEFAULT_MAX_EXPANSIONS
    max_states: int = DEFAULT_MAX_STATES

    def __post_init__(self):
        if min(self.machines, self.workload, self.capacity) < 1:
            raise ValueError(f"transfer line parameters must be >= 1: {self.label}")
        if self.engine not in ENGINES:
            raise ValueError(f"unknown engine {self.engine!r}, expected one of {', '.join(ENGINES)}")
        if self.timeout_s <= 0 or self.max_expansions <= 0 or self.max_states <= 0:
            raise ValueError(f"caps must be positive: {self.label}")

    @property
    def label(self) -> str:
        return f"TL({self.machines},{self.workload},{self.capacity})"


@dataclass
class BenchRow:
    M: int
    W: int
    C: int
    engine: str
    verdict: str
    wall_ms: float = 0.0
    expanded: int = 0
    controller_states: Optional[int] = None
    product_bound: int = 0
    product_exact: Optional[int] = None
    # Not part of the CSV: why the row failed, if it did.
    error: Optional[str] = field(default=None, compare=False)

    @property
    def failed(self) -> bool:
        return self.error is not None

    def to_csv(self) -> dict:
        row = asdict(self)
        row.pop("error")
        return {k: "" if v is None else v for k, v in row.items()}

    @classmethod
    def from_csv(cls, record: dict) -> "BenchRow":
        def optional_int(value: str) -> Optional[int]:
            return int(value) if value != "" else None

        return cls(
            M=int(record["M"]),
            W=int(record["W"]),
            C=int(record["C"]),
            engine=record["engine"],
            verdict=record["verdict"],
            wall_ms=float(record["wall_ms"]),
            expanded=int(record["expanded"]),
            controller_states=optional_int(record["controller_states"]),
            product_bound=int(record["product_bound"]),
            product_exact=optional_int(record["product_exact"]),
        )


def small_scale_grid(engine: str = "dcs", **caps) -> List[TlConfig]:
    """The 27 small-scale configurations: M in 4..6, W and C in 1..3."""
    return [
        TlConfig(m, w, c, engine=engine, **caps)
        for m, w, c in product((4, 5, 6), (1, 2, 3), (1, 2, 3))
    ]


def _exact_count(problem, limit: int) -> Optional[int]:
    if product_bound(problem) > limit:
        return None
    try:
        return len(explore(problem, max_states=limit).states)
    except CapExceededError:
        return None


def run_row(config: TlConfig) -> BenchRow:
    """Synthesize one transfer line instance. Failures end up in the row, never raised."""
    row = BenchRow(config.machines, config.workload, config.capacity, config.engine, Verdict.NONE.value)
    started = time.monotonic()
    try:
        problem = load_problem(
            generate_transfer_line(config.machines, config.workload, config.capacity)
        )
        row.product_bound = product_bound(problem)
        if config.engine == "dcs":
            run = synthesize(problem, max_expansions=config.max_expansions, timeout_s=config.timeout_s)
            controller, row.expanded = run.controller, run.stats.expanded
            row.product_exact = _exact_count(problem, min(EXACT_COUNT_LIMIT, config.max_states))
        else:
            solution = solve_monolithic(problem, config.max_states, started + config.timeout_s)
            row.expanded = row.product_exact = len(solution.product.states)
            controller = strategy_controller(problem, solution) if solution.initial_winning else None
        row.wall_ms = (time.monotonic() - started) * 1000.0

        if controller is not None:
            report = verify_controller(problem, controller, max_states=config.max_states)
            if not report.accepted:
                row.error = "controller rejected: " + "; ".join(str(v) for v in report.violations)
                bt.logging.error(f"{config.label} [{config.engine}]: {row.error}")
                return row
            row.controller_states = len(controller)
            row.verdict = Verdict.CONTROLLER.value
    except CapExceededError as e:
        row.wall_ms = (time.monotonic() - started) * 1000.0
        row.expanded = e.stats.get("expanded", e.stats.get("states", row.expanded))
        row.verdict = (Verdict.TIMEOUT if e.kind == "timeout" else Verdict.OUT_OF_MEMORY).value
        bt.logging.warning(f"{config.label} [{config.engine}]: {e}")
    except Exception as e:
        row.wall_ms = (time.monotonic() - started) * 1000.0
        row.error = str(e) if isinstance(e, DcsError) else f"{type(e).__name__}: {e}"
        bt.logging.error(f"{config.label} [{config.engine}]: {row.error}")
    return row


def run_bench(
    configs: Iterable[TlConfig],
    csv_path: Optional[str] = None,
    workers: int = 0,
    wandb_on: bool = False,
) -> List[BenchRow]:
    """Run every configuration, in input order, and optionally write the rows as CSV.

    With `workers` > 0 rows run in a process pool; rows are still reported and written in order.
    """
    configs = list(configs)
    rows: List[BenchRow] = []
    if workers > 0:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = pool.map(run_row, configs)
            for config, row in tqdm(zip(configs, results), total=len(configs), desc="bench"):
                rows.append(_report(config, row, wandb_on))
    else:
        for config in tqdm(configs, desc="bench"):
            rows.append(_report(config, run_row(config), wandb_on))

    if csv_path is not None:
        write_csv(rows, csv_path)
    failed = sum(row.failed for row in rows)
    bt.logging.success(f"bench finished: {len(rows)} rows, {failed} failed")
    return rows


def _report(config: TlConfig, row: BenchRow, wandb_on: bool) -> BenchRow:
    bt.logging.info(
        f"{config.label} [{row.engine}] {row.verdict} in {row.wall_ms:.1f} ms, {row.expanded} expanded"
    )
    if wandb_on:
        wandb.log({k: v for k, v in row.to_csv().items() if v != ""})
    return row


def write_csv(rows: Iterable[BenchRow], path: str):
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow(row.to_csv())


def read_csv(path: str) -> List[BenchRow]:
    with open(path, "r", newline="", encoding="utf-8") as f:
        return [BenchRow.from_csv(record) for record in csv.DictReader(f)]

