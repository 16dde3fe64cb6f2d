"""Run configuration, ensemble specifications and bound reports."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from errors import BadSpec

MAX_DIM = 64
MAX_SEED = 2 ** 64 - 1
ABS_SLACK_FLOOR = 1e-12


class Ensemble(str, Enum):
    GINIBRE = "GINIBRE"
    NILPOTENT2 = "NILPOTENT2"
    NORMAL = "NORMAL"
    POSITIVE = "POSITIVE"
    UNITARY = "UNITARY"
    NONNEGATIVE = "NONNEGATIVE"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    HUMAN = "human"


class Verdict(str, Enum):
    HOLDS = "HOLDS"
    VIOLATED = "VIOLATED"
    SKIPPED = "SKIPPED"


@dataclass(frozen=True)
class EnsembleSpec:
    kind: Ensemble
    dim: int
    seed: int

    def __post_init__(self):
        try:
            object.__setattr__(self, 'kind', Ensemble(self.kind))
        except ValueError:
            raise BadSpec(f"unknown ensemble {self.kind!r}")
        if not 1 <= self.dim <= MAX_DIM:
            raise BadSpec(f"dim must lie in [1, {MAX_DIM}], got {self.dim}")
        if not 0 <= self.seed <= MAX_SEED:
            raise BadSpec(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True)
class RunConfig:
    trials: int = 1000
    master_seed: int = 0
    slack_rel: float = 1e-8
    dims: Optional[Tuple[int, ...]] = None
    output_format: OutputFormat = OutputFormat.HUMAN
    threads: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise BadSpec(f"trials must be at least 1, got {self.trials}")
        if not 0 <= self.master_seed <= MAX_SEED:
            raise BadSpec(f"master seed must be a 64-bit unsigned integer, got {self.master_seed}")
        if not (self.slack_rel >= 0 and math.isfinite(self.slack_rel)):
            raise BadSpec(f"slack must be a finite nonnegative number, got {self.slack_rel}")
        if self.dims is not None:
            dims = tuple(int(d) for d in self.dims)
            if not dims or any(not 1 <= d <= MAX_DIM for d in dims):
                raise BadSpec(f"dims must be a nonempty list of integers in [1, {MAX_DIM}], got {self.dims}")
            object.__setattr__(self, 'dims', dims)
        if self.threads < 0:
            raise BadSpec(f"threads must be nonnegative, got {self.threads}")
        try:
            object.__setattr__(self, 'output_format', OutputFormat(self.output_format))
        except ValueError:
            raise BadSpec(f"unknown output format {self.output_format!r}")


@dataclass(frozen=True)
class Check:
    """One asserted inequality; margin > 0 means it holds with room to spare."""

    bound_name: str
    bound_value: float
    verdict: Verdict
    margin: float
    upper_bound: bool = False
    reason: str = ""


@dataclass
class BoundReport:
    """Every check made on one case, together with the inputs needed to replay it."""

    case_id: str
    oracle_value: float
    suite: str = ""
    slack_rel: float = 1e-8
    checks: List[Check] = field(default_factory=list)
    inputs: Dict[str, Any] = field(default_factory=dict)
    slack_used: float = 0.0

    def slack(self, a: float, b: float) -> float:
        return max(self.slack_rel * max(1.0, abs(a), abs(b)), ABS_SLACK_FLOOR)

    def _record(self, name: str, value: float, margin: float, slack: float, upper_bound: bool) -> Check:
        self.slack_used = max(self.slack_used, slack)
        verdict = Verdict.HOLDS if margin >= -slack else Verdict.VIOLATED
        check = Check(name, float(value), verdict, float(margin), upper_bound)
        self.checks.append(check)
        return check

    def bound(self, name: str, value: float, oracle: Optional[float] = None) -> Check:
        """value is an upper bound for the oracle (the report's own unless given)."""
        target = self.oracle_value if oracle is None else oracle
        return self._record(name, value, value - target, self.slack(value, target), upper_bound=True)

    def at_most(self, name: str, value: float, upper: float, slack: Optional[float] = None) -> Check:
        """value <= upper, e.g. a refined bound against the bound it refines."""
        slack = self.slack(value, upper) if slack is None else slack
        return self._record(name, value, upper - value, slack, upper_bound=False)

    def agrees(self, name: str, value: float, target: float, tol: float) -> Check:
        """|value - target| <= tol."""
        return self._record(name, value, tol - abs(value - target), 0.0, upper_bound=False)

    def skip(self, name: str, reason: str) -> Check:
        check = Check(name, math.nan, Verdict.SKIPPED, math.nan, reason=reason)
        self.checks.append(check)
        return check

    @property
    def bound_values(self) -> Dict[str, float]:
        return {c.bound_name: c.bound_value for c in self.checks}

    @property
    def verdicts(self) -> Dict[str, Verdict]:
        return {c.bound_name: c.verdict for c in self.checks}

    @property
    def violations(self) -> List[Check]:
        return [c for c in self.checks if c.verdict is Verdict.VIOLATED]

    @property
    def violated(self) -> bool:
        return any(c.verdict is Verdict.VIOLATED for c in self.checks)

    def ranked_bounds(self) -> List[Check]:
        """Upper bounds for the oracle, tightest first."""
        return sorted((c for c in self.checks if c.upper_bound), key=lambda c: c.bound_value)
