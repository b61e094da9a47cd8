"""
System-level length reduction driver.

Pairs of equations are tried in priority order; the first pair that admits a
reduction is accepted, its longer equation is replaced by the combination and
every pair involving the replaced equation becomes active again. The loop ends
at a fixed point where no active pair reduces.
"""

import enum
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import pandas as pd

import config
from algebra.expressions import Expression, RewriteRule, VariableTable, apply_rules
from algebra.linearizer import KernelPartition, partition
from reduction.quotient_engine import Reduction, apply_reduction, evaluate_pair

logger = logging.getLogger(__name__)

PairKey = Tuple[int, int]


class Strategy(str, enum.Enum):
    """Direction of the first priority rule: few or many kernels alien to the longer equation."""

    FEW = config.STRATEGY_FEW
    MANY = config.STRATEGY_MANY


class StepOutcome(str, enum.Enum):
    REDUCED = "reduced"
    REDUNDANCY = "redundancy"
    INCONSISTENCY = "inconsistency"


@dataclass(frozen=True)
class ReductionStep:
    """
    One accepted combination; `longer` and `shorter` are the parents as they were.

    `result` is the (rewritten) combination divided by its rational `content`.
    """

    number: int
    replaced: int
    kept: int
    reduction: Reduction
    longer: Expression
    shorter: Expression
    result: Expression
    outcome: StepOutcome
    content: Fraction = Fraction(1)

    @property
    def n_before(self) -> int:
        return len(self.longer)

    @property
    def n_after(self) -> int:
        return len(self.result)

    def to_record(self) -> dict:
        """Flat record for the step log."""
        return {
            "step": self.number,
            "replaced": self.replaced,
            "kept": self.kept,
            "quotient": self.reduction.quotient_text,
            "m": self.reduction.m,
            "M": self.reduction.M,
            "multiplier_longer": str(self.reduction.multiplier_for_e1),
            "multiplier_shorter": str(self.reduction.multiplier_for_e2),
            "n_longer": self.n_before,
            "n_shorter": len(self.shorter),
            "predicted": self.reduction.predicted_n3,
            "n_after": self.n_after,
            "outcome": self.outcome.value,
        }


@dataclass
class SystemState:
    """
    Equations keyed by stable id (input position), plus the reduction bookkeeping.

    Attributes:
        equations: Live equations; deleted ids are never reused
        table: Variable classification of the system
        rules: Rewrite rules re-applied to every combination result
        strategy: Pair priority strategy
        inactive: Pairs attempted without success since neither member changed
        log: Accepted steps in order
        inconsistencies: Ids of equations that became purely parametric
        deleted_redundancies: Equations removed because they were (or became) zero
    """

    equations: Dict[int, Expression]
    table: VariableTable
    rules: Tuple[RewriteRule, ...] = ()
    strategy: Strategy = Strategy.FEW
    inactive: Set[PairKey] = field(default_factory=set)
    log: List[ReductionStep] = field(default_factory=list)
    inconsistencies: List[int] = field(default_factory=list)
    deleted_redundancies: int = 0
    initial_equations: int = 0
    initial_terms: int = 0

    @classmethod
    def build(cls, table: VariableTable, equations: Sequence[Expression],
              rules: Sequence[RewriteRule] = (),
              strategy: Strategy = Strategy.FEW) -> "SystemState":
        """Create a state from parsed equations; zero equations are dropped and counted."""
        live = {index: eq for index, eq in enumerate(equations) if not eq.is_zero}
        state = cls(equations=live, table=table, rules=tuple(rules), strategy=Strategy(strategy),
                    deleted_redundancies=len(equations) - len(live))
        state.initial_equations = len(equations)
        state.initial_terms = total_terms(state)
        return state

    def copy(self, strategy: Optional[Strategy] = None) -> "SystemState":
        return replace(self, equations=dict(self.equations), inactive=set(self.inactive),
                       log=list(self.log), inconsistencies=list(self.inconsistencies),
                       strategy=Strategy(strategy) if strategy else self.strategy)

    def expressions(self) -> List[Expression]:
        return list(self.equations.values())


def total_terms(state: SystemState) -> int:
    return sum(len(eq) for eq in state.equations.values())


def steps(state: SystemState) -> int:
    return len(state.log)


def alien_count(e_short: Expression, e_long: Expression) -> int:
    """Distinct kernels of the shorter equation that do not occur in the longer one."""
    return len(set(e_short.kernels()) - set(e_long.kernels()))


def pair_priority(e_short: Expression, e_long: Expression, strategy: Strategy) -> tuple:
    """
    Ordering key for a candidate pair; lower keys are tried first.

    Returns:
        (alien count, or its negation for the many-strategy, n_short, n_long)
    """
    aliens = alien_count(e_short, e_long)
    if Strategy(strategy) is Strategy.MANY:
        aliens = -aliens
    return (aliens, len(e_short), len(e_long))


def orient(state: SystemState, i: int, j: int) -> Tuple[int, int]:
    """
    Return (replace id, keep id) for a pair.

    The longer equation is replaced; at equal length the one with more
    distinct kernels, then the smaller id.
    """
    a, b = state.equations[i], state.equations[j]
    rank_a = (len(a), len(a.kernels()), -i)
    rank_b = (len(b), len(b.kernels()), -j)
    return (i, j) if rank_a > rank_b else (j, i)


def candidate_pairs(state: SystemState) -> List[Tuple[int, int]]:
    """Active (replace id, keep id) pairs in the order they are tried."""
    ids = list(state.equations)
    candidates = []
    for position, i in enumerate(ids):
        for j in ids[position + 1:]:
            if (i, j) in state.inactive:
                continue
            longer, shorter = orient(state, i, j)
            priority = pair_priority(state.equations[shorter], state.equations[longer],
                                     state.strategy)
            candidates.append((priority, (i, j), (longer, shorter)))
    candidates.sort(key=lambda item: (item[0], item[1]))
    return [oriented for _, _, oriented in candidates]


def _pair_key(i: int, j: int) -> PairKey:
    return (i, j) if i < j else (j, i)


class _PartitionCache:
    def __init__(self, state: SystemState):
        self.state = state
        self.entries: Dict[int, KernelPartition] = {}

    def get(self, index: int) -> KernelPartition:
        if index not in self.entries:
            self.entries[index] = partition(self.state.equations[index])
        return self.entries[index]

    def forget(self, index: int):
        self.entries.pop(index, None)


def _evaluate(state: SystemState, cache: _PartitionCache, pair: Tuple[int, int]
              ) -> Optional[Reduction]:
    longer, shorter = pair
    return evaluate_pair(state.equations[longer], state.equations[shorter],
                         cache.get(longer), cache.get(shorter))


def _next_reduction(state: SystemState, cache: _PartitionCache, executor, batch_size: int
                    ) -> Optional[Tuple[Tuple[int, int], Reduction]]:
    """Scan candidates in priority order; failed pairs are marked inactive."""
    candidates = candidate_pairs(state)
    for start in range(0, len(candidates), batch_size):
        batch = candidates[start:start + batch_size]
        for pair in batch:
            cache.get(pair[0]), cache.get(pair[1])
        if executor is not None:
            results = list(executor.map(lambda p: _evaluate(state, cache, p), batch))
        else:
            results = [_evaluate(state, cache, pair) for pair in batch]
        for pair, reduction in zip(batch, results):
            if reduction is not None:
                return pair, reduction
            logger.debug("Pair %s admits no reduction", pair)
            state.inactive.add(_pair_key(*pair))
    return None


def _accept(state: SystemState, cache: _PartitionCache, pair: Tuple[int, int],
            reduction: Reduction) -> bool:
    longer, shorter = pair
    e1, e2 = state.equations[longer], state.equations[shorter]
    result = apply_reduction(e1, e2, reduction)
    if state.rules:
        result = apply_rules(result, state.rules)
        if len(result) >= len(e1):
            logger.debug("Pair %s rejected: rewrite rules restored %d terms", pair, len(result))
            state.inactive.add(_pair_key(*pair))
            return False
    content = result.content()
    if content != 1:
        result = result * (1 / content)

    if result.is_zero:
        outcome = StepOutcome.REDUNDANCY
    elif result.is_parametric:
        outcome = StepOutcome.INCONSISTENCY
    else:
        outcome = StepOutcome.REDUCED

    step = ReductionStep(number=len(state.log) + 1, replaced=longer, kept=shorter,
                         reduction=reduction, longer=e1, shorter=e2, result=result,
                         outcome=outcome, content=content)
    state.log.append(step)
    cache.forget(longer)
    state.inactive = {key for key in state.inactive if longer not in key}

    if outcome is StepOutcome.REDUNDANCY:
        del state.equations[longer]
        state.deleted_redundancies += 1
        logger.info("Step %d: equation %d became zero and was removed", step.number, longer)
    else:
        state.equations[longer] = result
        if outcome is StepOutcome.INCONSISTENCY:
            state.inconsistencies.append(longer)
            logger.warning("Step %d: equation %d is free of unknowns: 0 = %s",
                           step.number, longer, result)
        logger.info("Step %d: replaced %d using %d (%s), %d -> %d terms", step.number, longer,
                    shorter, reduction.quotient_text, len(e1), len(result))
    return True


def run_reduction(state: SystemState, max_steps: Optional[int] = config.DEFAULT_MAX_STEPS,
                  threads: int = config.DEFAULT_THREADS) -> SystemState:
    """
    Reduce the system in place until no active pair admits a reduction.

    Args:
        state: System to reduce
        max_steps: Stop after this many accepted steps (None for no limit)
        threads: Worker threads for pair evaluation; acceptance stays sequential

    Returns:
        The same state, for chaining
    """
    cache = _PartitionCache(state)
    executor = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while max_steps is None or steps(state) < max_steps:
            found = _next_reduction(state, cache, executor, max(threads, 1))
            if found is None:
                break
            _accept(state, cache, *found)
    finally:
        if executor is not None:
            executor.shutdown()

    logger.info("Reduction finished (%s): %d steps, %d -> %d terms", state.strategy.value,
                steps(state), state.initial_terms, total_terms(state))
    return state


def reducible_pairs(state: SystemState) -> List[Tuple[int, int]]:
    """All pairs that still admit a reduction, ignoring the inactive set."""
    cache = _PartitionCache(state)
    fresh = state.copy()
    fresh.inactive = set()
    return [pair for pair in candidate_pairs(fresh) if _evaluate(fresh, cache, pair) is not None]


def compare_strategies(state: SystemState, strategies: Iterable[Strategy] = tuple(Strategy),
                       max_steps: Optional[int] = config.DEFAULT_MAX_STEPS) -> pd.DataFrame:
    """
    Run each strategy on a fresh copy of the state.

    Returns:
        DataFrame with columns strategy, equations, terms, steps
    """
    rows = []
    for strategy in strategies:
        result = run_reduction(state.copy(strategy=strategy), max_steps=max_steps)
        rows.append({
            "strategy": Strategy(strategy).value,
            "equations": len(result.equations),
            "terms": total_terms(result),
            "steps": steps(result),
        })
    return pd.DataFrame(rows, columns=["strategy", "equations", "terms", "steps"])
