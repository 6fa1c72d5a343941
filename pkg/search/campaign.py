"""
Falsification campaigns.

Sampled pairs are classified, checked against the selected goals and a fixed
set of invariants, and appended to a JSONL corpus. Classification may fan out
over worker processes; goal evaluation and corpus writes stay in the calling
process and follow attempt order, so the corpus does not depend on the
worker count.
"""

import logging
import time
from collections.abc import Callable, Sequence
from contextlib import nullcontext
from concurrent.futures import ProcessPoolExecutor
from enum import Enum
from pathlib import Path

from pydantic import BaseModel, Field

from lattice_core.algebra import generate_algebra, radical_membership
from lattice_core.exceptions import InvalidConfigError
from lattice_core.ratmat import RationalMatrix, commutator
from lattice_core.reducibility import complete_decomposition
from lattice_core.schema import MatrixModel

from .classify import PairReport, checked_nilpotent, classify_pair
from .corpus import CorpusRecord, CorpusWriter
from .sampler import SamplerConfig, Side, Strategy, iter_pairs, try_attempt

logger = logging.getLogger(__name__)


class Goal(str, Enum):
    PROP_2X2 = "prop2x2"
    RADICAL_POSITIVE = "radical-positive"
    EXTENSIONE = "extensione"
    KEKSINGTON_SHADOW = "keksington-shadow"


def _prop_2x2(r: PairReport) -> bool | None:
    """2x2: AB = BA or the pair is completely decomposable."""
    if r.dim != 2:
        return None
    return r.commutator_zero or r.completely_decomposable


def _radical_positive(r: PairReport) -> bool | None:
    """Positive A, B: AB - BA lies in the radical."""
    if not (r.a_positive and r.b_positive):
        return None
    return r.radical_member


def _some_power_in_radical(r: PairReport) -> bool | None:
    """Positive A, B: some power of AB - BA lies in the radical."""
    if not (r.a_positive and r.b_positive):
        return None
    return r.commutator_power_in_radical is not None


def _semicommutant_member(r: PairReport) -> bool | None:
    """Positive A, B with AB >= BA or BA >= AB: AB - BA lies in the radical."""
    if not r.positive_semicommuting:
        return None
    return r.radical_member


GOAL_CHECKS: dict[Goal, Callable[[PairReport], bool | None]] = {
    Goal.PROP_2X2: _prop_2x2,
    Goal.RADICAL_POSITIVE: _radical_positive,
    Goal.EXTENSIONE: _some_power_in_radical,
    Goal.KEKSINGTON_SHADOW: _semicommutant_member,
}


def invariant_violations(r: PairReport) -> list[str]:
    """Checks applied to every accepted pair regardless of goals."""
    found: list[str] = []
    if not r.commutator_nilpotent:
        found.append("commutator-nilpotent")
    if r.radical_member != r.oracle_member:
        found.append("radical-oracle-agreement")
    if r.triangularizable:
        a, b = r.a.to_matrix(), r.b.to_matrix()
        if not (
            r.radical_member
            and r.a_commutator_nilpotent
            and checked_nilpotent(b @ commutator(a, b))
        ):
            found.append("mccoy-consistency")
    if r.completely_decomposable and not r.triangularizable:
        found.append("decomposable-triangularizable")
    if (r.hypothesis or r.positive_semicommuting) and not r.commutator_decomposable:
        found.append("commutator-ideal-triangularizable")
    if r.positive_semicommuting and not r.triangularizable:
        found.append("positive-semicommuting-triangularizable")
    return found


class Violation(BaseModel):
    check: str
    attempt: int
    a: MatrixModel
    b: MatrixModel


class CampaignSummary(BaseModel):
    seed: int
    strategy: str
    goals: list[str]
    attempts: int
    accepted: int
    goal_checks: dict[str, int] = Field(default_factory=dict)
    violations: list[Violation] = Field(default_factory=list)
    wall_time_s: float = 0.0
    corpus_path: str | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.attempts if self.attempts else 0.0


def classify_shard(cfg: SamplerConfig, shard: int, shards: int) -> list[tuple[int, PairReport]]:
    """Worker entry point: classify every accepted pair of one shard."""
    return [(s.attempt, classify_pair(s.a, s.b)) for s in iter_pairs(cfg, shard, shards)]


def _classified(cfg: SamplerConfig, workers: int) -> list[tuple[int, PairReport]]:
    if workers <= 1:
        return classify_shard(cfg, 0, 1)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(classify_shard, cfg, shard, workers) for shard in range(workers)]
        merged = [item for f in futures for item in f.result()]
    merged.sort(key=lambda item: item[0])
    return merged


def shadow_batch_violations(
    a: RationalMatrix, members: Sequence[RationalMatrix]
) -> list[int]:
    """
    Indices i with A B_i - B_i A outside the radical of the unitized algebra
    generated by A and all members jointly.
    """
    alg = generate_algebra([a, *members], unitized=True)
    return [
        i for i, b in enumerate(members) if not radical_membership(alg, commutator(a, b)).member
    ]


def base_in_joint_radical(a: RationalMatrix, members: Sequence[RationalMatrix]) -> bool:
    """A lies in the radical of the unitized algebra generated by A and all members."""
    alg = generate_algebra([a, *members], unitized=True)
    return radical_membership(alg, a).member


def _side(r: PairReport) -> Side:
    return Side.LEFT if r.ab_geq_ba else Side.RIGHT


def run_campaign(
    cfg: SamplerConfig,
    goals: Sequence[Goal],
    corpus_path: Path | None = None,
    workers: int = 1,
) -> CampaignSummary:
    if not goals:
        raise InvalidConfigError("At least one campaign goal is required")

    started = time.perf_counter()
    summary = CampaignSummary(
        seed=cfg.seed,
        strategy=cfg.strategy.value,
        goals=[g.value for g in goals],
        attempts=cfg.attempt_count(),
        accepted=0,
        goal_checks={g.value: 0 for g in goals},
        corpus_path=str(corpus_path) if corpus_path else None,
    )

    classified = _classified(cfg, workers)
    summary.accepted = len(classified)
    logger.info(
        "Campaign strategy=%s seed=%s accepted %s/%s (rate %.4f)",
        cfg.strategy.value,
        cfg.seed,
        summary.accepted,
        summary.attempts,
        summary.acceptance_rate,
    )

    batch: list[tuple[int, PairReport]] = []
    joint = Goal.KEKSINGTON_SHADOW in goals and cfg.strategy == Strategy.SEMICOMMUTANT_OF
    preset_base = cfg.strategy == Strategy.SEMICOMMUTANT_OF and cfg.base_preset is not None

    def record_violation(check: str, attempt: int, report: PairReport) -> None:
        logger.warning("Violation of %s at attempt %s", check, attempt)
        summary.violations.append(Violation(check=check, attempt=attempt, a=report.a, b=report.b))

    def flush_batch() -> None:
        if not batch:
            return
        a = batch[0][1].a.to_matrix()
        # left and right members are checked in separate algebras
        for side in (Side.LEFT, Side.RIGHT):
            group = [item for item in batch if _side(item[1]) == side]
            if not group:
                continue
            for i in shadow_batch_violations(a, [r.b.to_matrix() for _, r in group]):
                record_violation("keksington-shadow-joint", *group[i])
        if cfg.base_preset is not None and not base_in_joint_radical(
            a, [r.b.to_matrix() for _, r in batch]
        ):
            record_violation("base-in-joint-radical", *batch[0])
        batch.clear()

    with CorpusWriter(corpus_path) if corpus_path else nullcontext() as writer:
        for attempt, report in classified:
            violations = invariant_violations(report)
            if preset_base and not report.completely_decomposable:
                violations.append("semicommutant-ideal-triangularizable")
            for goal in goals:
                verdict = GOAL_CHECKS[goal](report)
                if verdict is None:
                    continue
                summary.goal_checks[goal.value] += 1
                if not verdict:
                    violations.append(goal.value)
            for check in violations:
                record_violation(check, attempt, report)
            if writer:
                writer.append(
                    CorpusRecord.from_report(report, cfg.seed, attempt, cfg.strategy.value, violations)
                )
            if joint:
                batch.append((attempt, report))
                if len(batch) == cfg.shadow_batch:
                    flush_batch()
        if joint:
            flush_batch()

    summary.wall_time_s = time.perf_counter() - started
    return summary



class DichotomyResult(BaseModel):
    grid_values: list[int]
    enumerated: int
    accepted: int
    commuting: int
    decomposable: int
    violations: list[Violation] = Field(default_factory=list)


def verify_2x2_dichotomy(grid_values: Sequence[int] = (-1, 0, 1, 2)) -> DichotomyResult:
    """
    Every 2x2 integer pair over `grid_values` with AB >= BA >= 0 commutes or
    is completely decomposable.

    Only the hypothesis filter and the two conclusions are computed, so the
    full grid stays cheap.
    """
    cfg = SamplerConfig(
        dim=2, strategy=Strategy.EXHAUSTIVE_GRID, grid_values=list(grid_values), count=None
    )
    result = DichotomyResult(
        grid_values=list(grid_values),
        enumerated=cfg.attempt_count(),
        accepted=0,
        commuting=0,
        decomposable=0,
    )
    for attempt in range(result.enumerated):
        sampled = try_attempt(cfg, attempt)
        if sampled is None:
            continue
        result.accepted += 1
        if commutator(sampled.a, sampled.b).is_zero():
            result.commuting += 1
        elif complete_decomposition([sampled.a, sampled.b]) is not None:
            result.decomposable += 1
        else:
            result.violations.append(
                Violation(
                    check=Goal.PROP_2X2.value,
                    attempt=attempt,
                    a=MatrixModel.from_matrix(sampled.a),
                    b=MatrixModel.from_matrix(sampled.b),
                )
            )
    logger.info(
        "2x2 dichotomy: %s enumerated, %s accepted, %s violations",
        result.enumerated,
        result.accepted,
        len(result.violations),
    )
    return result
