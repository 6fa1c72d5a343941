"""
Deterministic samplers for pairs with AB >= BA >= 0.

Semicommutant sampling around a fixed positive A also draws from the right
commutant, positive B with BA >= AB; those pairs satisfy the hypothesis with
the roles of A and B exchanged.

Every attempt draws from its own generator seeded by (seed, attempt), so an
attempt's outcome does not depend on which worker runs it or on the
attempts before it.
"""

import logging
from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np
from pydantic import BaseModel, Field, ValidationError, model_validator

from lattice_core.exceptions import InvalidConfigError
from lattice_core.order import is_positive_operator, leq_entrywise
from lattice_core.ratmat import RationalMatrix
from lattice_core.reducibility import maximal_ideal_chain
from lattice_core.schema import MatrixModel, VectorModel

from .classify import positive_commutator_holds
from .templates import BASE_PRESETS, Pair, base_preset, example1_pair, example2_pair, random_disjoint_vectors

logger = logging.getLogger(__name__)


class Strategy(str, Enum):
    REJECTION_INTEGER = "rejection-integer"
    EXAMPLE1_TEMPLATE = "example1-template"
    EXAMPLE2_TEMPLATE = "example2-template"
    COMMUTING_PERTURBATION = "commuting-perturbation"
    SEMICOMMUTANT_OF = "semicommutant-of"
    EXHAUSTIVE_GRID = "exhaustive-grid"


class Side(str, Enum):
    """Which semicommutant of the base A to sample."""

    LEFT = "left"  # AB >= BA
    RIGHT = "right"  # BA >= AB
    BOTH = "both"  # left on even attempts, right on odd ones


class SamplerConfig(BaseModel):
    """
    Campaign sampling parameters, loaded from a JSON config file.

    `count` is the number of attempts; rejected attempts count too. For
    exhaustive-grid it caps the enumeration (None means the whole grid).
    """

    dim: int = Field(..., ge=2)
    strategy: Strategy
    entry_bound: int = Field(default=2, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)
    count: int | None = Field(default=1000, ge=1)
    density: float = Field(default=1.0, gt=0.0, le=1.0)
    positive: bool = True
    max_denominator: int = Field(default=1, ge=1)
    atoms: list[VectorModel] | None = None
    base: MatrixModel | None = None
    base_preset: str | None = None
    grid_values: list[int] = Field(default_factory=lambda: [-1, 0, 1, 2], min_length=1)
    shadow_batch: int = Field(default=5, ge=1)
    commutant: Side = Side.LEFT

    @model_validator(mode="after")
    def check_strategy_fields(self) -> "SamplerConfig":
        if self.strategy in (Strategy.EXAMPLE1_TEMPLATE, Strategy.EXAMPLE2_TEMPLATE):
            if self.dim < 3:
                raise ValueError("Template strategies need dim >= 3")
            if self.atoms is not None and len(self.atoms) != 3:
                raise ValueError("Template strategies take exactly 3 atoms")
        if self.strategy == Strategy.EXHAUSTIVE_GRID and self.dim != 2:
            raise ValueError("exhaustive-grid is limited to dim 2")
        if self.strategy == Strategy.SEMICOMMUTANT_OF:
            if (self.base is None) == (self.base_preset is None):
                raise ValueError("semicommutant-of needs exactly one of base, base_preset")
            if self.base_preset is not None and self.base_preset not in BASE_PRESETS:
                raise ValueError(f"base_preset must be one of {BASE_PRESETS}")
            if self.base is not None and (self.base.rows, self.base.cols) != (self.dim, self.dim):
                raise ValueError("base must be dim x dim")
        return self

    @classmethod
    def from_json(cls, text: str) -> "SamplerConfig":
        try:
            return cls.model_validate_json(text)
        except ValidationError as e:
            raise InvalidConfigError(f"Invalid sampler config: {e}") from e

    def with_seed(self, seed: int) -> "SamplerConfig":
        """Copy with another seed, validated like a loaded config."""
        try:
            return self.model_validate({**self.model_dump(), "seed": seed})
        except ValidationError as e:
            raise InvalidConfigError(f"Invalid seed {seed}: {e}", {"seed": seed}) from e

    def base_matrix(self) -> RationalMatrix:
        if self.base is not None:
            base = self.base.to_matrix()
        elif self.base_preset is not None:
            base = base_preset(self.base_preset, self.dim)
        else:
            raise InvalidConfigError("No base operator configured")
        if not is_positive_operator(base):
            raise InvalidConfigError("Base operator for semicommutant sampling must be positive")
        return base

    def side_for(self, attempt: int) -> Side:
        if self.commutant == Side.BOTH:
            return Side.LEFT if attempt % 2 == 0 else Side.RIGHT
        return self.commutant

    def attempt_count(self) -> int:
        if self.strategy == Strategy.EXHAUSTIVE_GRID:
            full = len(self.grid_values) ** (2 * self.dim * self.dim)
            return full if self.count is None else min(full, self.count)
        if self.count is None:
            raise InvalidConfigError(f"count is required for strategy {self.strategy.value}")
        return self.count


@dataclass(frozen=True)
class SampledPair:
    a: RationalMatrix
    b: RationalMatrix
    attempt: int
    strategy: Strategy


def attempt_rng(seed: int, attempt: int) -> np.random.Generator:
    return np.random.default_rng([seed, attempt])


def _random_matrix(cfg: SamplerConfig, rng: np.random.Generator, positive: bool) -> RationalMatrix:
    n = cfg.dim
    low = 0 if positive else -cfg.entry_bound
    numerators = rng.integers(low, cfg.entry_bound + 1, size=(n, n))
    mask = rng.random((n, n)) < cfg.density
    denominators = rng.integers(1, cfg.max_denominator + 1, size=(n, n))
    return RationalMatrix(
        n,
        n,
        tuple(
            Fraction(int(p), int(q)) if keep else Fraction(0)
            for p, q, keep in zip(numerators.ravel(), denominators.ravel(), mask.ravel())
        ),
    )


def _grid_pair(cfg: SamplerConfig, attempt: int) -> Pair:
    """attempt-th pair in lexicographic order over grid_values^(2 n^2)."""
    n = cfg.dim
    base = len(cfg.grid_values)
    digits: list[int] = []
    rest = attempt
    for _ in range(2 * n * n):
        rest, d = divmod(rest, base)
        digits.append(cfg.grid_values[d])
    digits.reverse()
    half = n * n
    return (
        RationalMatrix.from_flat(n, n, digits[:half]),
        RationalMatrix.from_flat(n, n, digits[half:]),
    )


def _template_pair(cfg: SamplerConfig, rng: np.random.Generator) -> Pair:
    if cfg.atoms is not None:
        xs = [v.to_vector() for v in cfg.atoms]
    else:
        xs = random_disjoint_vectors(rng, cfg.dim, 3, cfg.entry_bound)
    if cfg.strategy == Strategy.EXAMPLE1_TEMPLATE:
        return example1_pair(xs)
    return example2_pair(xs)


def _polynomial_in(a: RationalMatrix, rng: np.random.Generator, bound: int) -> RationalMatrix:
    """c0 I + c1 A + c2 A² with nonnegative integer coefficients."""
    c0, c1, c2 = (int(c) for c in rng.integers(0, bound + 1, size=3))
    n = a.rows
    return RationalMatrix.identity(n).scale(c0) + a.scale(c1) + (a @ a).scale(c2)


def _commuting_perturbation(cfg: SamplerConfig, rng: np.random.Generator) -> Pair:
    a = _random_matrix(cfg, rng, positive=True)
    b = _polynomial_in(a, rng, cfg.entry_bound)
    # single nonnegative matrix unit on top of the commuting part
    i, j = (int(x) for x in rng.integers(0, cfg.dim, size=2))
    b = b + RationalMatrix.unit(cfg.dim, i, j).scale(int(rng.integers(0, cfg.entry_bound + 1)))
    return a, b


def chain_aligned_pattern(a: RationalMatrix) -> list[tuple[int, int]]:
    """
    Positions (i, j) whose matrix units leave A's maximal ideal chain invariant.

    Column j may feed row i only when every chain member containing j also
    contains i.
    """
    chain = [*maximal_ideal_chain([a]).subsets, frozenset(range(a.rows))]
    level = {}
    for depth, member in enumerate(chain):
        for v in member:
            level.setdefault(v, depth)
    return [(i, j) for i in range(a.rows) for j in range(a.rows) if level[i] <= level[j]]


def _semicommutant(
    cfg: SamplerConfig, a: RationalMatrix, rng: np.random.Generator, side: Side
) -> RationalMatrix | None:
    b = _polynomial_in(a, rng, cfg.entry_bound)
    pattern = chain_aligned_pattern(a)
    picks = rng.random(len(pattern)) < cfg.density / 2
    for (i, j), keep in zip(pattern, picks):
        if keep:
            b = b + RationalMatrix.unit(cfg.dim, i, j).scale(int(rng.integers(1, cfg.entry_bound + 1)))
    ab, ba = a @ b, b @ a
    semicommutes = leq_entrywise(ba, ab) if side == Side.LEFT else leq_entrywise(ab, ba)
    if is_positive_operator(b) and semicommutes:
        return b
    return None


def try_attempt(cfg: SamplerConfig, attempt: int, base: RationalMatrix | None = None) -> SampledPair | None:
    """
    Run one attempt; returns the pair when it passes the exact hypothesis
    check (BA >= AB >= 0 for right-commutant samples).
    """
    pair: Pair | None
    if cfg.strategy == Strategy.EXHAUSTIVE_GRID:
        pair = _grid_pair(cfg, attempt)
    else:
        rng = attempt_rng(cfg.seed, attempt)
        if cfg.strategy == Strategy.REJECTION_INTEGER:
            pair = (_random_matrix(cfg, rng, cfg.positive), _random_matrix(cfg, rng, cfg.positive))
        elif cfg.strategy in (Strategy.EXAMPLE1_TEMPLATE, Strategy.EXAMPLE2_TEMPLATE):
            pair = _template_pair(cfg, rng)
        elif cfg.strategy == Strategy.COMMUTING_PERTURBATION:
            pair = _commuting_perturbation(cfg, rng)
        else:
            a = base if base is not None else cfg.base_matrix()
            b = _semicommutant(cfg, a, rng, cfg.side_for(attempt))
            pair = None if b is None else (a, b)

    if pair is None:
        return None
    if cfg.strategy == Strategy.SEMICOMMUTANT_OF and cfg.side_for(attempt) == Side.RIGHT:
        holds = positive_commutator_holds(pair[1], pair[0])
    else:
        holds = positive_commutator_holds(*pair)
    if not holds:
        return None
    return SampledPair(a=pair[0], b=pair[1], attempt=attempt, strategy=cfg.strategy)


def iter_pairs(cfg: SamplerConfig, shard: int = 0, shards: int = 1) -> Iterator[SampledPair]:
    """Accepted pairs from attempts shard, shard + shards, ... below the attempt count."""
    base = cfg.base_matrix() if cfg.strategy == Strategy.SEMICOMMUTANT_OF else None
    total = cfg.attempt_count()
    accepted = 0
    for attempt in range(shard, total, shards):
        sampled = try_attempt(cfg, attempt, base)
        if sampled is not None:
            accepted += 1
            yield sampled
    logger.info(
        "Shard %s/%s strategy=%s accepted %s of %s attempts",
        shard,
        shards,
        cfg.strategy.value,
        accepted,
        len(range(shard, total, shards)),
    )


def sample_pair(cfg: SamplerConfig, start: int = 0, budget: int | None = None) -> SampledPair | None:
    """First accepted pair at or after attempt `start`; None once the budget is spent."""
    base = cfg.base_matrix() if cfg.strategy == Strategy.SEMICOMMUTANT_OF else None
    limit = cfg.attempt_count() if budget is None else start + budget
    for attempt in range(start, limit):
        sampled = try_attempt(cfg, attempt, base)
        if sampled is not None:
            return sampled
    logger.info("Attempt budget exhausted for strategy %s", cfg.strategy.value)
    return None
