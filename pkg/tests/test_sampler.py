"""Tests for sampler configuration, strategies and determinism."""

import numpy as np
import pytest
from pydantic import ValidationError

from lattice_core.exceptions import DimensionMismatchError, InvalidConfigError
from lattice_core.order import are_disjoint, is_positive_operator, is_positive_vector, leq_entrywise
from lattice_core.ratmat import RationalMatrix
from search.classify import positive_commutator_holds
from search.sampler import (
    SamplerConfig,
    Side,
    Strategy,
    chain_aligned_pattern,
    iter_pairs,
    sample_pair,
    try_attempt,
)
from search.templates import base_preset, example1_pair, random_disjoint_vectors


class TestSamplerConfig:
    """Tests for SamplerConfig validation."""

    def test_template_needs_dim_three(self):
        """Test that templates reject dim 2."""
        with pytest.raises(ValidationError):
            SamplerConfig(dim=2, strategy=Strategy.EXAMPLE1_TEMPLATE)

    def test_grid_only_dim_two(self):
        """Test that exhaustive-grid rejects dim 3."""
        with pytest.raises(ValidationError):
            SamplerConfig(dim=3, strategy=Strategy.EXHAUSTIVE_GRID)

    @pytest.mark.parametrize(
        "extra",
        [{}, {"base_preset": "donoghue", "base": {"rows": 2, "cols": 2, "entries": [[0, 1], [0, 0]]}}],
    )
    def test_semicommutant_needs_one_base(self, extra):
        """Test that semicommutant-of needs exactly one base source."""
        with pytest.raises(ValidationError):
            SamplerConfig(dim=2, strategy=Strategy.SEMICOMMUTANT_OF, **extra)

    def test_unknown_preset(self):
        """Test that an unknown preset is rejected."""
        with pytest.raises(ValidationError):
            SamplerConfig(dim=3, strategy=Strategy.SEMICOMMUTANT_OF, base_preset="shift")

    def test_from_json_wraps_errors(self):
        """Test that from_json raises InvalidConfigError."""
        with pytest.raises(InvalidConfigError):
            SamplerConfig.from_json('{"dim": 1, "strategy": "rejection-integer"}')

    def test_negative_base(self):
        """Test that a non-positive base operator is refused."""
        cfg = SamplerConfig(
            dim=2,
            strategy=Strategy.SEMICOMMUTANT_OF,
            base={"rows": 2, "cols": 2, "entries": [[0, -1], [0, 0]]},
        )
        with pytest.raises(InvalidConfigError):
            cfg.base_matrix()

    def test_grid_attempt_count(self):
        """Test that the full 2x2 grid over four values has 4^8 pairs."""
        cfg = SamplerConfig(dim=2, strategy=Strategy.EXHAUSTIVE_GRID, count=None)
        assert cfg.attempt_count() == 65536
        assert SamplerConfig(dim=2, strategy=Strategy.EXHAUSTIVE_GRID, count=10).attempt_count() == 10

    def test_count_required(self):
        """Test that random strategies need a count."""
        cfg = SamplerConfig(dim=2, strategy=Strategy.REJECTION_INTEGER, count=None)
        with pytest.raises(InvalidConfigError):
            cfg.attempt_count()

    @pytest.mark.parametrize("seed", [-1, 2**64])
    def test_with_seed_validates(self, seed):
        """Test that a seed override outside [0, 2^64) is refused."""
        cfg = SamplerConfig(dim=2, strategy=Strategy.REJECTION_INTEGER)
        with pytest.raises(InvalidConfigError):
            cfg.with_seed(seed)
        assert cfg.with_seed(9).seed == 9


class TestTemplates:
    """Tests for the disjoint-vector templates."""

    def test_random_disjoint_vectors(self):
        """Test that sampled vectors are positive, nonzero and pairwise disjoint."""
        rng = np.random.default_rng(5)
        for _ in range(50):
            xs = random_disjoint_vectors(rng, 6)
            assert all(is_positive_vector(x) and not x.is_zero() for x in xs)
            assert all(are_disjoint(xs[i], xs[j]) for i in range(3) for j in range(i + 1, 3))

    def test_dim_too_small(self):
        """Test that three disjoint vectors need dim >= 3."""
        with pytest.raises(InvalidConfigError):
            random_disjoint_vectors(np.random.default_rng(0), 2)

    def test_wrong_vector_count(self):
        """Test that templates take exactly three vectors."""
        rng = np.random.default_rng(0)
        with pytest.raises(DimensionMismatchError):
            example1_pair(random_disjoint_vectors(rng, 4, count=2))

    @pytest.mark.parametrize("name", ["donoghue", "volterra"])
    def test_presets_positive(self, name):
        """Test that both base presets are positive."""
        assert is_positive_operator(base_preset(name, 4))

    def test_unknown_preset(self):
        """Test the preset lookup error."""
        with pytest.raises(InvalidConfigError):
            base_preset("shift", 3)


class TestStrategies:
    """Tests for the sampling strategies."""

    @pytest.mark.parametrize("strategy", [Strategy.EXAMPLE1_TEMPLATE, Strategy.EXAMPLE2_TEMPLATE])
    def test_templates_always_accepted(self, strategy):
        """Test that every template attempt satisfies AB >= BA >= 0."""
        cfg = SamplerConfig(dim=5, strategy=strategy, count=20, seed=11)
        pairs = list(iter_pairs(cfg))
        assert len(pairs) == 20
        for p in pairs:
            assert positive_commutator_holds(p.a, p.b)
            assert not (is_positive_operator(p.a) and is_positive_operator(p.b))

    def test_fixed_atoms(self):
        """Test that configured atoms give the standard first example."""
        cfg = SamplerConfig(
            dim=3,
            strategy=Strategy.EXAMPLE1_TEMPLATE,
            atoms=[{"entries": [1, 0, 0]}, {"entries": [0, 1, 0]}, {"entries": [0, 0, 1]}],
        )
        sampled = try_attempt(cfg, 0)
        assert sampled is not None
        assert sampled.a == RationalMatrix.from_rows([[0, 1, 0], [-1, 1, 0], [1, 0, 0]])

    def test_grid_decoding(self):
        """Test the lexicographic grid order."""
        cfg = SamplerConfig(dim=2, strategy=Strategy.EXHAUSTIVE_GRID, grid_values=[0, 1], count=None)
        assert try_attempt(cfg, 0).a.is_zero()
        last = try_attempt(cfg, 255)
        ones = RationalMatrix.from_rows([[1, 1], [1, 1]])
        assert last.a == ones and last.b == ones
        first_b_unit = try_attempt(cfg, 1)
        assert first_b_unit.b == RationalMatrix.unit(2, 1, 1)

    def test_rejection_positive(self):
        """Test that positive rejection sampling yields positive pairs."""
        cfg = SamplerConfig(dim=3, strategy=Strategy.REJECTION_INTEGER, count=200, seed=2)
        for p in iter_pairs(cfg):
            assert is_positive_operator(p.a) and is_positive_operator(p.b)
            assert positive_commutator_holds(p.a, p.b)

    def test_commuting_perturbation(self):
        """Test that commuting perturbations find a pair quickly."""
        cfg = SamplerConfig(dim=3, strategy=Strategy.COMMUTING_PERTURBATION, count=100, seed=4)
        sampled = sample_pair(cfg)
        assert sampled is not None
        assert positive_commutator_holds(sampled.a, sampled.b)

    def test_semicommutant_keeps_base(self):
        """Test that every semicommutant pair has A equal to the base."""
        cfg = SamplerConfig(
            dim=4, strategy=Strategy.SEMICOMMUTANT_OF, base_preset="donoghue", count=40, density=0.2
        )
        base = cfg.base_matrix()
        pairs = list(iter_pairs(cfg))
        assert pairs
        assert all(p.a == base and is_positive_operator(p.b) for p in pairs)

    @pytest.mark.parametrize("preset", ["donoghue", "volterra"])
    def test_right_commutant(self, preset):
        """Test that right-commutant samples are positive with BA >= AB."""
        cfg = SamplerConfig(
            dim=4,
            strategy=Strategy.SEMICOMMUTANT_OF,
            base_preset=preset,
            commutant=Side.RIGHT,
            count=60,
            density=0.3,
        )
        pairs = list(iter_pairs(cfg))
        assert pairs
        for p in pairs:
            assert is_positive_operator(p.b)
            assert leq_entrywise(p.a @ p.b, p.b @ p.a)
            assert positive_commutator_holds(p.b, p.a)

    def test_side_alternates(self):
        """Test that commutant both picks left on even attempts and right on odd ones."""
        cfg = SamplerConfig(
            dim=3, strategy=Strategy.SEMICOMMUTANT_OF, base_preset="volterra", commutant="both"
        )
        assert [cfg.side_for(i) for i in range(4)] == [Side.LEFT, Side.RIGHT, Side.LEFT, Side.RIGHT]
        assert SamplerConfig(dim=3, strategy=Strategy.REJECTION_INTEGER).side_for(1) == Side.LEFT

    def test_chain_aligned_pattern(self):
        """Test that the Donoghue chain allows the upper triangle."""
        pattern = chain_aligned_pattern(base_preset("donoghue", 3))
        assert sorted(pattern) == [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]

    def test_budget_exhausted(self):
        """Test that sample_pair returns None once the budget is spent."""
        cfg = SamplerConfig(dim=2, strategy=Strategy.REJECTION_INTEGER, count=50)
        assert sample_pair(cfg, start=10, budget=0) is None


class TestDeterminism:
    """Tests for seed and shard independence."""

    def test_same_seed_same_pairs(self):
        """Test that a seed reproduces the accepted pairs."""
        cfg = SamplerConfig(dim=3, strategy=Strategy.REJECTION_INTEGER, count=150, seed=9)
        first = [(p.attempt, p.a, p.b) for p in iter_pairs(cfg)]
        second = [(p.attempt, p.a, p.b) for p in iter_pairs(cfg)]
        assert first == second

    def test_shards_partition_attempts(self):
        """Test that shards together give exactly the single-shard pairs."""
        cfg = SamplerConfig(dim=2, strategy=Strategy.REJECTION_INTEGER, count=120, seed=1)
        whole = [(p.attempt, p.a, p.b) for p in iter_pairs(cfg)]
        sharded = sorted(
            ((p.attempt, p.a, p.b) for shard in range(3) for p in iter_pairs(cfg, shard, 3)),
            key=lambda item: item[0],
        )
        assert sharded == whole

    def test_start_offset(self):
        """Test that sample_pair from a later start matches iter_pairs."""
        cfg = SamplerConfig(dim=2, strategy=Strategy.REJECTION_INTEGER, count=200, seed=6)
        pairs = list(iter_pairs(cfg))
        assert len(pairs) >= 2
        later = sample_pair(cfg, start=pairs[0].attempt + 1)
        assert later.attempt == pairs[1].attempt
        assert later.a == pairs[1].a
