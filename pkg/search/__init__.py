"""Sampling, classification and falsification campaigns for positive-commutator pairs."""

from .campaign import CampaignSummary, Goal, run_campaign
from .classify import PairReport, classify_pair, positive_commutator_holds
from .corpus import CorpusRecord, CorpusWriter, read_corpus, reclassify
from .sampler import SampledPair, SamplerConfig, Strategy, iter_pairs, sample_pair
from .settings import Settings, load_env_files

__all__ = [
    "CampaignSummary",
    "Goal",
    "run_campaign",
    "PairReport",
    "classify_pair",
    "positive_commutator_holds",
    "CorpusRecord",
    "CorpusWriter",
    "read_corpus",
    "reclassify",
    "SampledPair",
    "SamplerConfig",
    "Strategy",
    "iter_pairs",
    "sample_pair",
    "Settings",
    "load_env_files",
]
