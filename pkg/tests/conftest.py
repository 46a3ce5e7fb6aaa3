import random
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dectree.harness import GenParams, generate
from dectree.rooted import RootedTree
from dectree.textio import parse

TESTS = Path(__file__).parent
CORPUS = TESTS / "corpus"
sys.path.insert(0, str(TESTS))

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def load(name: str):
    return parse((CORPUS / f"{name}.dtree").read_text())


def plain(obj):
    return obj.tree if isinstance(obj, RootedTree) else obj


@pytest.fixture
def corpus():
    return load


def trees(**overrides) -> st.SearchStrategy:
    """Random valid trees from the package generator, one per drawn seed."""
    params = GenParams(**overrides)
    return st.integers(0, 2**32 - 1).map(lambda seed: generate(random.Random(seed), params))


def rooted_trees(**overrides) -> st.SearchStrategy:
    overrides.setdefault("require_rooted", True)
    return trees(**overrides)
