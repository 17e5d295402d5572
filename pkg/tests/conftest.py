import random
import sys
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from oracles import random_tournament  # noqa: E402
from sectour.corpus import CorpusConfig, generate, random_spec  # noqa: E402
from sectour.dsl import parse_spec  # noqa: E402
from sectour.tournament import Compose  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

EXAMPLE = "R5(R1,R1,R3,R3,R1)"


@pytest.fixture(scope="session")
def example():
    return parse_spec(EXAMPLE)


@pytest.fixture(scope="session")
def corpus14():
    return generate(120, seed=20240901, cfg=CorpusConfig(max_n=14))


@pytest.fixture(scope="session")
def corpus10():
    return generate(60, seed=77, cfg=CorpusConfig(max_n=10))


def tournaments(max_n=7, min_n=1):
    return st.builds(lambda n, seed: random_tournament(random.Random(seed), n),
                     st.integers(min_n, max_n), st.integers(0, 2**32))


def specs(max_n=12, composite=False):
    def make(seed):
        rng = random.Random(seed)
        while True:
            s = random_spec(rng, max_n)
            if not composite or isinstance(s, Compose):
                return s
    return st.integers(0, 2**32).map(make)
