import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile("default")

ROOT = Path(__file__).resolve().parents[1]
CONFIGS = ROOT / "configs"


@pytest.fixture(scope="session")
def au():
    from kerrcasimir.materials import gold
    return gold()


@pytest.fixture(scope="session")
def fe():
    from kerrcasimir.materials import iron
    return iron()


@pytest.fixture
def rng():
    return np.random.default_rng(20061018)
