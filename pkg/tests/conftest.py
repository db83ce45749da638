import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from eisencusp.arith import divisors, is_squarefree
from eisencusp.cusps import LevelShape

settings.register_profile(
    "default", deadline=None, max_examples=100, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", deadline=None, max_examples=300)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SQUAREFREE = [d for d in range(1, 120) if is_squarefree(d)]
ODD_SQUAREFREE = [d for d in SQUAREFREE if d % 2]


@st.composite
def shapes(draw, max_level=300, odd=False):
    pool = ODD_SQUAREFREE if odd else SQUAREFREE
    D = draw(st.sampled_from([d for d in pool if d <= max_level]))
    C = draw(st.sampled_from([c for c in divisors(D) if D * c <= max_level]))
    return LevelShape(D, C)


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    path = tmp_path / "cache"
    monkeypatch.setenv("CACHE_DIR", str(path))
    return path
