from __future__ import annotations

import pytest

from torusgeo import _kernels, preset_random

#: the fixed verification ensemble: 20 seeded fields with bandlimit 6
ENSEMBLE_SEEDS = list(range(20))
ENSEMBLE_N = 6
ENSEMBLE_DECAY = 1.0


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # trigger (cached) JIT compilation once, outside any timed section
    _kernels.warmup()


@pytest.fixture(scope="session")
def ensemble():
    return [preset_random(ENSEMBLE_N, ENSEMBLE_DECAY, seed) for seed in ENSEMBLE_SEEDS]
