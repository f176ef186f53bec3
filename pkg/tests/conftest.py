import functools

import numpy as np
import pytest

from symconvex.lie_core import build_realization
from symconvex.restricted_roots import compute_root_datum

# (preset, n, p, q, generic base point)
PRESET_GRID = [
    ("compact", 2, None, None, (1.0,)),
    ("compact", 3, None, None, (2.0, 1.0)),
    ("compact", 4, None, None, (3.0, 1.5, -0.5)),
    ("split", 2, None, None, (1.0,)),
    ("split", 3, None, None, (0.8,)),
    ("split", 4, None, None, (1.0, 0.4)),
    ("supq", 3, 2, 1, (2.0, 1.0)),
    ("supq", 4, 2, 2, (2.0, 1.0, -0.5)),
]


def grid_id(entry):
    preset, n, p, q, _ = entry
    return f"{preset}{n}" + (f"_{p}{q}" if p else "")


@functools.lru_cache(maxsize=None)
def realization(preset, n, p=None, q=None):
    return build_realization(preset, n, p, q)


@functools.lru_cache(maxsize=None)
def datum(preset, n, p=None, q=None):
    return compute_root_datum(realization(preset, n, p, q))


@pytest.fixture(params=PRESET_GRID, ids=grid_id)
def preset_case(request):
    preset, n, p, q, X = request.param
    return realization(preset, n, p, q), datum(preset, n, p, q), np.array(X)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
