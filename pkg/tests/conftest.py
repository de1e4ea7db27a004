import numpy as np
from hypothesis import strategies as st

from complementarity.interferometer import UnitaryParams


def random_params(rng):
    v = rng.standard_normal(4)
    return UnitaryParams(*(v / np.linalg.norm(v)))


seeds = st.integers(0, 2**32 - 1)
