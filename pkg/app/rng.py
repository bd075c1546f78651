import numpy as np


def get_rng(seed: int | None = None) -> np.random.Generator:
    return np.random.default_rng(seed)
