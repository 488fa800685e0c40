import numpy as np
import pytest

from bernlike.families import alpha_family, classical_family, sq_family


@pytest.fixture(params=["alpha0", "alpha05", "alpha1", "classical", "sq0", "sq05", "sq1"])
def builtin_family(request):
    return {
        "alpha0": alpha_family(0.0),
        "alpha05": alpha_family(0.5),
        "alpha1": alpha_family(1.0),
        "classical": classical_family(),
        "sq0": sq_family(0.0),
        "sq05": sq_family(0.5),
        "sq1": sq_family(1.0),
    }[request.param]


@pytest.fixture
def grid101():
    return np.linspace(0.0, 1.0, 101)
