import math

import numpy as np
import pytest
from scipy.integrate import simpson


def simpson_hump(a, b, m, p, n=200_001):
    """Composite Simpson reference for the integral of sin^2((p/2)pi(x-m))/(pi x)^2 over [a, b]."""
    x = np.linspace(a, b, n)
    with np.errstate(divide="ignore", invalid="ignore"):
        f = (np.sin(0.5 * math.pi * p * (x - m)) / (math.pi * x)) ** 2
    f[x == 0] = p * p / 4
    return float(simpson(f, x=x))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
