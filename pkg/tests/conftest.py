import math

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


def gh_plane_integral(f, a, b, theta=0.0, center=(0.0, 0.0), order=40):
    """Integrate f(x, y) over the plane with a Gauss-Hermite product rule.

    The rule is aligned to a Gaussian envelope exp(-a u^2 - b v^2) in axes
    rotated by ``theta`` about ``center``; f is evaluated as a black box.
    """
    t, w = np.polynomial.hermite.hermgauss(order)
    uu = t / math.sqrt(a)
    vv = t / math.sqrt(b)
    u_grid, v_grid = np.meshgrid(uu, vv, indexing="ij")
    c, sn = math.cos(theta), math.sin(theta)
    x = center[0] + u_grid * c - v_grid * sn
    y = center[1] + u_grid * sn + v_grid * c
    vals = np.empty_like(x)
    for i in range(x.shape[0]):
        for j in range(x.shape[1]):
            vals[i, j] = f(x[i, j], y[i, j])
    t2 = t * t
    unweight = np.exp(t2)[:, None] * np.exp(t2)[None, :]
    return float((w[:, None] * w[None, :] * vals * unweight).sum() / math.sqrt(a * b))
