"""The compiled and pure-Python kernels must agree bit for bit."""

import numpy as np
import pytest

from conftest import random_points
from theta_lab import _kernels_py, kernels
from theta_lab.theta_graph import build_theta_graph

ckernels = pytest.importorskip("theta_lab._ckernels")


def test_active_backend_is_named():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("k", [3, 5, 6, 9])
def test_cone_targets_agree(k):
    for seed in range(5):
        xy = np.random.default_rng(seed).normal(size=(80, 2))
        assert np.array_equal(ckernels.cone_targets(xy[:, 0], xy[:, 1], k),
                              _kernels_py.cone_targets(xy[:, 0], xy[:, 1], k))


def test_ray_points_agree():
    ang = np.arange(10) * 2 * np.pi / 10
    xs = np.concatenate([[0.0], 2 * np.sin(ang)])
    ys = np.concatenate([[0.0], -2 * np.cos(ang)])
    assert np.array_equal(ckernels.cone_targets(xs, ys, 5), _kernels_py.cone_targets(xs, ys, 5))


def test_all_pairs_agree():
    for seed in range(5):
        g = build_theta_graph(random_points(60, seed), 5)
        csr = g.csr()
        dc, pc = ckernels.all_pairs(*csr)
        dp, pp = _kernels_py.all_pairs(*csr)
        assert np.array_equal(dc, dp)
        assert np.array_equal(pc, pp)
        dc, pc = ckernels.all_pairs(*csr, sources=[3, 1])
        assert np.array_equal(dc, dp[[3, 1]])
