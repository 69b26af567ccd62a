import math
import os

import numpy as np
import pytest

import hypertrace as ht

DATA = os.environ.get("HYPERTRACE_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def test_bessel_values():
    assert ht.bessel_k(0, 1.0) == pytest.approx(0.42102443824070833, rel=1e-13)
    k = ht.bessel_k(2j, 1.0)
    assert k.imag == 0.0
    assert k.real == pytest.approx(0.080616997622365979, rel=1e-12)
    mant, log_scale = ht.bessel_k_log(0.0, 800.0)
    assert math.log(abs(mant)) + log_scale == pytest.approx(0.5 * math.log(math.pi / 1600) - 800, rel=1e-6)


def test_transform_pair():
    closed = ht.selberg_transform_closed(3, 1.0, 0.0)
    assert closed.real == pytest.approx(5.2907491286351156, rel=1e-13)
    assert ht.selberg_transform_quadrature(3, 1.0, 0.0).real == pytest.approx(closed.real, rel=1e-8)
    with pytest.raises(ValueError):
        ht.selberg_transform_closed(3, 1.0, 1.5)


def test_group_and_decompositions():
    g = ht.make_boost(0.7, 3) @ ht.make_unipotent(np.array([0.3, -0.2]))
    J = np.diag([1.0, -1.0, -1.0, -1.0])
    assert np.abs(g.matrix.T @ J @ g.matrix - J).max() < 1e-12
    k1, t, k2 = ht.cartan_kak(g)
    assert np.abs((k1 @ ht.make_boost(t, 3) @ k2).matrix - g.matrix).max() < 1e-12
    assert ht.check_membership(ht.make_boost(0.4, 3), "A")
    with pytest.raises(ValueError):
        ht.LorentzMatrix.from_matrix(np.eye(4) + 0.1)


def test_horospherical_distance():
    u, v = np.array([0.2, 0.1]), np.array([-0.5, 0.4])
    p = ht.from_horospherical(u, 1.3)
    q = ht.from_horospherical(v, 0.4)
    assert ht.dist(p, q) == pytest.approx(ht.dist_horospherical(u, 1.3, v, 0.4), rel=1e-12)


def test_cycle_invariants_and_orbits():
    gens = os.path.join(DATA, "picard.json")
    assert ht.ball_size(gens, 4) == 196
    cfg = ht.CycleConfig(3, 2)
    rows = ht.delta_table(gens, cfg, np.zeros(1), 4)
    assert len(rows) == 38
    deltas = [r["delta_u"] for r in rows]
    assert deltas == sorted(deltas)
    assert min(deltas) >= 1.0


def test_kernel_bounds():
    closed, quad, rel = ht.f_total_integral(3, 1.0)
    assert closed == pytest.approx(7.5637893301208508, rel=1e-13)
    assert rel < 1e-9
    c, q, rel = ht.sigma0_model(ht.CycleConfig(3, 2), 1.0, 0.0, [(0.0, 1.0)], 1.0, 2.0)
    assert c.real == pytest.approx(1.4630281955561498, rel=1e-13)
    rows = ht.rescaled_limit_shape(ht.CycleConfig(3, 2), [40.0, 60.0], 0.0, [(0.0, 1.0)], 1.0, 2.0)
    assert abs(math.exp(rows[1][1]) - 0.5 * math.log(2)) < 0.01
