import numpy as np
import pytest

from symkdv.errors import MeshTangled, NonPositiveTimeStep, SingularTime, TooFewPoints
from symkdv.lattice import (
    Mesh, advance_evolutive, advance_lagrangian, advance_orthogonal, build_layer,
    evolutive_closed_form, sigma_over_tau_bound,
)
from symkdv.symmetry import Generator, GroupElement, apply_group


def test_build_layer():
    np.testing.assert_allclose(build_layer(0, 0.1, 5), [0, 0.1, 0.2, 0.3, 0.4])
    x = build_layer(-1, 0.1, 21)
    assert x[0] == -1 and x[-1] == pytest.approx(1)
    with pytest.raises(ValueError):
        build_layer(0, 0.0, 10)
    with pytest.raises(TooFewPoints):
        build_layer(0, 0.1, 4)


def test_advance_evolutive_scales():
    np.testing.assert_allclose(advance_evolutive([1.0, 2.0], 1.0, 0.1), [1.1, 2.2], rtol=1e-15)
    x = build_layer(-1, 0.1, 21)
    np.testing.assert_allclose(advance_evolutive(x, 1e12, 1e-3), x, rtol=1e-14)


def test_evolutive_keeps_layer_uniform():
    x = build_layer(-1, 0.1, 21)
    t = 1.0
    for _ in range(30):
        x = advance_evolutive(x, t, 0.1)
        t += 0.1
        h = np.diff(x)
        np.testing.assert_allclose(h[1:] / h[:-1], 1, rtol=1e-12)


def test_evolutive_telescopes():
    x0 = build_layer(-1, 0.1, 21)
    x, t = x0, 1.0
    for _ in range(100):
        x = advance_evolutive(x, t, 0.1)
        t += 0.1
    np.testing.assert_allclose(x, evolutive_closed_form(x0, 1.0, t), rtol=1e-12, atol=1e-14)
    # the naive power ((t0+tau)/t0)**m with fixed t0 is a different lattice
    assert not np.allclose(x, x0 * 1.1**100)


def test_evolutive_negative_times_and_singularity():
    x = advance_evolutive([1.0, 2.0], -2.0, 0.5)
    np.testing.assert_allclose(x, [0.75, 1.5])
    with pytest.raises(SingularTime):
        advance_evolutive([1.0], -0.05, 0.1)
    with pytest.raises(SingularTime):
        advance_evolutive([1.0], 0.0, 0.1)
    with pytest.raises(NonPositiveTimeStep):
        advance_evolutive([1.0], 1.0, 0.0)


def test_advance_orthogonal_identity():
    x = build_layer(-1, 0.1, 21)
    y = x
    for _ in range(7):
        y = advance_orthogonal(y)
    np.testing.assert_array_equal(y, x)
    assert y is not x


def test_advance_lagrangian():
    x = build_layer(-1, 0.1, 21)
    np.testing.assert_array_equal(advance_lagrangian(x, np.zeros_like(x), 0.1), x)
    np.testing.assert_allclose(advance_lagrangian(x, -x / 1.0, 0.1),
                               advance_evolutive(x, 1.0, 0.1), rtol=1e-15, atol=1e-16)


def test_lagrangian_tangles_on_steep_data():
    x = build_layer(0, 0.1, 10)
    with pytest.raises(MeshTangled):
        advance_lagrangian(x, 20 * x, 0.1)


def test_lagrangian_galilean_equivariance():
    rng = np.random.default_rng(0)
    x = np.sort(rng.uniform(-1, 1, 30))
    u = 0.1 * rng.normal(size=30)
    t, tau, eps = 1.3, 0.05, 0.5
    g = GroupElement(Generator.V3, eps)
    xg, _, ug = apply_group(g, (x, t, u))
    lhs = advance_lagrangian(xg, ug, tau)
    rhs, _, _ = apply_group(g, (advance_lagrangian(x, u, tau), t + tau, 0.0))
    np.testing.assert_allclose(lhs, rhs, rtol=0, atol=4e-16)


def test_mesh_bounds():
    x = build_layer(-1, 0.1, 21)
    ortho, evo, lag = Mesh(), Mesh(), Mesh()
    t = 1.0
    xe, xl = x, x
    for m in range(10):
        ortho.append(t, x)
        evo.append(t, xe)
        lag.append(t, xl)
        ul = -xl / t
        xe = advance_evolutive(xe, t, 0.1)
        xl = advance_lagrangian(xl, ul, 0.1)
        t += 0.1
    assert sigma_over_tau_bound(ortho) == 0
    assert sigma_over_tau_bound(evo) <= 1
    assert sigma_over_tau_bound(lag) == pytest.approx(1.0, rel=1e-12)


def test_mesh_rejects_bad_layers():
    m = Mesh()
    m.append(1.0, [0, 1, 2])
    with pytest.raises(NonPositiveTimeStep):
        m.append(1.0, [0, 1, 2])
    with pytest.raises(MeshTangled):
        m.append(2.0, [0, 2, 1])
    with pytest.raises(ValueError):
        sigma_over_tau_bound(m)
