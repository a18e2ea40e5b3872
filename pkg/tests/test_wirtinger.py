import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hartogs.domains import (
    BaseDomainSpec,
    HartogsSpec,
    base_hessian_closed,
    hartogs_potential,
    minus_log_phi_gradient,
    point_from_coords,
    sample_points,
)
from hartogs.errors import BoundaryViolationError, CapabilityError
from hartogs.wirtinger import (
    DiffConfig,
    conjugate_jacobian,
    mixed_partial,
    wirtinger_gradient,
    wirtinger_hessian,
)

CFG = DiffConfig()


def norm2(z):
    return float(np.real(np.vdot(z, z)))


class TestGradient:
    def test_norm_squared(self):
        # d(z zbar)/dz = zbar
        g = wirtinger_gradient(norm2, [0.3])
        assert g[0] == pytest.approx(0.3, abs=1e-10)

    def test_critical_point_at_center(self):
        f = lambda z: -math.log(1 - norm2(z))
        assert wirtinger_gradient(f, [0.0])[0] == pytest.approx(0.0, abs=1e-10)

    def test_disc_log_gradient(self):
        f = lambda z: -math.log(1 - norm2(z))
        # zbar / (1 - |z|^2) at z = 0.5
        assert wirtinger_gradient(f, [0.5])[0] == pytest.approx(
            0.5 / 0.75, abs=1e-9
        )


class TestHessian:
    def test_norm_squared_identity(self):
        h = wirtinger_hessian(norm2, [0.1 + 0.2j, -0.3j])
        assert np.allclose(h.array, np.eye(2), atol=1e-9)

    def test_ball_potential_at_center(self):
        f = lambda z: -math.log(1 - norm2(z))
        h = wirtinger_hessian(f, [0.0, 0.0])
        assert np.allclose(h.array, np.eye(2), atol=1e-9)

    def test_disc_value(self):
        f = lambda z: -math.log(1 - norm2(z))
        h = wirtinger_hessian(f, [0.5])
        assert h.array[0, 0].real == pytest.approx(1 / 0.75**2, abs=1e-8)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(min_value=-3, max_value=3), min_size=12, max_size=12))
def test_exact_on_cubics(coeffs):
    # polynomial of degree <= 3 in each real coordinate of one complex variable
    c = np.array(coeffs, dtype=float).reshape(4, 3)

    def f(z):
        x, y = z[0].real, z[0].imag
        return sum(c[i, j] * x**i * y**j for i in range(4) for j in range(3))

    def fx(x, y):
        return sum(i * c[i, j] * x ** (i - 1) * y**j for i in range(1, 4) for j in range(3))

    def fy(x, y):
        return sum(j * c[i, j] * x**i * y ** (j - 1) for i in range(4) for j in range(1, 3))

    p = np.array([0.35 - 0.2j])
    x0, y0 = 0.35, -0.2
    grad = wirtinger_gradient(f, p)
    expected = 0.5 * (fx(x0, y0) - 1j * fy(x0, y0))
    scale = 1.0 + abs(expected)
    assert abs(grad[0] - expected) <= 1e-10 * scale


class TestAgainstClosedForms:
    @pytest.mark.parametrize(
        "base",
        [
            BaseDomainSpec.disc(1.0),
            BaseDomainSpec.ball(2, 1.0),
            BaseDomainSpec.polydisc((1.0, 2.0)),
            BaseDomainSpec.cartan_type_i(2, 2, 1.0),
            BaseDomainSpec.fock(1, 1.0),
        ],
    )
    def test_hessian_and_gradient_match_closed(self, base):
        spec = HartogsSpec(base, 1)
        pts = sample_points(spec, 6, seed=9, margin_frac=0.1, min_margin=0.05)

        def u(z):
            return -math.log(phi_of(base, z))

        from hartogs.domains import phi as phi_of

        for p in pts:
            closed_h = base_hessian_closed(base, p.base)
            fd_h = wirtinger_hessian(u, p.base)
            assert np.max(np.abs(fd_h.array - closed_h.array)) < 1e-5
            closed_g = minus_log_phi_gradient(base, p.base)
            fd_g = wirtinger_gradient(u, p.base)
            assert np.max(np.abs(fd_g - closed_g)) < 1e-5

    def test_hartogs_potential_hessian_is_psd(self):
        spec = HartogsSpec(BaseDomainSpec.ball(2, 1.0), 1)
        pts = sample_points(spec, 5, seed=13, margin_frac=0.2, min_margin=0.05)
        for p in pts:
            f = lambda q: hartogs_potential(spec, point_from_coords(spec, q))
            h = wirtinger_hessian(f, p.coords)
            assert np.linalg.eigvalsh(h.array)[0] > -1e-8


class TestMixedPartial:
    def test_monomial(self):
        # d^2 dbar^2 |z|^4 = (2!)^2
        f = lambda z: norm2(z) ** 2
        val = mixed_partial(f, [0.0], (2,), (2,))
        assert val.real == pytest.approx(4.0, abs=1e-5)

    def test_log_disc_fiber_block(self):
        f = lambda z: -math.log(1 - norm2(z))
        val = mixed_partial(f, [0.0], (2,), (2,))
        assert val.real == pytest.approx(2.0, abs=1e-5)

    def test_hyperbolic_taylor_coefficient(self):
        # 1 - (1 - t)^{3/2}: t^2 coefficient -0.375, derivative value -1.5
        f = lambda z: 1.0 - (1.0 - norm2(z)) ** 1.5
        val = mixed_partial(f, [0.0], (2,), (2,))
        assert val.real == pytest.approx(-1.5, abs=1e-5)

    def test_matches_first_order_gradient(self):
        f = lambda z: -math.log(1 - norm2(z))
        val = mixed_partial(f, [0.4], (1,), (0,))
        assert val == pytest.approx(0.4 / (1 - 0.16), abs=1e-6)

    def test_order_budget(self):
        with pytest.raises(CapabilityError):
            mixed_partial(norm2, [0.0], (5,), (4,))

    def test_order_validation(self):
        with pytest.raises(ValueError):
            mixed_partial(norm2, [0.0], (1, 1), (0,))


class TestBoundaryPropagation:
    def test_stencil_exit_raises(self):
        spec = HartogsSpec(BaseDomainSpec.disc(1.0), 1)
        p = point_from_coords(spec, [0.999, 0.0])

        def f(q):
            return hartogs_potential(spec, point_from_coords(spec, q))

        with pytest.raises(BoundaryViolationError):
            wirtinger_hessian(f, p.coords, DiffConfig(step=0.01))


def test_conjugate_jacobian_of_conjugate():
    # F(z) = conj(z) has dF/dzbar = 1
    f = lambda z: np.conj(z)
    jac = conjugate_jacobian(f, [0.2 + 0.1j])
    assert jac[0, 0] == pytest.approx(1.0, abs=1e-9)
