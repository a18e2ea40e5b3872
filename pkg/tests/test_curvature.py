import math
from fractions import Fraction

import numpy as np
import pytest

from hartogs.curvature import (
    CurvatureVerdicts,
    curvature_report,
    det_closed,
    einstein_residual,
    extremal_check,
    extremal_residual,
    metric_matrix,
    ricci_closed,
    ricci_numeric,
    scalar_curvature,
    tau_exact,
    tau_value,
    verdicts,
)
from hartogs.domains import (
    BaseDomainSpec,
    HartogsSpec,
    base_hessian_closed,
    hartogs_potential,
    phi,
    point,
    point_from_coords,
    sample_points,
)
from hartogs.hermitian import determinant
from hartogs.wirtinger import wirtinger_hessian

B2 = HartogsSpec(BaseDomainSpec.disc(1.0), 1)  # the unit ball in C^2
DISC2 = HartogsSpec(BaseDomainSpec.disc(2.0), 1)
FOCK = HartogsSpec(BaseDomainSpec.fock(1, 1.0), 1)

SPEC_GRID = [
    HartogsSpec(BaseDomainSpec.disc(0.5), 1),
    HartogsSpec(BaseDomainSpec.disc(1.0), 2),
    HartogsSpec(BaseDomainSpec.ball(2, 1.0), 1),
    HartogsSpec(BaseDomainSpec.polydisc((1.0, 2.0)), 2),
    HartogsSpec(BaseDomainSpec.fock(1, 1.0), 1),
]


class TestTau:
    def test_disc_values(self):
        assert tau_exact(BaseDomainSpec.disc(1.0)) == 0
        assert tau_exact(BaseDomainSpec.disc(2.0)) == 1
        assert tau_exact(BaseDomainSpec.fock(1, 1.0)) == 2
        assert tau_exact(BaseDomainSpec.polydisc((1.0, 2.0))) == Fraction(3)

    def test_float_agrees(self):
        for base in (b.base for b in SPEC_GRID):
            exact = tau_exact(base)
            assert tau_value(base) == pytest.approx(float(exact), abs=1e-12)


class TestMetric:
    def test_b2_origin_identity(self):
        g = metric_matrix(B2, point([0.0], [0.0]))
        assert np.allclose(g.array, np.eye(2))

    def test_b2_half(self):
        g = metric_matrix(B2, point([0.5], [0.0]))
        assert g.array[0, 0].real == pytest.approx(16 / 9, rel=1e-13)
        assert g.array[0, 1] == pytest.approx(0.0, abs=1e-14)
        assert g.array[1, 1].real == pytest.approx(4 / 3, rel=1e-13)

    def test_fiber_block_at_zero_fiber(self):
        spec = HartogsSpec(BaseDomainSpec.disc(2.0), 2)
        p = point([0.0, 0.0], [0.3])
        g = metric_matrix(spec, p)
        expected = np.eye(2) / phi(spec.base, p.base)
        assert np.allclose(g.array[:2, :2], expected, atol=1e-13)

    @pytest.mark.parametrize("spec", SPEC_GRID)
    def test_matches_potential_hessian(self, spec):
        pts = sample_points(spec, 5, seed=21, margin_frac=0.15, min_margin=0.06)
        for p in pts:
            f = lambda q: hartogs_potential(spec, point_from_coords(spec, q))
            fd = wirtinger_hessian(f, p.coords)
            assert np.max(np.abs(fd.array - metric_matrix(spec, p).array)) < 1e-5


class TestDeterminant:
    def test_disc_closed_value(self):
        # c = -2 kills the phi power, so det = margin^-3 with constant 1
        p = point([0.5], [0.0])
        assert det_closed(B2, p) == pytest.approx(0.75**-3, rel=1e-13)
        assert det_closed(B2, p) == pytest.approx(2.3703703703703702, rel=1e-12)

    def test_fock_closed_value(self):
        # c = 0, exponent d+1 = 2, constant 1: (e^-1)^-3 (e^-1)^2 = e
        p = point([0.0], [1.0])
        assert det_closed(FOCK, p) == pytest.approx(math.e, rel=1e-13)

    def test_origin_gives_constant(self):
        spec = HartogsSpec(BaseDomainSpec.polydisc((1.0, 2.0)), 1)
        p = point([0.0], [0.0, 0.0])
        assert det_closed(spec, p) == pytest.approx(2.0, rel=1e-13)

    @pytest.mark.parametrize("spec", SPEC_GRID)
    def test_identity_against_direct_determinant(self, spec):
        for p in sample_points(spec, 25, seed=3):
            direct = determinant(metric_matrix(spec, p)).real
            assert det_closed(spec, p) == pytest.approx(direct, rel=1e-8)


class TestRicci:
    def test_b2_is_einstein(self):
        for p in sample_points(B2, 10, seed=1):
            ric = ricci_closed(B2, p)
            g = metric_matrix(B2, p)
            assert np.max(np.abs(ric.array + 3 * g.array)) < 1e-12

    def test_disc2_origin_assembly(self):
        p = point([0.0], [0.0])
        ric = ricci_closed(DISC2, p)
        g = metric_matrix(DISC2, p)
        gd = base_hessian_closed(DISC2.base, p.base)
        expected = -3 * g.array
        expected[1:, 1:] += 1.0 * gd.array  # lambda = d + 1 + c = 1
        assert np.allclose(ric.array, expected)

    def test_fock_fiber_block_vanishes(self):
        p = point([0.2], [0.4])
        ric = ricci_closed(FOCK, p)
        g = metric_matrix(FOCK, p)
        shifted = ric.array + 3 * g.array
        assert np.max(np.abs(shifted[:1, :1])) < 1e-13

    def test_numeric_oracle_b2_origin(self):
        ric = ricci_numeric(B2, point([0.0], [0.0]))
        assert np.max(np.abs(ric.array + 3 * np.eye(2))) < 1e-3

    @pytest.mark.parametrize(
        "spec", [B2, DISC2, FOCK, HartogsSpec(BaseDomainSpec.polydisc((1.0, 2.0)), 1)]
    )
    def test_numeric_matches_closed(self, spec):
        for p in sample_points(spec, 3, seed=17, margin_frac=0.15, min_margin=0.06):
            num = ricci_numeric(spec, p)
            clo = ricci_closed(spec, p)
            assert np.max(np.abs(num.array - clo.array)) < 1e-3


class TestScalar:
    def test_disc_mu_one_constant(self):
        for p in sample_points(B2, 10, seed=2):
            s = scalar_curvature(B2, p)
            assert s.closed == pytest.approx(-6.0, abs=1e-12)
            assert s.trace == pytest.approx(-6.0, abs=1e-9)

    def test_disc_mu_two_values(self):
        # tau = 1: s = -5 at z0 = 0 and -5.5 at ||z0||^2 = phi/2
        z = 0.3
        p0 = point([0.0], [z])
        s0 = scalar_curvature(DISC2, p0)
        assert s0.closed == pytest.approx(-5.0, abs=1e-12)
        phi_val = phi(DISC2.base, [z])
        p_half = point([math.sqrt(phi_val / 2)], [z])
        s_half = scalar_curvature(DISC2, p_half)
        assert s_half.closed == pytest.approx(-5.5, abs=1e-12)

    @pytest.mark.parametrize("spec", SPEC_GRID)
    def test_trace_pairing_matches_closed(self, spec):
        for p in sample_points(spec, 10, seed=4):
            s = scalar_curvature(spec, p)
            assert abs(s.trace - s.closed) < 1e-6


class TestExtremal:
    def test_einstein_case_residual_zero(self):
        for p in sample_points(B2, 5, seed=6, margin_frac=0.1, min_margin=0.05):
            assert extremal_residual(B2, p) <= 1e-4

    def test_fock_not_extremal(self):
        res = extremal_residual(FOCK, point([0.4], [0.3]))
        assert res > 1e-3

    def test_witness_vanishes_at_zero_fiber(self):
        chk = extremal_check(DISC2, point([0.0], [0.3]))
        assert chk.witness_closed == 0

    @pytest.mark.parametrize("spec", [DISC2, FOCK])
    def test_witness_matches_solve_path(self, spec):
        p = point([0.3 + 0.2j], [0.25 - 0.1j])
        chk = extremal_check(spec, p)
        assert abs(chk.fiber_component - chk.witness_closed) < 1e-3
        assert abs(chk.witness_closed) > 1e-3  # non-degenerate control

    def test_einstein_residual_fiber_rotation_invariant(self):
        p = point([0.3 + 0.1j], [0.2])
        rot = np.exp(0.7j)
        a = einstein_residual(DISC2, p)
        b = einstein_residual(DISC2, point(rot * p.fiber, p.base))
        assert a == pytest.approx(b, rel=1e-12)


class TestVerdicts:
    def test_einstein_chain_true(self):
        pts = sample_points(B2, 12, seed=8, margin_frac=0.1, min_margin=0.05)
        v = verdicts(B2, pts)
        assert v.is_einstein and v.is_extremal and v.is_constant_scalar

    @pytest.mark.parametrize("spec", [DISC2, FOCK])
    def test_non_einstein_chain_false(self, spec):
        pts = sample_points(spec, 12, seed=8, margin_frac=0.1, min_margin=0.05)
        v = verdicts(spec, pts)
        assert not (v.is_einstein or v.is_extremal or v.is_constant_scalar)

    def test_requires_ten_points(self):
        with pytest.raises(ValueError):
            verdicts(B2, sample_points(B2, 5, seed=1))

    @pytest.mark.parametrize("spec", SPEC_GRID)
    def test_chain_equivalence_on_catalog(self, spec):
        # tau = 0 iff Einstein iff extremal; verdicts() raises on mismatch
        pts = sample_points(spec, 10, seed=23, margin_frac=0.1, min_margin=0.05)
        v = verdicts(spec, pts)
        from hartogs.curvature import tau_exact

        assert v.is_einstein == (tau_exact(spec.base) == 0)


def test_report_fields_consistent():
    p = point([0.2], [0.3])
    rep = curvature_report(B2, p, include_ricci_numeric=True)
    assert rep.det_closed == pytest.approx(rep.det_direct, rel=1e-10)
    assert rep.scalar_trace == pytest.approx(rep.scalar_closed, abs=1e-7)
    assert rep.ricci_numeric is not None
    assert rep.tau == pytest.approx(0.0)
