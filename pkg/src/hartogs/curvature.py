"""Curvature of the canonical Hartogs metric and its closed-form identities.

All formulas here are stated for the unscaled potential -log(phi - ||z0||^2)
(metric scale h = 1; scaling is a diastasis-side concern). With n = d + d0,
margin F = phi - ||z0||^2 and per-factor Einstein constants c_i:

* metric block formula:
      g = F^-2 * [[ F I + z0bar z0^T,            -z0bar (dphi)bar^T ],
                  [ -dphi z0^T,  dphi (dphi)bar^T - F ddbar(phi) ]]
* determinant:  det g = F^-(n+1) * prod_i phi_i^(d+1+c_i) * const_i
* Ricci:        Ric  = blockdiag(0, lambda_i g^(D_i)) - (n+1) g,
                lambda_i = d + 1 + c_i
* scalar:       s = tau (F / phi) - n (n+1),  tau = d(d+1) + sum c_i d_i

The numeric Ricci (mixed Hessian of log det g by finite differences) and the
extremal-condition residual act as independent oracles for the closed forms.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import domains
from .domains import (
    BaseDomainSpec,
    EvaluationPoint,
    HartogsSpec,
    factor_determinant_constants,
    factor_hessians,
    interior_margin,
    phi_with_derivatives,
    point_from_coords,
)
from .errors import BoundaryViolationError, HartogsError
from .hermitian import HermitianMatrix, determinant, eigenvalues, solve_hermitian
from .wirtinger import DiffConfig, conjugate_jacobian, wirtinger_hessian

#: Smallest interior margin accepted by the nested finite-difference oracles.
MIN_FD_MARGIN = 0.01

#: Default residual tolerance for the Einstein / extremal / scalar verdicts.
VERDICT_TOLERANCE = 1e-6


def tau_exact(base: BaseDomainSpec) -> Fraction | None:
    """tau = d(d+1) + sum c_i d_i in exact rational arithmetic, if available."""
    d = base.dim
    total = Fraction(d * (d + 1))
    for c, di in zip(base.einstein_constants_exact, base.dims):
        if c is None:
            return None
        total += c * di
    return total


def tau_value(base: BaseDomainSpec) -> float:
    d = base.dim
    return d * (d + 1) + sum(
        c * di for c, di in zip(base.einstein_constants, base.dims)
    )


def _tau_is_zero(base: BaseDomainSpec) -> bool:
    exact = tau_exact(base)
    if exact is not None:
        return exact == 0
    warnings.warn(
        "irrational exponent: deciding tau = 0 by |tau| <= 1e-12", stacklevel=3
    )
    return abs(tau_value(base)) <= 1e-12


def _margin_or_raise(spec: HartogsSpec, p: EvaluationPoint) -> float:
    margin = interior_margin(spec, p)
    if margin < domains.MIN_INTERIOR_MARGIN:
        raise BoundaryViolationError(
            f"point is not interior (margin {margin:.3e})", margin=margin
        )
    return margin


def metric_matrix(spec: HartogsSpec, p: EvaluationPoint) -> HermitianMatrix:
    """The n x n metric of -log(phi - ||z0||^2) from the closed block formula."""
    margin = _margin_or_raise(spec, p)
    z0 = p.fiber
    phi_val, phi_grad, phi_hess = phi_with_derivatives(spec.base, p.base)
    d0 = spec.fiber_dim
    d = spec.base.dim
    n = d0 + d
    g = np.empty((n, n), dtype=np.complex128)
    g[:d0, :d0] = margin * np.eye(d0) + np.outer(np.conj(z0), z0)
    g[:d0, d0:] = -np.outer(np.conj(z0), np.conj(phi_grad))
    g[d0:, :d0] = -np.outer(phi_grad, z0)
    g[d0:, d0:] = np.outer(phi_grad, np.conj(phi_grad)) - margin * phi_hess
    g /= margin**2
    return HermitianMatrix(g, atol=1e-12 * (1.0 + float(np.max(np.abs(g)))))


def _require_constants(base: BaseDomainSpec):
    if any(c is None for c in base.einstein_constants):
        raise HartogsError("base factor is missing an Einstein constant")


def det_closed(spec: HartogsSpec, p: EvaluationPoint) -> float:
    """det g from the closed identity; positive at interior points."""
    _require_constants(spec.base)
    margin = _margin_or_raise(spec, p)
    n = spec.total_dim
    d = spec.base.dim
    out = margin ** (-(n + 1))
    parts = [p.base[s] for s in spec.base.factor_slices]
    consts = factor_determinant_constants(spec.base)
    for idx, zf in enumerate(parts):
        c = spec.base.einstein_constants[idx]
        phi_i = domains._factor_phi(spec.base, idx, zf)
        out *= phi_i ** (d + 1 + c) * consts[idx]
    return out


def ricci_closed(spec: HartogsSpec, p: EvaluationPoint) -> HermitianMatrix:
    """Ric = blockdiag(0, lambda_i g^(D_i)) - (n+1) g, lambda_i = d+1+c_i."""
    _require_constants(spec.base)
    n = spec.total_dim
    d = spec.base.dim
    d0 = spec.fiber_dim
    ric = -(n + 1) * metric_matrix(spec, p).array
    blocks = factor_hessians(spec.base, p.base)
    for sl, block, c in zip(
        spec.base.factor_slices, blocks, spec.base.einstein_constants
    ):
        lam = d + 1 + c
        rows = slice(d0 + sl.start, d0 + sl.stop)
        ric[rows, rows] += lam * block
    return HermitianMatrix(ric, atol=1e-11 * (1.0 + float(np.max(np.abs(ric)))))


def _nested_step(margin: float) -> float:
    # Truncation of the Richardson second-derivative stencil scales like
    # step^4 / margin^6, so the step shrinks with margin^1.5.
    return min(1e-3, margin / 8.0, 0.08 * margin**1.5)


def ricci_numeric(spec: HartogsSpec, p: EvaluationPoint, cfg: DiffConfig | None = None) -> HermitianMatrix:
    """-ddbar log det g by finite differences; oracle for :func:`ricci_closed`.

    Agreement with the closed form is within 1e-3 entrywise for margins of
    0.05 and larger; the step is widened/narrowed with the margin to keep the
    nested-difference error inside that budget.
    """
    margin = _margin_or_raise(spec, p)
    if margin < MIN_FD_MARGIN:
        raise BoundaryViolationError(
            f"margin {margin:.3e} too small for the nested difference stencil",
            margin=margin,
        )
    if cfg is None:
        cfg = DiffConfig(step=_nested_step(margin), richardson=True)

    def log_det(q):
        m = metric_matrix(spec, point_from_coords(spec, q))
        sign, logabs = np.linalg.slogdet(m.array)
        return float(logabs)

    hess = wirtinger_hessian(log_det, p.coords, cfg)
    return HermitianMatrix(-hess.array)


@dataclass(frozen=True)
class ScalarCurvature:
    trace: float
    closed: float
    tau: float


def scalar_curvature(spec: HartogsSpec, p: EvaluationPoint) -> ScalarCurvature:
    """Scalar curvature via the trace pairing and via the closed formula."""
    _require_constants(spec.base)
    margin = _margin_or_raise(spec, p)
    g = metric_matrix(spec, p)
    ric = ricci_closed(spec, p)
    trace = float(np.real(np.trace(np.linalg.solve(g.array, ric.array))))
    n = spec.total_dim
    tau = tau_value(spec.base)
    phi_val = domains.phi(spec.base, p.base)
    closed = tau * margin / phi_val - (n + 1) * n
    return ScalarCurvature(trace=trace, closed=closed, tau=tau)


def einstein_residual(spec: HartogsSpec, p: EvaluationPoint) -> float:
    """Max-norm of Ric + (n+1) g = blockdiag(0, lambda_i g^(D_i)).

    Uses the closed Ricci, so the Einstein verdict does not inherit
    finite-difference noise; exact zero for lambda_i = 0.
    """
    _require_constants(spec.base)
    d = spec.base.dim
    out = 0.0
    for block, c in zip(
        factor_hessians(spec.base, p.base), spec.base.einstein_constants
    ):
        lam = d + 1 + c
        out = max(out, abs(lam) * float(np.max(np.abs(block))))
    return out


def _scalar_gradient(spec: HartogsSpec, q: EvaluationPoint):
    """Closed holomorphic gradient of the scalar curvature at q."""
    tau = tau_value(spec.base)
    phi_val, phi_grad, _ = phi_with_derivatives(spec.base, q.base)
    r2 = float(np.real(np.vdot(q.fiber, q.fiber)))
    grad_fiber = -tau * np.conj(q.fiber) / phi_val
    grad_base = tau * r2 * phi_grad / phi_val**2
    return np.concatenate([grad_fiber, grad_base])


@dataclass(frozen=True)
class ExtremalCheck:
    """Residual of the extremal condition plus the closed fiber witness."""

    residual: float
    witness_closed: complex
    fiber_component: complex


def extremal_check(spec: HartogsSpec, p: EvaluationPoint, cfg: DiffConfig | None = None) -> ExtremalCheck:
    """Holomorphy defect of V^a = sum_b g^(b abar) ds/dzbar_b.

    The metric is extremal exactly when dV/dzbar vanishes; the residual is
    the max entry of that conjugate Jacobian by finite differences. The
    closed witness -tau z01 (phi - ||z0||^2)^2 / phi^2 cross-checks the first
    fiber component of V, which is computed through the linear-solve path.
    """
    margin = _margin_or_raise(spec, p)
    if margin < MIN_FD_MARGIN:
        raise BoundaryViolationError(
            f"margin {margin:.3e} too small for the extremal stencil",
            margin=margin,
        )

    def v_field(q):
        pt = point_from_coords(spec, q)
        g = metric_matrix(spec, pt)
        grad_s = _scalar_gradient(spec, pt)
        return np.conj(solve_hermitian(g, grad_s))

    if cfg is None:
        cfg = DiffConfig(step=min(1e-3, margin / 8.0), richardson=True)
    jac = conjugate_jacobian(v_field, p.coords, cfg)
    residual = float(np.max(np.abs(jac)))
    tau = tau_value(spec.base)
    phi_val = domains.phi(spec.base, p.base)
    witness = -tau * complex(p.fiber[0]) * margin**2 / phi_val**2
    fiber_component = complex(v_field(p.coords)[0])
    return ExtremalCheck(
        residual=residual, witness_closed=witness, fiber_component=fiber_component
    )


def extremal_residual(spec: HartogsSpec, p: EvaluationPoint, cfg: DiffConfig | None = None) -> float:
    return extremal_check(spec, p, cfg).residual


@dataclass(frozen=True)
class CurvatureVerdicts:
    is_einstein: bool
    is_extremal: bool
    is_constant_scalar: bool
    max_einstein_residual: float
    max_extremal_residual: float
    scalar_variance: float
    tau: float
    tolerance: float


def verdicts(spec: HartogsSpec, sample, tol: float = VERDICT_TOLERANCE) -> CurvatureVerdicts:
    """Einstein / extremal / constant-scalar decisions over a point sample.

    tau is decided in exact rational arithmetic on the catalog constants, so
    the constant-scalar verdict is a real equality test, not a float one.
    For Einstein bases the three verdicts coincide; this is asserted.
    """
    sample = list(sample)
    if len(sample) < 10:
        raise ValueError("verdicts need at least 10 sample points")
    max_einstein = max(einstein_residual(spec, p) for p in sample)
    max_extremal = max(extremal_residual(spec, p) for p in sample)
    scalars = [scalar_curvature(spec, p).closed for p in sample]
    variance = float(np.var(scalars))
    out = CurvatureVerdicts(
        is_einstein=max_einstein <= tol,
        is_extremal=max_extremal <= tol,
        is_constant_scalar=_tau_is_zero(spec.base) and variance <= tol,
        max_einstein_residual=max_einstein,
        max_extremal_residual=max_extremal,
        scalar_variance=variance,
        tau=tau_value(spec.base),
        tolerance=tol,
    )
    if len({out.is_einstein, out.is_extremal, out.is_constant_scalar}) != 1:
        raise HartogsError(
            "Einstein / extremal / constant-scalar verdicts disagree on an "
            f"Einstein base: {out}"
        )
    return out


@dataclass(frozen=True)
class CurvatureReport:
    """Everything computed at one point, closed forms next to their oracles."""

    point: EvaluationPoint
    metric: HermitianMatrix
    det_closed: float
    det_direct: float
    ricci_closed: HermitianMatrix
    ricci_numeric: HermitianMatrix | None
    scalar_trace: float
    scalar_closed: float
    tau: float
    einstein_residual: float
    extremal_residual: float


def curvature_report(
    spec: HartogsSpec,
    p: EvaluationPoint,
    include_ricci_numeric: bool = False,
    include_extremal: bool = True,
) -> CurvatureReport:
    g = metric_matrix(spec, p)
    if eigenvalues(g)[0] <= 0:
        raise HartogsError("metric is not positive definite at an interior point")
    scal = scalar_curvature(spec, p)
    return CurvatureReport(
        point=p,
        metric=g,
        det_closed=det_closed(spec, p),
        det_direct=float(determinant(g).real),
        ricci_closed=ricci_closed(spec, p),
        ricci_numeric=ricci_numeric(spec, p) if include_ricci_numeric else None,
        scalar_trace=scal.trace,
        scalar_closed=scal.closed,
        tau=scal.tau,
        einstein_residual=einstein_residual(spec, p),
        extremal_residual=extremal_residual(spec, p) if include_extremal else math.nan,
    )
