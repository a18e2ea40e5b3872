"""Diastasis power-series machinery: multi-index ordering, coefficient blocks
and resolvability verdicts for the three complex space forms.

Around the origin of a circular Hartogs domain, with t = ||z0||^2 and
potential D = -h log(phi(z) - t), the three Calabi expansions split into
univariate-in-t series whose z-parts are powers of phi:

    Euclidean    D           = h [ -log phi + sum_{s>=1} t^s phi^-s / s ]
    Projective   e^D - 1     = sum_s  poch(h, s)/s!       t^s phi^-(h+s) - 1
    Hyperbolic   1 - e^-D    = 1 - sum_s (-1)^s binom(h,s) t^s phi^(h-s)

Circularity kills every coefficient whose fiber degrees or base degrees
disagree, so the infinite coefficient matrix is block diagonal over the pairs
(total degree i, fiber degree s); each block is assembled here in derivative
normalization (Taylor coefficient times m_j! m_k!). For the radial catalog
bases the per-block base tables are themselves diagonal with closed forms,
built from Pochhammer products; the Hyperbolic entries come from this direct
Taylor expansion, and only their signs are compared against external claims.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import wirtinger
from .domains import (
    BaseDomainSpec,
    DomainKind,
    EvaluationPoint,
    HartogsSpec,
    hartogs_potential,
    point_from_coords,
)
from .errors import CapabilityError
from .hermitian import HermitianMatrix, PsdVerdict, psd_check

#: Above this total degree, Gamma-type factors are assembled in log space.
_LOG_SPACE_THRESHOLD = 60


class Form(str, Enum):
    """Target space form, named by the sign of its holomorphic curvature."""

    EUCLIDEAN = "euclidean"
    PROJECTIVE = "projective"
    HYPERBOLIC = "hyperbolic"


# ---------------------------------------------------------------------------
# Multi-index ordering
# ---------------------------------------------------------------------------


def index_degree(m) -> int:
    return sum(m)

def index_sort_key(m):
    """Graded order; within a grade the larger leading entry comes first."""
    return (sum(m), tuple(-e for e in m))


def _grade(var_count: int, deg: int):
    if var_count == 1:
        yield (deg,)
        return
    for first in range(deg, -1, -1):
        for rest in _grade(var_count - 1, deg - first):
            yield (first,) + rest


def grade_indices(var_count: int, deg: int) -> list[tuple[int, ...]]:
    """All multi-indices of exact degree ``deg``, in the canonical order."""
    return list(_grade(var_count, deg))


def enumerate_indices(var_count: int, max_degree: int) -> list[tuple[int, ...]]:
    """All multi-indices of degree <= max_degree in the graded order."""
    if var_count < 1 or max_degree < 0:
        raise ValueError("need var_count >= 1 and max_degree >= 0")
    out: list[tuple[int, ...]] = []
    for deg in range(max_degree + 1):
        out.extend(_grade(var_count, deg))
    return out


def multi_factorial(m) -> float:
    out = 1
    for e in m:
        out *= math.factorial(e)
    return float(out)


# ---------------------------------------------------------------------------
# Gamma-type factors
# ---------------------------------------------------------------------------


def pochhammer(a: float, k: int) -> float:
    """Rising factorial a (a+1) ... (a+k-1); exact zeros are preserved."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = 1.0
    for j in range(k):
        term = a + j
        if term == 0.0:
            return 0.0
        out *= term
    if math.isinf(out):
        sign = 1.0
        log_abs = 0.0
        for j in range(k):
            term = a + j
            sign *= math.copysign(1.0, term)
            log_abs += math.log(abs(term))
        return sign * math.exp(min(log_abs, 745.0))
    return out


def gamma_ratio(h: float, sigma: int) -> float:
    """Gamma(h + sigma) Gamma(sigma + 1) / Gamma(h), always positive for h > 0."""
    if sigma <= _LOG_SPACE_THRESHOLD:
        return pochhammer(h, sigma) * math.factorial(sigma)
    return math.exp(math.lgamma(h + sigma) - math.lgamma(h) + math.lgamma(sigma + 1))


# ---------------------------------------------------------------------------
# Radial base coefficient tables (derivative normalization)
# ---------------------------------------------------------------------------


def _require_radial(base: BaseDomainSpec):
    if base.kind is DomainKind.CARTAN_TYPE_I and min(base.shape) >= 2:
        raise CapabilityError("rank >= 2 Cartan series unsupported")


def _factor_power_deriv(base: BaseDomainSpec, idx: int, s: float, part) -> float:
    """Derivative-normalized diagonal entry of phi_i^-s for one factor."""
    mu = base.exponents[idx]
    k = sum(part)
    if base.kind is DomainKind.FOCK:
        return (s * mu) ** k * multi_factorial(part)
    # ball-like: (1 - t)^(-mu s) expands with Pochhammer coefficients
    return pochhammer(mu * s, k) * multi_factorial(part)


def _factor_log_deriv(base: BaseDomainSpec, idx: int, part) -> float:
    """Derivative-normalized diagonal entry of -log phi_i for one factor."""
    mu = base.exponents[idx]
    k = sum(part)
    if k == 0:
        return 0.0
    if base.kind is DomainKind.FOCK:
        return mu if k == 1 else 0.0
    return mu * math.factorial(k - 1) * multi_factorial(part)


def power_deriv(base: BaseDomainSpec, s: float, alpha) -> float:
    """Mixed partial of phi^-s at 0 for the diagonal index pair (alpha, alpha)."""
    _require_radial(base)
    out = 1.0
    for idx, sl in enumerate(base.factor_slices):
        out *= _factor_power_deriv(base, idx, s, alpha[sl])
    return out


def log_deriv(base: BaseDomainSpec, alpha) -> float:
    """Mixed partial of -log phi at 0 for the diagonal pair (alpha, alpha).

    -log phi is a sum over factors, so the entry vanishes unless alpha is
    supported on a single factor.
    """
    _require_radial(base)
    supported = [
        (idx, alpha[sl])
        for idx, sl in enumerate(base.factor_slices)
        if sum(alpha[sl]) > 0
    ]
    if len(supported) != 1:
        return 0.0
    idx, part = supported[0]
    return _factor_log_deriv(base, idx, part)


def base_power_coefficients(base: BaseDomainSpec, s: float, max_degree: int) -> dict:
    """Diagonal table {(alpha, alpha): mixed partial of phi^-s at 0}.

    Negative s arises for the hyperbolic form, where phi^(h - sigma) is
    queried as s = sigma - h.
    """
    _require_radial(base)
    return {
        (alpha, alpha): power_deriv(base, s, alpha)
        for alpha in enumerate_indices(base.dim, max_degree)
    }


# ---------------------------------------------------------------------------
# Coefficient blocks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoefficientBlock:
    """One diagonal block at (total degree, fiber degree) of a form's matrix.

    Rows and columns are (fiber index, base index) pairs in the canonical
    order; ``matrix`` holds derivative-normalized coefficients.
    """

    form: Form
    total_degree: int
    fiber_degree: int
    fiber_indices: tuple
    base_indices: tuple
    matrix: HermitianMatrix


def _series_term(form: Form, sigma: int, h: float):
    """Series prefactor P_sigma and the base-table spec ('log' or power s).

    The expanded potential reads sum_sigma P_sigma t^sigma G_sigma(z); entries
    in derivative normalization are P_sigma sigma! nu! times the table value.
    """
    if form is Form.EUCLIDEAN:
        if sigma == 0:
            return h, ("log", None)
        return h / sigma, ("power", float(sigma))
    if form is Form.PROJECTIVE:
        return pochhammer(h, sigma) / math.factorial(sigma), ("power", h + sigma)
    if sigma == 0:
        return -1.0, ("power", -h)
    return -pochhammer(-h, sigma) / math.factorial(sigma), ("power", float(sigma) - h)


def _table_value(base: BaseDomainSpec, table_spec, alpha) -> float:
    kind, s = table_spec
    if kind == "log":
        return log_deriv(base, alpha)
    return power_deriv(base, s, alpha)


def block(form: Form, spec: HartogsSpec, i: int, sigma: int, h: float | None = None) -> CoefficientBlock:
    """The (i, sigma) diagonal block of the chosen form's coefficient matrix.

    Fiber multi-indices of degree sigma expand ||z0||^(2 sigma) multinomially
    (positive weights sigma! nu!), which keeps the one-fiber block structure
    for every fiber dimension.
    """
    _require_radial(spec.base)
    if not 0 <= sigma <= i:
        raise ValueError("need 0 <= sigma <= i")
    h = spec.scale if h is None else float(h)
    if h <= 0:
        raise ValueError("scale h must be positive")
    form = Form(form)
    if i == 0:
        # constant term of all three expansions vanishes since phi(0) = 1
        return CoefficientBlock(
            form=form,
            total_degree=0,
            fiber_degree=0,
            fiber_indices=((0,) * spec.fiber_dim,),
            base_indices=((0,) * spec.base.dim,),
            matrix=HermitianMatrix([[0.0]]),
        )
    fiber_idx = tuple(grade_indices(spec.fiber_dim, sigma))
    base_idx = tuple(grade_indices(spec.base.dim, i - sigma))
    prefactor, table_spec = _series_term(form, sigma, h)
    sig_fact = math.factorial(sigma)
    entries = np.array(
        [
            prefactor * sig_fact * multi_factorial(nu) * _table_value(spec.base, table_spec, alpha)
            for nu in fiber_idx
            for alpha in base_idx
        ]
    )
    return CoefficientBlock(
        form=form,
        total_degree=i,
        fiber_degree=sigma,
        fiber_indices=fiber_idx,
        base_indices=base_idx,
        matrix=HermitianMatrix(np.diag(entries)),
    )


# ---------------------------------------------------------------------------
# Resolvability
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockFailure:
    total_degree: int
    fiber_degree: int
    min_eigenvalue: float


@dataclass(frozen=True)
class ResolvabilityVerdict:
    """PSD sweep over all blocks up to a truncation degree.

    ``first_failure`` is the first failing block in the canonical traversal:
    total degree ascending, fiber degree descending within a degree (the
    layout of the block-diagonal display).
    """

    form: Form
    h: float
    truncation_degree: int
    all_psd: bool
    rank_lower_bound: int
    first_failure: BlockFailure | None
    block_verdicts: tuple = ()


def resolvability(
    form: Form,
    spec: HartogsSpec,
    h: float | None = None,
    truncation_degree: int = 10,
    tol: float | None = None,
) -> ResolvabilityVerdict:
    """Decide PSD-ness of every coefficient block with i <= truncation_degree.

    ``rank_lower_bound`` sums numeric ranks over all blocks and is
    nondecreasing in the truncation degree.
    """
    if truncation_degree < 2:
        raise ValueError("truncation degree must be at least 2")
    h = spec.scale if h is None else float(h)
    all_psd = True
    rank = 0
    first: BlockFailure | None = None
    per_block = []
    for i in range(truncation_degree + 1):
        for sigma in range(i, -1, -1):
            b = block(form, spec, i, sigma, h)
            v = psd_check(b.matrix, tol)
            per_block.append(((i, sigma), v))
            rank += v.numeric_rank
            if not v.is_psd:
                all_psd = False
                if first is None:
                    first = BlockFailure(i, sigma, v.min_eigenvalue)
    return ResolvabilityVerdict(
        form=Form(form),
        h=h,
        truncation_degree=truncation_degree,
        all_psd=all_psd,
        rank_lower_bound=rank,
        first_failure=first,
        block_verdicts=tuple(per_block),
    )


# ---------------------------------------------------------------------------
# Series evaluation and the finite-difference audit
# ---------------------------------------------------------------------------


def diastasis_value(spec: HartogsSpec, p: EvaluationPoint) -> float:
    """The diastasis from the origin equals the scaled potential itself."""
    return hartogs_potential(spec, p)


def series_partial_sum(spec: HartogsSpec, p: EvaluationPoint, truncation_degree: int) -> float:
    """Partial sum of the Euclidean-form expansion through total degree T.

    Only meaningful near the origin; enforced at ||(z0, z)|| <= 0.3 where the
    expansions converge fast for every catalog base.
    """
    _require_radial(spec.base)
    coords = p.coords
    if float(np.linalg.norm(coords)) > 0.3:
        raise ValueError("series evaluation expects ||coordinates|| <= 0.3")
    fiber_sq = np.abs(np.asarray(p.fiber)) ** 2
    base_sq = np.abs(np.asarray(p.base)) ** 2
    h = spec.scale
    total = 0.0
    for i in range(truncation_degree + 1):
        if i == 0:
            continue
        for sigma in range(i, -1, -1):
            prefactor, table_spec = _series_term(Form.EUCLIDEAN, sigma, h)
            sig_fact = math.factorial(sigma)
            for nu in grade_indices(spec.fiber_dim, sigma):
                fiber_mono = float(np.prod(fiber_sq ** np.array(nu)))
                weight = sig_fact / multi_factorial(nu)
                for alpha in grade_indices(spec.base.dim, i - sigma):
                    deriv = _table_value(spec.base, table_spec, alpha)
                    if deriv == 0.0:
                        continue
                    coeff = deriv / multi_factorial(alpha) ** 2
                    base_mono = float(np.prod(base_sq ** np.array(alpha)))
                    total += prefactor * weight * coeff * fiber_mono * base_mono
    return total


@dataclass(frozen=True)
class CrossCoefficientAudit:
    """Finite-difference audit of the rotation-forced zero coefficients."""

    max_off_structure: float
    pair_values: tuple
    control_pair: tuple
    control_fd: float
    control_expected: float


def _violating_pairs(spec: HartogsSpec, max_degree: int, count: int):
    """Deterministic list of index pairs whose coefficients must vanish."""
    n = spec.total_dim
    d0 = spec.fiber_dim
    indices = enumerate_indices(n, max_degree)
    pairs = []
    for a_pos, mj in enumerate(indices):
        for mk in indices[a_pos:]:
            if sum(mj) + sum(mk) > max_degree or sum(mj) + sum(mk) < 2:
                continue
            fiber_mismatch = sum(mj[:d0]) != sum(mk[:d0])
            base_mismatch = sum(mj[d0:]) != sum(mk[d0:])
            if fiber_mismatch or base_mismatch:
                pairs.append((mj, mk))
    pairs.sort(key=lambda jk: (sum(jk[0]) + sum(jk[1]), jk))
    return pairs[:count]


def cross_coefficient_audit(
    spec: HartogsSpec,
    max_degree: int = 4,
    pair_count: int = 12,
    cfg: wirtinger.DiffConfig | None = None,
) -> CrossCoefficientAudit:
    """Compute off-structure coefficients by finite differences.

    Every selected pair violates one of the rotation-invariance conditions
    (fiber degrees differ, or base degrees differ), so its coefficient must
    vanish; the returned maximum magnitude is the audit value. A diagonal
    control pair is evaluated alongside and compared with its analytic block
    entry.
    """
    _require_radial(spec.base)
    if max_degree > 4:
        raise CapabilityError("audit is a low-order oracle; max_degree <= 4")
    cfg = cfg or wirtinger.DiffConfig()
    origin = np.zeros(spec.total_dim, dtype=np.complex128)

    def f(q):
        return hartogs_potential(spec, point_from_coords(spec, q))

    values = []
    for mj, mk in _violating_pairs(spec, max_degree, pair_count):
        fd = wirtinger.mixed_partial(f, origin, mj, mk, cfg)
        values.append(((mj, mk), abs(fd)))

    control = ((1,) + (0,) * (spec.total_dim - 1),) * 2
    control_fd = wirtinger.mixed_partial(f, origin, control[0], control[1], cfg)
    control_expected = float(
        block(Form.EUCLIDEAN, spec, 1, 1).matrix.array[0, 0].real
    )
    return CrossCoefficientAudit(
        max_off_structure=max(v for _, v in values),
        pair_values=tuple(values),
        control_pair=control,
        control_fd=float(np.real(control_fd)),
        control_expected=control_expected,
    )
