"""Finite-difference Wirtinger calculus for real-valued functions of z, zbar.

The targets are non-holomorphic (they depend on both z and zbar), so
complex-step differentiation is invalid; everything runs as central
differences on the 2n underlying real coordinates, with optional Richardson
extrapolation (O(step^4)).

Conventions, for z_a = x_a + i y_a:

    d/dz_a    = (d/dx_a - i d/dy_a) / 2
    d/dzbar_a = (d/dx_a + i d/dy_a) / 2

Functions raise :class:`BoundaryViolationError` from inside the stencil when
an evaluation point leaves the domain; callers that know a margin are
expected to keep ``step <= margin / 8``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import CapabilityError
from .hermitian import HermitianMatrix

# Step schedule for iterated (order > 2) Wirtinger stencils: level l uses
# _ITERATED_BASE_STEP * _ITERATED_SHRINK**l, decreasing inward so stencil
# levels never collide and roundoff stays far below the truncation budget.
_ITERATED_BASE_STEP = 0.02
_ITERATED_SHRINK = 0.7


@dataclass(frozen=True)
class DiffConfig:
    step: float = 1e-4
    richardson: bool = True
    max_order: int = 4

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("step must be positive")
        if not 1 <= self.max_order <= 4:
            raise ValueError("max_order must lie in 1..4")


DEFAULT_CONFIG = DiffConfig()


def _split_real(p: np.ndarray) -> np.ndarray:
    p = np.atleast_1d(np.asarray(p, dtype=np.complex128))
    return np.concatenate([p.real, p.imag])


def _join_complex(u: np.ndarray) -> np.ndarray:
    n = len(u) // 2
    return u[:n] + 1j * u[n:]


def _wrap(f: Callable) -> Callable:
    return lambda u: f(_join_complex(u))


def _d1(fv, u, idx, step, richardson):
    def stencil(h):
        up = u.copy()
        um = u.copy()
        up[idx] += h
        um[idx] -= h
        return (fv(up) - fv(um)) / (2.0 * h)

    if not richardson:
        return stencil(step)
    return (4.0 * stencil(step / 2.0) - stencil(step)) / 3.0


def _d2_diag(fv, u, f0, idx, step, richardson):
    def stencil(h):
        up = u.copy()
        um = u.copy()
        up[idx] += h
        um[idx] -= h
        return (fv(up) - 2.0 * f0 + fv(um)) / (h * h)

    if not richardson:
        return stencil(step)
    return (4.0 * stencil(step / 2.0) - stencil(step)) / 3.0


def _d2_cross(fv, u, i, j, step, richardson):
    def stencil(h):
        total = 0.0
        for si, sj in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            v = u.copy()
            v[i] += si * h
            v[j] += sj * h
            total += si * sj * fv(v)
        return total / (4.0 * h * h)

    if not richardson:
        return stencil(step)
    return (4.0 * stencil(step / 2.0) - stencil(step)) / 3.0


def wirtinger_gradient(f, p, cfg: DiffConfig = DEFAULT_CONFIG) -> np.ndarray:
    """(df/dz_a)_a of a real-valued f at the complex vector p."""
    u = _split_real(p)
    n = len(u) // 2
    fv = _wrap(f)
    gx = np.array([_d1(fv, u, a, cfg.step, cfg.richardson) for a in range(n)])
    gy = np.array([_d1(fv, u, n + a, cfg.step, cfg.richardson) for a in range(n)])
    return 0.5 * (gx - 1j * gy)


def wirtinger_hessian(f, p, cfg: DiffConfig = DEFAULT_CONFIG) -> HermitianMatrix:
    """Mixed Hessian (d^2 f / dz_a dzbar_b) of a real-valued f at p.

    Built from the full real Hessian H over (x, y):

        W = (H_xx + H_yy + i (H_xy - H_xy^T)) / 4,

    which is exactly Hermitian once H is assembled symmetrically.
    """
    u = _split_real(p)
    n = len(u) // 2
    n2 = 2 * n
    fv = _wrap(f)
    f0 = fv(u)
    h = np.empty((n2, n2), dtype=float)
    for a in range(n2):
        h[a, a] = _d2_diag(fv, u, f0, a, cfg.step, cfg.richardson)
        for b in range(a + 1, n2):
            v = _d2_cross(fv, u, a, b, cfg.step, cfg.richardson)
            h[a, b] = v
            h[b, a] = v
    xx = h[:n, :n]
    yy = h[n:, n:]
    xy = h[:n, n:]
    w = 0.25 * ((xx + yy) + 1j * (xy - xy.T))
    return HermitianMatrix(w)


def conjugate_jacobian(f, p, cfg: DiffConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Matrix (dF_a / dzbar_b) for a complex-vector-valued F at p."""
    u = _split_real(p)
    n = len(u) // 2
    fv = _wrap(f)
    m = len(np.atleast_1d(fv(u)))
    jac = np.empty((m, n), dtype=np.complex128)
    for b in range(n):
        dx = _d1(fv, u, b, cfg.step, cfg.richardson)
        dy = _d1(fv, u, n + b, cfg.step, cfg.richardson)
        jac[:, b] = 0.5 * (np.atleast_1d(dx) + 1j * np.atleast_1d(dy))
    return jac


def _first_order(f, p, var, conjugated, step, richardson):
    """One Wirtinger derivative of a complex-valued f, as a new function value."""
    sign = 1j if conjugated else -1j

    def stencil(h):
        def shifted(re, im):
            q = p.copy()
            q[var] += re + 1j * im
            return f(q)

        dx = (shifted(h, 0.0) - shifted(-h, 0.0)) / (2.0 * h)
        dy = (shifted(0.0, h) - shifted(0.0, -h)) / (2.0 * h)
        return 0.5 * (dx + sign * dy)

    if not richardson:
        return stencil(step)
    return (4.0 * stencil(step / 2.0) - stencil(step)) / 3.0


def mixed_partial(f, p, holo, anti, cfg: DiffConfig = DEFAULT_CONFIG) -> complex:
    """High-order mixed Wirtinger derivative d^holo d-bar^anti f at p.

    Implemented as iterated first-order stencils with geometrically
    decreasing steps per level; intended as a low-order oracle (total order
    at most ``2 * cfg.max_order``) for analytic series coefficients.
    """
    p = np.atleast_1d(np.asarray(p, dtype=np.complex128))
    holo = tuple(int(k) for k in holo)
    anti = tuple(int(k) for k in anti)
    if len(holo) != len(p) or len(anti) != len(p):
        raise ValueError("order tuples must match the number of variables")
    if any(k < 0 for k in holo + anti):
        raise ValueError("derivative orders must be nonnegative")
    total = sum(holo) + sum(anti)
    if total > 2 * cfg.max_order:
        raise CapabilityError(
            f"total derivative order {total} exceeds the finite-difference "
            f"budget {2 * cfg.max_order}; use analytic coefficients instead"
        )

    def rec(q, h_rem, a_rem, level):
        for var, k in enumerate(h_rem):
            if k:
                reduced = h_rem[:var] + (k - 1,) + h_rem[var + 1 :]
                step = _ITERATED_BASE_STEP * _ITERATED_SHRINK**level
                return _first_order(
                    lambda w: rec(w, reduced, a_rem, level + 1),
                    q,
                    var,
                    False,
                    step,
                    cfg.richardson,
                )
        for var, k in enumerate(a_rem):
            if k:
                reduced = a_rem[:var] + (k - 1,) + a_rem[var + 1 :]
                step = _ITERATED_BASE_STEP * _ITERATED_SHRINK**level
                return _first_order(
                    lambda w: rec(w, h_rem, reduced, level + 1),
                    q,
                    var,
                    True,
                    step,
                    cfg.richardson,
                )
        return f(q)

    return complex(rec(p, holo, anti, 0))
