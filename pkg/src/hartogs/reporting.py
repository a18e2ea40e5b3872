"""JSON / CSV report assembly for the command-line front end.

All JSON is emitted with sorted keys and a versioned top-level ``schema``
field, so reruns with the same seed are byte identical.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .curvature import curvature_report
from .domains import EvaluationPoint, HartogsSpec

SCHEMA_VERSION = "1"


def to_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_text(text: str, out_path=None) -> None:
    if out_path is None:
        print(text, end="")
    else:
        Path(out_path).write_text(text, encoding="utf-8")


def with_schema(payload: dict) -> dict:
    payload = dict(payload)
    payload["schema"] = SCHEMA_VERSION
    return payload


def point_columns(spec: HartogsSpec, p: EvaluationPoint) -> dict:
    cols = {}
    for k, z in enumerate(p.fiber):
        cols[f"z0_{k}_re"] = float(z.real)
        cols[f"z0_{k}_im"] = float(z.imag)
    for k, z in enumerate(p.base):
        cols[f"z_{k}_re"] = float(z.real)
        cols[f"z_{k}_im"] = float(z.imag)
    return cols


def curvature_rows(spec: HartogsSpec, points, include_extremal=True) -> list[dict]:
    """One row per sample point: coordinates plus closed/direct invariants."""
    rows = []
    for p in points:
        rep = curvature_report(spec, p, include_extremal=include_extremal)
        row = point_columns(spec, p)
        row.update(
            det_closed=rep.det_closed,
            det_direct=rep.det_direct,
            s_trace=rep.scalar_trace,
            s_closed=rep.scalar_closed,
            einstein_residual=rep.einstein_residual,
            extremal_residual=rep.extremal_residual,
        )
        rows.append(row)
    return rows


def render_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def spec_summary(spec: HartogsSpec) -> dict:
    base = spec.base
    return {
        "kind": base.kind.value,
        "dims": list(base.dims),
        "mu": list(base.exponents),
        "shape": list(base.shape) if base.shape else None,
        "fiber_dim": spec.fiber_dim,
        "scale_h": spec.scale,
        "genus": [g if g is None else float(g) for g in base.genus],
        "einstein_constants": [float(c) for c in base.einstein_constants],
    }


def resolvability_payload(verdict) -> dict:
    failure = None
    if verdict.first_failure is not None:
        failure = {
            "i": verdict.first_failure.total_degree,
            "sigma": verdict.first_failure.fiber_degree,
            "min_eig": verdict.first_failure.min_eigenvalue,
        }
    return {
        "form": verdict.form.value,
        "h": verdict.h,
        "truncation": verdict.truncation_degree,
        "all_psd": verdict.all_psd,
        "rank_lower_bound": verdict.rank_lower_bound,
        "first_failure": failure,
    }


def block_csv(block) -> str:
    """CSV dump of one coefficient block: row/column indices and the entry."""
    rows = []
    matrix = block.matrix.array
    labels = [
        (nu, alpha) for nu in block.fiber_indices for alpha in block.base_indices
    ]
    for r, (nu_r, a_r) in enumerate(labels):
        for c, (nu_c, a_c) in enumerate(labels):
            value = matrix[r, c]
            if value == 0 and r != c:
                continue
            rows.append(
                {
                    "row_fiber": "|".join(map(str, nu_r)),
                    "row_base": "|".join(map(str, a_r)),
                    "col_fiber": "|".join(map(str, nu_c)),
                    "col_base": "|".join(map(str, a_c)),
                    "value": float(np.real(value)),
                }
            )
    return render_csv(rows)
