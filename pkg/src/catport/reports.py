"""Machine-readable result records: flat CSV rows and JSON documents.

CSV discipline: '.' decimal point, no locale, LF line endings, mandatory
header, floats rendered with shortest round-trip repr -- two runs with
the same seed produce byte-identical files.  Every randomized output
carries its seed in-band.
"""

from __future__ import annotations

import hashlib

import numpy as np

from .bell import LABELS, BellLabel, DisplacementQuantum, eigen_residual
from .protocol import (ProtocolRun, TargetState, run_teleport_homodyne,
                       run_teleport_ideal)

__all__ = [
    "RESULT_COLUMNS",
    "run_to_rows",
    "run_to_json_doc",
    "rows_to_csv",
    "loglog_slope",
    "derive_seed",
    "sweep_eigen_rows",
    "sweep_fidelity_rows",
    "EIGEN_SWEEP_COLUMNS",
    "FIDELITY_SWEEP_COLUMNS",
]

RESULT_COLUMNS = ("alpha", "beta", "gamma", "c_a_re", "c_a_im", "c_b_re",
                  "c_b_im", "path", "branch", "probability", "fidelity",
                  "avg_fidelity", "inconclusive_rate", "seed")

EIGEN_SWEEP_COLUMNS = ("alpha", "beta", "operator", "label", "n", "m",
                       "residual", "slope", "seed")

FIDELITY_SWEEP_COLUMNS = ("alpha", "beta", "gamma", "c_a_re", "c_a_im",
                          "c_b_re", "c_b_im", "path", "avg_fidelity",
                          "one_minus_avg_fidelity", "slope", "seed")


def _fmt(value) -> str:
    """Deterministic cell rendering; floats use shortest round-trip repr."""
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (np.floating,)):
        return repr(float(value))
    return str(value)


def rows_to_csv(rows, columns) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(row.get(c)) for c in columns))
    return "\n".join(lines) + "\n"


def run_to_rows(run: ProtocolRun) -> list[dict]:
    """Per-branch rows plus one aggregate row for a protocol run."""
    base = {
        "alpha": run.alpha, "beta": run.beta, "gamma": run.gamma,
        "c_a_re": run.c_a.real, "c_a_im": run.c_a.imag,
        "c_b_re": run.c_b.real, "c_b_im": run.c_b.imag,
        "path": run.path, "seed": run.seed,
    }
    rows = []
    for br in run.branches:
        rows.append(dict(base, branch=br.outcome.label,
                         probability=br.outcome.probability,
                         fidelity=br.branch_fidelity,
                         avg_fidelity=run.average_fidelity,
                         inconclusive_rate=run.inconclusive_rate))
    rows.append(dict(base, branch="aggregate",
                     probability=float(sum(b.outcome.probability
                                           for b in run.branches)),
                     fidelity=run.average_fidelity,
                     avg_fidelity=run.average_fidelity,
                     inconclusive_rate=run.inconclusive_rate))
    return rows


def run_to_json_doc(run: ProtocolRun) -> dict:
    """Richer JSON record, including states, bits, counts and diagnostics."""
    doc = {
        "path": run.path,
        "alpha": run.alpha, "beta": run.beta, "gamma": run.gamma,
        "c_a": [run.c_a.real, run.c_a.imag],
        "c_b": [run.c_b.real, run.c_b.imag],
        "mode": run.mode,
        "seed": run.seed,
        "trials": run.trials,
        "counts": list(run.counts) if run.counts is not None else None,
        "inconclusive_rate": run.inconclusive_rate,
        "average_fidelity": run.average_fidelity,
        "branches": [],
    }
    if run.misclassification is not None:
        doc["misclassification"] = run.misclassification
    if run.collapse is not None:
        doc["collapse"] = run.collapse
    if run.freqs is not None:
        doc["freqs"] = [list(r) for r in run.freqs]
    for br in run.branches:
        doc["branches"].append({
            "branch": br.outcome.label,
            "eigen_bits": list(br.outcome.eigen_bits)
            if br.outcome.eigen_bits is not None else None,
            "probability": br.outcome.probability,
            "correction": br.correction.value,
            "fidelity": br.branch_fidelity,
            "collapsed_bob": br.outcome.collapsed_bob.to_dict(),
            "bob_after": br.bob_after.to_dict(),
        })
    return doc


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log(y) against log(x)."""
    xs = np.log(np.asarray(xs, dtype=float))
    ys = np.log(np.asarray(ys, dtype=float))
    return float(np.polyfit(xs, ys, 1)[0])


def derive_seed(seed: int, index: int) -> int:
    """Stable per-grid-point seed; identical for serial and parallel runs."""
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def sweep_eigen_rows(amplitudes, operator: str = "PbDa",
                     label=None, n: int = 0, m: int = 0,
                     seed=None) -> list[dict]:
    """Eigen-residual of one combined operator over an amplitude grid.

    alpha = beta at each grid point; a fitted log-log slope column is
    attached to every row (expected near -2).
    """
    label = BellLabel(label) if label is not None else LABELS[0]
    q = DisplacementQuantum(n, m)
    residuals = [eigen_residual(label, operator, q, a, a) for a in amplitudes]
    slope = loglog_slope(amplitudes, residuals) if len(amplitudes) > 1 else None
    return [
        {"alpha": float(a), "beta": float(a), "operator": operator,
         "label": label.value, "n": n, "m": m, "residual": r,
         "slope": slope, "seed": seed}
        for a, r in zip(amplitudes, residuals)
    ]


def sweep_fidelity_rows(betas, c_a=1.0, c_b=0.0, path: str = "ideal",
                        seed=None) -> list[dict]:
    """Average teleportation fidelity over beta, with alpha = gamma = beta.

    The scaling probe keeps the payload on a single coherent component by
    default, where the displacement-correction error dominates and
    1 - F falls off like beta^-2.
    """
    rows = []
    fids = []
    for i, b in enumerate(betas):
        b = float(b)
        target = TargetState(c_a, c_b, b)
        if path == "ideal":
            run = run_teleport_ideal(target, b, b)
        else:
            run = run_teleport_homodyne(target, b, b)
        fids.append(run.average_fidelity)
        rows.append({
            "alpha": b, "beta": b, "gamma": b,
            "c_a_re": run.c_a.real, "c_a_im": run.c_a.imag,
            "c_b_re": run.c_b.real, "c_b_im": run.c_b.imag,
            "path": path, "avg_fidelity": run.average_fidelity,
            "one_minus_avg_fidelity": 1.0 - run.average_fidelity,
            "seed": derive_seed(seed, i) if seed is not None else None,
        })
    deficits = [max(1.0 - f, 0.0) for f in fids]
    slope = (loglog_slope(betas, deficits)
             if len(betas) > 1 and all(d > 0 for d in deficits) else None)
    for row in rows:
        row["slope"] = slope
    return rows
