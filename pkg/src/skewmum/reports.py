"""JSON, CSV and aligned-text rendering of reports.

Complex matrices are written row-major as nested lists of ``[re, im]`` pairs.
"""
from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from . import __version__
from .mum import MumSet

CONVENTIONS = {
    "site_order": "site 0 is the most significant digit of the basis index",
    "mum_grid": "F_{n,b} = basis[(b-1)(d-1) + n - 1], Gell-Mann basis order",
    "summation": "sum over b = 1..d+1 then n = 1..d, lexicographic",
    "skew_information": "I^s = sum_{l != l'} [lam_l - f_s(lam_l, lam_l')] |<l|A|l'>|^2",
    "qfi_convention": "s = -1 gives sum (lam-lam')^2 / (2 (lam+lam')) |A_ll'|^2 (1/4 of the 4x convention)",
    "zero_cutoff": 1e-12,
    "verdict_tolerance": 1e-9,
}


def matrix_to_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def matrix_from_json(rows) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def mum_to_dict(mum: MumSet) -> dict:
    return {
        "d": mum.d,
        "t": mum.t,
        "kappa": mum.kappa,
        "effects": [[matrix_to_json(mum.effects[b, n]) for n in range(mum.d)] for b in range(mum.d + 1)],
    }


def mum_effects_from_dict(doc: dict) -> np.ndarray:
    return np.array([[matrix_from_json(m) for m in row] for row in doc["effects"]])


def _clean(x):
    """Make values JSON-safe: infinities become strings, numpy scalars plain."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, (np.floating, float)):
        x = float(x)
        if math.isinf(x):
            return "-inf" if x < 0 else "inf"
        return x
    if isinstance(x, np.integer):
        return int(x)
    return x


def envelope(kind: str, payload: dict, *, d=None, N=None, t=None, kappa=None, s=None) -> dict:
    return _clean({
        "tool": "skewmum",
        "version": __version__,
        "report": kind,
        "parameters": {"d": d, "N": N, "t": t, "kappa": kappa, "s": s},
        "conventions": CONVENTIONS,
        "result": payload,
    })


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def fmt(x, digits: int = 10) -> str:
    if x is None:
        return "-"
    if isinstance(x, float):
        return f"{x:.{digits}g}"
    return str(x)


def text_table(header: list[str], rows: list[list]) -> str:
    cells = [[str(h) for h in header]] + [[fmt(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def transposed_table(label_col: list[str], columns: list[list]) -> str:
    """Published layout: one row per quantity, one column per k."""
    rows = [[label] + list(vals) for label, vals in zip(label_col, columns)]
    strs = [[fmt(c, 6) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in strs) for i in range(len(strs[0]))]
    out = []
    for i, r in enumerate(strs):
        out.append(r[0].ljust(widths[0]) + " | " + "  ".join(c.rjust(w) for c, w in zip(r[1:], widths[1:])))
        if i == 0:
            out.append("-" * len(out[0]))
    return "\n".join(out) + "\n"


def tables_csv(comparisons) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["table", "k", "computed", "paper", "delta"])
    for comp in comparisons:
        for r in comp.rows:
            w.writerow([comp.table_id, r.k, "" if r.computed is None else repr(r.computed),
                        repr(r.paper), "" if r.delta is None else repr(r.delta)])
    return buf.getvalue()


def table_text(comp) -> str:
    title = f"Table {comp.table_id}: {comp.caption} (kappa={fmt(comp.kappa)})\n"
    ks = [r.k for r in comp.rows]
    computed = [r.computed if r.computed is not None else "n/d" for r in comp.rows]
    if comp.table_id == "IX":
        return title + transposed_table(["k", "I_k", "paper", "delta"],
                                        [ks, computed, [r.paper for r in comp.rows], [r.delta for r in comp.rows]])
    return title + transposed_table(
        ["k", "computed", "paper", "delta", "reference"],
        [ks, computed, [r.paper for r in comp.rows], [r.delta for r in comp.rows],
         [r.reference for r in comp.rows]],
    )
