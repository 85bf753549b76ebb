"""Deterministic JSON and CSV rendering of results.

JSON keys are sorted, floats are rounded to 12 significant digits and
infinities become the strings ``"inf"`` / ``"-inf"``.  In CSV an infinite
value is an empty cell and a trailing ``note`` column says what it was.
"""

import csv
import io
import json
import math
from dataclasses import asdict, is_dataclass

import numpy as np

__all__ = ["to_jsonable", "render_json", "render_csv"]


def _float(x):
    x = float(x)
    if math.isnan(x):
        return None
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(f"{x:.12g}")


def to_jsonable(obj):
    if is_dataclass(obj) and not isinstance(obj, type):
        obj = asdict(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _float(obj)
    return obj


def render_json(obj):
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"


def _cell(x):
    if x is None:
        return "", None
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower(), None
    if isinstance(x, (int, np.integer)):
        return str(int(x)), None
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isinf(x):
            return "", "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "", "undefined"
        return f"{x:.12g}", None
    return str(x), None


def render_csv(header, rows):
    """CSV text with ``header`` first; a ``note`` column is added only when
    some cell had to be blanked."""
    body, notes = [], []
    for row in rows:
        cells, note = [], []
        for name, x in zip(header, row):
            text, why = _cell(x)
            cells.append(text)
            if why:
                note.append(f"{name}={why}")
        body.append(cells)
        notes.append(";".join(note))
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    with_note = any(notes)
    w.writerow(list(header) + (["note"] if with_note else []))
    for cells, note in zip(body, notes):
        w.writerow(cells + ([note] if with_note else []))
    return out.getvalue()
