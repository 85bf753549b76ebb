"""Magnitude of a digraph viewed as a Lawvere metric space.

The similarity matrix at scale ``t`` is ``Z = exp(-t d)`` for the hop-count
distance ``d`` (unreachable pairs give 0).  A weighting solves ``Z w = 1``,
a coweighting solves ``Z^T v = 1``, and the magnitude is the sum of either.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .graph import shortest_path_matrix

__all__ = [
    "similarity_matrix",
    "WeightingResult",
    "weighting",
    "coweighting",
    "MagnitudeValue",
    "magnitude_function",
    "magnitude",
    "SINGULAR_PIVOT_RATIO",
]

SINGULAR_PIVOT_RATIO = 1e-12


def similarity_matrix(d, t):
    """``exp(-t * d)`` entrywise with ``exp(-t * inf) = 0``.

    ``t = inf`` gives the identity pattern ``d == 0``.
    """
    if t < 0:
        raise ValueError("scale must be nonnegative")
    d = np.asarray(d, dtype=float)
    if math.isinf(t):
        return (d == 0).astype(float)
    with np.errstate(invalid="ignore"):
        z = np.exp(-t * d)
    z[np.isinf(d)] = 0.0
    return z


@dataclass(frozen=True, eq=False)
class WeightingResult:
    w: np.ndarray
    residual: float
    method: str  # "exact-solve" or "least-squares"

    @property
    def magnitude(self):
        return float(self.w.sum())


def _solve_ones(m):
    n = m.shape[0]
    ones = np.ones(n)
    if n == 0:
        return WeightingResult(np.zeros(0), 0.0, "exact-solve")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", linalg.LinAlgWarning)
        lu, piv = linalg.lu_factor(m, check_finite=False)
    pivots = np.abs(np.diag(lu))
    if pivots.min() > SINGULAR_PIVOT_RATIO * pivots.max():
        w = linalg.lu_solve((lu, piv), ones, check_finite=False)
        method = "exact-solve"
    else:
        w = np.linalg.lstsq(m, ones, rcond=None)[0]
        method = "least-squares"
    residual = float(np.abs(m @ w - ones).max())
    return WeightingResult(w, residual, method)


def weighting(Z, side="row"):
    """Solve ``Z w = 1`` (``side="row"``) or ``Z^T v = 1`` (``side="column"``).

    LU with partial pivoting; when the smallest pivot is below
    ``SINGULAR_PIVOT_RATIO`` times the largest, the minimum-norm least
    squares solution is returned instead and ``method`` says so.  Negative
    weights are returned as they are.
    """
    Z = np.asarray(Z, dtype=float)
    if side == "row":
        return _solve_ones(Z)
    if side == "column":
        return _solve_ones(Z.T)
    raise ValueError(f"side must be 'row' or 'column', not {side!r}")


def coweighting(Z):
    return weighting(Z, side="column")


@dataclass(frozen=True)
class MagnitudeValue:
    t: float
    magnitude: float
    method: str
    residual: float
    comagnitude: float

    @property
    def consistent(self):
        """Weighting and coweighting sums agree (checked only for exact solves)."""
        if self.method != "exact-solve":
            return True
        return abs(self.magnitude - self.comagnitude) <= 1e-8 * max(1.0, abs(self.magnitude))


def magnitude_function(D, ts, weights=False):
    """Magnitude of ``exp(-t d)`` for each scale in ``ts``.

    Returns a list of :class:`MagnitudeValue`; with ``weights=True`` each
    item is a ``(MagnitudeValue, weighting, coweighting)`` triple instead.
    """
    d = shortest_path_matrix(D)
    out = []
    for t in ts:
        if t < 0:
            raise ValueError("scales must be nonnegative")
        Z = similarity_matrix(d, t)
        w = weighting(Z, "row")
        v = weighting(Z, "column")
        method = "exact-solve" if w.method == v.method == "exact-solve" else "least-squares"
        value = MagnitudeValue(float(t), w.magnitude, method,
                               max(w.residual, v.residual), v.magnitude)
        out.append((value, w, v) if weights else value)
    return out


def magnitude(D, t):
    return magnitude_function(D, [t])[0].magnitude
