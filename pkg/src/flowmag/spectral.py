"""Spectral radius, topological entropy, exact characteristic polynomials, Katz.

The topological entropy of a digraph is the log of the spectral radius of
its adjacency matrix, with ``log 0 = -inf`` for acyclic graphs.  The
spectral radius is found per strong component by power iteration on
``A + I`` and certified by Collatz-Wielandt bounds; acyclicity is decided
exactly with integer matrix powers so that ``-inf`` is never a rounding
artefact.
"""

import math

import numpy as np

from .exceptions import CertificationError, DivergenceError, SizeError
from .graph import reverse, strong_components

__all__ = [
    "spectral_radius",
    "spectral_bracket",
    "is_nilpotent",
    "topological_entropy",
    "char_poly",
    "zeta_denominator",
    "poly_mul",
    "poly_eval",
    "katz_centrality",
    "EXACT_CAP",
]

EXACT_CAP = 64
RADIUS_TOL = 1e-10


def is_nilpotent(D):
    """True iff ``A**n == 0``, decided in 0/1 integer arithmetic."""
    n = D.n
    if n == 0 or not D.edges:
        return True
    a = D.adjacency
    # square-and-multiply on the support pattern of A**k
    result = None
    base = a.copy()
    k = n
    while k:
        if k & 1:
            result = base if result is None else np.minimum(result @ base, 1)
        k >>= 1
        if k:
            base = np.minimum(base @ base, 1)
    return not result.any()


def _primitive_bracket(b, tol, max_iter):
    """Collatz-Wielandt bracket for the Perron root of ``b = A + I``.

    ``b`` has a positive diagonal, so a positive iterate stays positive and
    every ratio ``(b x)_i / x_i`` is defined.
    """
    n = b.shape[0]
    x = np.ones(n)
    lo, hi = 0.0, math.inf
    floor = 64 * np.finfo(float).eps
    for it in range(1, max_iter + 1):
        y = b @ x
        r = y / x
        lo = max(lo, float(r.min()))
        hi = min(hi, float(r.max()))
        if hi - lo <= max(tol, floor * hi):
            return lo, hi
        x = y / y.max()
        if it == 200:
            # converge the direction quickly via repeated squaring of b
            p = b / b.max()
            for _ in range(40):
                p = p @ p
                p /= p.max()
            z = p.sum(axis=1)
            if np.all(z > 0):
                x = z / z.max()
    raise CertificationError(
        f"power iteration did not converge in {max_iter} steps", lo - 1.0, hi - 1.0
    )


def spectral_bracket(D, tol=RADIUS_TOL, max_iter=20000):
    """Certified interval ``(lo, hi)`` containing the spectral radius."""
    if is_nilpotent(D):
        return 0.0, 0.0
    comp = strong_components(D)
    a = D.adjacency
    lo = hi = 0.0
    for c in np.unique(comp):
        members = np.flatnonzero(comp == c)
        sub = a[np.ix_(members, members)]
        if len(members) == 1:
            r = float(sub[0, 0])
            lo, hi = max(lo, r), max(hi, r)
            continue
        b = sub.astype(float) + np.eye(len(members))
        clo, chi = _primitive_bracket(b, tol, max_iter)
        lo, hi = max(lo, clo - 1.0), max(hi, chi - 1.0)
    return lo, hi


def spectral_radius(D, tol=RADIUS_TOL, max_iter=20000):
    """Spectral radius of the adjacency matrix of ``D``.

    Exact zero for acyclic digraphs; otherwise accurate to ``tol``.

    Raises
    ------
    CertificationError
        If the Collatz-Wielandt bracket is still wider than ``tol`` after
        ``max_iter`` iterations on some strong component.
    """
    lo, hi = spectral_bracket(D, tol, max_iter)
    rho = 0.5 * (lo + hi)
    if D.n:
        rows = D.adjacency.sum(axis=1)
        slack = 1e-9 * max(1.0, rho)
        assert rows.min() - slack <= rho <= rows.max() + slack, "row-sum bounds violated"
    return rho


def topological_entropy(D, **kwargs):
    """Entropy ``log(rho)`` in nats; ``-inf`` when the digraph is acyclic."""
    rho = spectral_radius(D, **kwargs)
    return math.log(rho) if rho > 0 else -math.inf


def _fl_bounds_fit_int64(a):
    """Whether every Faddeev-LeVerrier intermediate provably fits in int64."""
    n = a.shape[0]
    absa = np.abs(a).astype(float)
    m = np.zeros((n, n))
    c = 1.0
    limit = 2.0**60
    for k in range(1, n + 1):
        m = absa @ m + c * np.eye(n)
        prod = absa @ m
        c = np.trace(prod) / k
        if max(m.max(initial=0.0), prod.max(initial=0.0), np.trace(prod)) > limit:
            return False
    return True


def char_poly(D, cap=EXACT_CAP):
    """``det(x I - A)`` as exact integer coefficients, ascending degree.

    Faddeev-LeVerrier recurrence in integer arithmetic; every division is
    exact.  Runs in int64 when a magnitude bound allows it and in Python
    integers otherwise.
    """
    n = D.n
    if n > cap:
        raise SizeError(
            f"exact characteristic polynomial limited to n <= {cap} (got n={n}); "
            "use a numeric spectrum instead"
        )
    if n == 0:
        return [1]
    dtype = np.int64 if _fl_bounds_fit_int64(D.adjacency) else object
    a = D.adjacency.astype(dtype)
    eye = np.eye(n, dtype=np.int64).astype(dtype)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = np.zeros((n, n), dtype=np.int64).astype(dtype)
    for k in range(1, n + 1):
        m = a @ m + coeffs[n - k + 1] * eye
        tr = int(np.trace(a @ m))
        q, r = divmod(-tr, k)
        assert r == 0, "Faddeev-LeVerrier division must be exact"
        coeffs[n - k] = q
    return [int(c) for c in coeffs]


def zeta_denominator(D, cap=EXACT_CAP):
    """Coefficients of ``det(I - tA)``, the reciprocal of the zeta function.

    Equals ``t**n * p(1/t)`` for the characteristic polynomial ``p``, so the
    coefficients are those of ``p`` reversed; high-degree zeros are trimmed.
    """
    coeffs = char_poly(D, cap)[::-1]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def poly_eval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def katz_centrality(D, alpha, direction="in"):
    """Katz centrality ``sum_{l>=1} alpha**l * (walks of length l into v)``.

    ``direction="out"`` counts walks leaving each vertex, i.e. the in-Katz
    centrality of the reversed digraph.

    Raises
    ------
    DivergenceError
        If ``alpha >= 1/rho``.
    """
    if direction == "out":
        return katz_centrality(reverse(D), alpha, "in")
    if direction != "in":
        raise ValueError(f"direction must be 'in' or 'out', not {direction!r}")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    rho = spectral_radius(D)
    if rho > 0 and alpha * rho >= 1.0:
        raise DivergenceError(alpha, rho)
    at = D.adjacency.T.astype(float)
    m = np.eye(D.n) - alpha * at
    rhs = alpha * at.sum(axis=1)
    x = np.linalg.solve(m, rhs)
    # one step of iterative refinement
    x += np.linalg.solve(m, rhs - m @ x)
    return x
