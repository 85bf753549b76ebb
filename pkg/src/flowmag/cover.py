"""Balls in the universal cover of a digraph and their magnitudes.

The ball of radius ``L`` about ``v0`` in the universal cover is the
arborescence whose nodes are the walks ``(v0, v1, ..., vl)`` with
``l <= L``, each walk's parent being the walk with its last step removed.
Because it is a polytree, its magnitude function is
``|V| - (|V| - 1) exp(-t)`` and all the work is in counting walks.
"""

import math
from dataclasses import dataclass

from .exceptions import PreconditionError, ShapeError
from .graph import Digraph, classify, reverse
from .spectral import is_nilpotent

__all__ = [
    "CoverBall",
    "build_ball",
    "ball_sizes",
    "ball_size_power_formula",
    "is_polyforest",
    "polyforest_magnitude",
    "magnitude_from_count",
    "log_magnitude_from_count",
    "ball_magnitude",
    "log_ball_magnitude",
    "volume_entropy_sequence",
]


@dataclass(frozen=True)
class CoverBall:
    root: int
    depth: int
    direction: str
    nodes: tuple
    parents: tuple
    counts: tuple

    @property
    def cumulative_counts(self):
        out, acc = [], 0
        for c in self.counts:
            acc += c
            out.append(acc)
        return tuple(out)

    def __len__(self):
        return len(self.nodes)

    def as_digraph(self):
        """The ball as a :class:`Digraph` with edges parent -> child."""
        labels = ["-".join(map(str, p)) for p in self.nodes]
        return Digraph(
            len(self.nodes),
            {(p, c) for c, p in enumerate(self.parents) if p >= 0},
            labels=labels,
        )


def _oriented(D, direction):
    if direction == "forward":
        return D
    if direction == "reverse":
        return reverse(D)
    raise ValueError(f"direction must be 'forward' or 'reverse', not {direction!r}")


def _require_loopless(D):
    if D.has_loops:
        loops = sorted(D.labels[u] for u, v in D.edges if u == v)
        raise PreconditionError(f"digraph has loops at {loops}; strip them first")


def build_ball(D, v0, L, direction="forward"):
    """Breadth-first unfolding of every walk of length ``<= L`` from ``v0``.

    Distinct walks ending at the same vertex are distinct nodes.  The
    ``"reverse"`` direction unfolds the reversed digraph.
    """
    _require_loopless(D)
    if L < 0:
        raise PreconditionError("radius must be nonnegative")
    G = _oriented(D, direction)
    succ = G.successors
    nodes = [(v0,)]
    parents = [-1]
    counts = [1]
    frontier = [0]
    for _ in range(L):
        nxt = []
        for i in frontier:
            walk = nodes[i]
            for v in succ[walk[-1]]:
                nxt.append(len(nodes))
                nodes.append(walk + (v,))
                parents.append(i)
        counts.append(len(nxt))
        frontier = nxt
    return CoverBall(v0, L, direction, tuple(nodes), tuple(parents), tuple(counts))


def ball_sizes(D, v0, Lmax, direction="forward"):
    """Exact ball sizes ``|V(B(L))|`` for ``L = 0..Lmax``.

    Cumulative sums of the ``v0`` row sums of ``A**l``, accumulated with
    integer vector-matrix products.
    """
    _require_loopless(D)
    if Lmax < 0:
        raise PreconditionError("radius must be nonnegative")
    G = _oriented(D, direction)
    pred = G.predecessors
    row = [0] * G.n
    row[v0] = 1
    total = 1
    sizes = [1]
    for _ in range(Lmax):
        row = [sum(row[u] for u in pred[v]) for v in range(G.n)]
        total += sum(row)
        sizes.append(total)
    return sizes


def ball_size_power_formula(D, v0, L, direction="forward"):
    return ball_sizes(D, v0, L, direction)[-1]


def is_polyforest(F):
    """Acyclic with a forest as underlying undirected graph."""
    if not is_nilpotent(F):
        return False
    return len(F.edges) == F.n - classify(F).weak_component_count


def polyforest_magnitude(F, t):
    """``|V| - |E| exp(-t)``.

    Raises
    ------
    ShapeError
        If ``F`` is not a polyforest.
    """
    if not is_polyforest(F):
        raise ShapeError("not a polyforest (needs acyclic with forest underlying graph)")
    return F.n - len(F.edges) * math.exp(-t)


def magnitude_from_count(n_vertices, t):
    return n_vertices - (n_vertices - 1) * math.exp(-t)


def log_magnitude_from_count(n_vertices, t):
    """``log(nV - (nV - 1) exp(-t))`` without overflow for huge integer nV."""
    a = n_vertices - 1
    c = -math.expm1(-t)
    if a == 0 or c == 0.0:
        return 0.0
    if a < 2**50:
        return math.log1p(a * c)
    log_ac = math.log(a) + math.log(c)
    return log_ac + math.log1p(math.exp(-log_ac))


def ball_magnitude(D, v0, L, t, direction="forward"):
    return magnitude_from_count(ball_size_power_formula(D, v0, L, direction), t)


def log_ball_magnitude(D, v0, L, t, direction="forward"):
    return log_magnitude_from_count(ball_size_power_formula(D, v0, L, direction), t)


def volume_entropy_sequence(D, v0, t, Lmax, direction="forward"):
    """``[log Mag(B(L), t) / L for L in 1..Lmax]`` for a strong loopless digraph."""
    _require_loopless(D)
    if not classify(D).is_strong:
        raise PreconditionError("volume entropy needs a strong digraph")
    if Lmax < 1:
        raise PreconditionError("Lmax must be at least 1")
    sizes = ball_sizes(D, v0, Lmax, direction)
    return [log_magnitude_from_count(sizes[L], t) / L for L in range(1, Lmax + 1)]
