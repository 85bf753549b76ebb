"""Flow graphs, their series/parallel composition, and max-plus magnitude.

A flow graph has one source and one target, a unique entry edge leaving
the source and a unique exit edge entering the target, and becomes
strongly connected once source and target are identified.  The edges of a
flow graph ``F`` index a square matrix over ``[-inf, inf)`` whose
``(s, t)`` entry is the topological entropy of the single-entry/single-exit
region of ``F`` running from edge ``s`` to edge ``t`` (``-inf`` when there
is no such region).  Its max-plus magnitude and principal (co)weightings
are computed here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exceptions import FlowGraphError, PreconditionError
from .graph import Digraph, classify, reachability_matrix
from .spectral import topological_entropy

__all__ = [
    "FlowGraph",
    "TropicalMatrix",
    "TropicalMagnitude",
    "validate_flow",
    "series_compose",
    "parallel_compose",
    "canonical_form",
    "subflow_hom",
    "tropical_similarity_matrix",
    "principal_solutions",
    "tropical_magnitude",
    "maxplus_product",
    "MAGNITUDE_TOL",
]

MAGNITUDE_TOL = 1e-9


@dataclass(frozen=True)
class FlowGraph:
    graph: Digraph
    source: int
    target: int
    entry: tuple
    exit: tuple

    @property
    def edges(self):
        return self.graph.sorted_edges

    @property
    def n(self):
        return self.graph.n

    def label_edge(self, e):
        return (self.graph.labels[e[0]], self.graph.labels[e[1]])


def validate_flow(D):
    """Check the flow-graph axioms and locate source, target, entry and exit.

    Raises
    ------
    FlowGraphError
        With ``clause`` naming the first violated condition.
    """
    if D.has_loops:
        loops = sorted(u for u, v in D.edges if u == v)
        raise FlowGraphError("loops", f"loops at vertices {[D.labels[v] for v in loops]}")
    indeg = D.in_degree()
    outdeg = D.out_degree()
    sources = np.flatnonzero(indeg == 0)
    targets = np.flatnonzero(outdeg == 0)
    if len(sources) == 0 or len(targets) == 0:
        raise FlowGraphError("no-source-target", "no source/target")
    if len(sources) > 1:
        raise FlowGraphError("multi-source", f"{len(sources)} sources")
    if len(targets) > 1:
        raise FlowGraphError("multi-target", f"{len(targets)} targets")
    s, t = int(sources[0]), int(targets[0])
    if outdeg[s] != 1:
        raise FlowGraphError("entry-not-unique", f"source has {outdeg[s]} out-edges; entry edge not unique")
    if indeg[t] != 1:
        raise FlowGraphError("exit-not-unique", f"target has {indeg[t]} in-edges; exit edge not unique")
    entry = (s, D.successors[s][0])
    exit_ = (D.predecessors[t][0], t)
    # identify target with source
    relabel = [v if v < t else v - 1 for v in range(D.n)]
    relabel[t] = relabel[s]
    closure = Digraph(D.n - 1, {(relabel[u], relabel[v]) for u, v in D.edges})
    if not classify(closure).is_strong:
        raise FlowGraphError("not-strong", "identifying source and target does not give a strong digraph")
    return FlowGraph(D, s, t, entry, exit_)


def _prefixed(F, k):
    return [f"{k}:{s}" for s in F.graph.labels]


def _glue(acc, acc_labels, nxt, nxt_labels):
    """Series-glue two flow graphs; ``acc`` keeps its vertex ids."""
    x, t1 = acc.exit
    s2, y = nxt.entry
    vmap = {s2: x, y: t1}
    labels = list(acc_labels)
    for v in range(nxt.n):
        if v not in vmap:
            vmap[v] = len(labels)
            labels.append(nxt_labels[v])
    edges = set(acc.graph.edges)
    edges.update((vmap[u], vmap[v]) for u, v in nxt.graph.edges)
    D = Digraph(len(labels), edges, labels=labels)
    try:
        F = validate_flow(D)
    except FlowGraphError as exc:  # pragma: no cover - unreachable for valid inputs
        raise FlowGraphError(exc.clause, f"series composition broke an invariant: {exc}") from exc
    return F, labels, vmap


def _series(fs):
    """Left fold of series gluing; also returns each factor's vertex map."""
    acc = fs[0]
    labels = _prefixed(acc, 0)
    maps = [{v: v for v in range(acc.n)}]
    for k, nxt in enumerate(fs[1:], 1):
        acc, labels, vmap = _glue(acc, labels, nxt, _prefixed(nxt, k))
        maps.append(vmap)
    return acc, maps


def series_compose(fs):
    """Series product: the exit edge of each factor is glued to the entry
    edge of the next (tail to tail, head to head).

    The first factor keeps its vertex ids; vertices of later factors are
    appended in order.  Labels become ``"<factor index>:<label>"``.
    """
    fs = list(fs)
    if not fs:
        raise PreconditionError("series_compose needs at least one flow graph")
    if len(fs) == 1:
        return fs[0]
    return _series(fs)[0]


def _parallel(fs):
    n_inner = [F.n - 2 for F in fs]
    start, fork = 0, 1
    join = 2 + sum(n_inner)
    halt = join + 1
    labels = ["start", "fork"]
    maps = []
    for k, F in enumerate(fs):
        vmap = {F.source: fork, F.target: join}
        for v in range(F.n):
            if v not in vmap:
                vmap[v] = len(labels)
                labels.append(f"{k}:{F.graph.labels[v]}")
        maps.append(vmap)
    labels += ["join", "halt"]
    edges = {(start, fork), (join, halt)}
    for F, vmap in zip(fs, maps):
        for u, v in F.graph.edges:
            e = (vmap[u], vmap[v])
            if e in edges:
                raise FlowGraphError(
                    "parallel-edge", "parallel branches would share an edge (multigraph)"
                )
            edges.add(e)
    return validate_flow(Digraph(len(labels), edges, labels=labels)), maps


def parallel_compose(fs):
    """Parallel composition: sources merged into a fork vertex, targets into
    a join vertex, then fresh entry and exit edges attached so that the
    result is again a flow graph.

    Raises
    ------
    FlowGraphError
        ``clause="parallel-edge"`` if two branches are single edges (the
        merge would need a multi-edge).
    """
    fs = list(fs)
    if not fs:
        raise PreconditionError("parallel_compose needs at least one flow graph")
    return _parallel(fs)[0]


def canonical_form(F):
    """Edge set after re-indexing vertices in breadth-first order from the
    source (successors visited in increasing id order)."""
    order = {F.source: 0}
    frontier = [F.source]
    while frontier:
        nxt = []
        for u in frontier:
            for v in F.graph.successors[u]:
                if v not in order:
                    order[v] = len(order)
                    nxt.append(v)
        frontier = nxt
    return F.n, frozenset((order[u], order[v]) for u, v in F.graph.edges)


def _single_edge(F, e):
    u, v = e
    D = Digraph(2, {(0, 1)}, labels=(F.graph.labels[u], F.graph.labels[v]))
    return FlowGraph(D, 0, 1, (0, 1), (0, 1))


def subflow_hom(F, e_s, e_t, reach=None):
    """Sub-flow graph of ``F`` with entry edge ``e_s`` and exit edge ``e_t``.

    The interior is every vertex lying on a walk from the head of ``e_s``
    to the tail of ``e_t``.  The region is returned only if ``e_s`` and
    ``e_t`` are the only edges of ``F`` crossing its boundary and the
    interior plus both boundary edges is itself a flow graph; otherwise
    ``None`` (the empty hom-object).

    ``reach`` may pass a precomputed :func:`reachability_matrix` of ``F``.
    """
    e_s, e_t = tuple(e_s), tuple(e_t)
    edges = F.graph.edges
    for e in (e_s, e_t):
        if e not in edges:
            raise PreconditionError(f"{e} is not an edge of the flow graph")
    if e_s == e_t:
        return _single_edge(F, e_s)
    if reach is None:
        reach = reachability_matrix(F.graph)
    p, a = e_s
    b, q = e_t
    inside = reach[a] & reach[:, b]
    if not inside.any() or inside[p] or inside[q] or p == q:
        return None
    E = np.array(F.edges)
    crossing = inside[E[:, 0]] != inside[E[:, 1]]
    if np.count_nonzero(crossing) != 2:
        return None
    keep = np.flatnonzero(inside).tolist() + [p, q]
    new = {v: i for i, v in enumerate(keep)}
    sub = {(new[u], new[v]) for u, v in F.edges if inside[u] and inside[v]}
    sub.add((new[p], new[a]))
    sub.add((new[b], new[q]))
    D = Digraph(len(keep), sub, labels=[F.graph.labels[v] for v in keep])
    try:
        return validate_flow(D)
    except FlowGraphError:
        return None


@dataclass(frozen=True, eq=False)
class TropicalMatrix:
    """Square matrix over ``[-inf, inf)`` indexed by the edges of a flow graph."""

    edges: tuple
    values: np.ndarray

    def __getitem__(self, key):
        s, t = key
        return self.values[self.edges.index(tuple(s)), self.edges.index(tuple(t))]

    @property
    def shape(self):
        return self.values.shape


def tropical_similarity_matrix(F, acyclic_entropy=-math.inf):
    """Entropy of every sub-flow graph ``F<e_s, e_t>``; ``-inf`` when empty.

    Rows and columns follow ``F.edges`` (sorted vertex pairs).
    ``acyclic_entropy`` is the value assigned to nonempty hom-objects with
    no cycles, the single-edge identities included; the default ``-inf`` is
    ``log 0``.  Passing ``0.0`` gives the unit-preserving convention.
    """
    edges = F.edges
    m = len(edges)
    reach = reachability_matrix(F.graph)
    z = np.full((m, m), -math.inf)
    for i, e_s in enumerate(edges):
        for j, e_t in enumerate(edges):
            if i == j:
                z[i, j] = acyclic_entropy
                continue
            # cheap rejections before building the region
            if not reach[e_s[1], e_t[0]]:
                continue
            hom = subflow_hom(F, e_s, e_t, reach)
            if hom is None:
                continue
            h = topological_entropy(hom.graph)
            z[i, j] = acyclic_entropy if h == -math.inf else h
    z.setflags(write=False)
    return TropicalMatrix(tuple(edges), z)


def _values(Z):
    return Z.values if isinstance(Z, TropicalMatrix) else np.asarray(Z, dtype=float)


def principal_solutions(Z):
    """Principal coweighting and weighting ``(v_hat, w_hat)``.

    ``v_hat[s] = -max_t Z[s, t]`` and ``w_hat[t] = -max_s Z[s, t]``, with
    ``-(-inf) = +inf``.  These are the greatest subsolutions of the max-plus
    (co)weighting equations and need not solve them exactly.
    """
    z = _values(Z)
    # + 0.0 turns -0.0 into 0.0
    return -z.max(axis=1) + 0.0, -z.max(axis=0) + 0.0


def maxplus_product(Z, w):
    """``max_t (Z[s, t] + w[t])`` with ``-inf`` absorbing (``-inf + inf = -inf``)."""
    z = _values(Z)
    w = np.asarray(w, dtype=float)
    with np.errstate(invalid="ignore"):
        terms = np.where(np.isneginf(z) | np.isneginf(w)[None, :], -math.inf, z + w[None, :])
    return terms.max(axis=1)


@dataclass(frozen=True)
class TropicalMagnitude:
    lhs: float
    rhs: float
    defined: bool

    @property
    def value(self) -> Optional[float]:
        return self.lhs if self.defined else None


def tropical_magnitude(Z, tol=MAGNITUDE_TOL):
    """Max-plus magnitude: ``max(v_hat)`` if it equals ``max(w_hat)``.

    Infinite values must agree exactly, finite ones to ``tol``.  The result
    always carries both sides; ``value`` is ``None`` when they disagree.
    """
    v_hat, w_hat = principal_solutions(Z)
    lhs = float(v_hat.max())
    rhs = float(w_hat.max())
    if math.isinf(lhs) or math.isinf(rhs):
        defined = lhs == rhs
    else:
        defined = abs(lhs - rhs) <= tol
    return TropicalMagnitude(lhs, rhs, defined)
