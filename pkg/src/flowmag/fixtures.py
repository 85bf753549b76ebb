"""Small named digraphs and random flow-graph generators.

Used by the test-suite, the demos and the CLI.  Every block in
:data:`BLOCKS` is a flow graph whose interior is one strong component (or a
single vertex), so it has no proper sub-flow graphs, and whose entropy is
known in closed form.
"""

import math
from dataclasses import dataclass

import numpy as np

from .flow import _parallel, _series, validate_flow
from .graph import Digraph, make_rng

PLASTIC_NUMBER = 1.3247179572447460  # real root of x**3 - x - 1


def plastic():
    """Strong loopless 3-vertex digraph with characteristic polynomial x^3 - x - 1."""
    return Digraph(3, {(0, 1), (1, 0), (1, 2), (2, 0)}, labels=("1", "2", "3"))


def cycle(n):
    return Digraph(n, {(i, (i + 1) % n) for i in range(n)})


def complete(n):
    """Complete digraph without loops."""
    return Digraph(n, {(i, j) for i in range(n) for j in range(n) if i != j})


def single_edge():
    return Digraph(2, {(0, 1)})


def path(n):
    return Digraph(n, {(i, i + 1) for i in range(n - 1)})


def _block(interior_edges, n_inner, entry_head, exit_tail, name):
    # vertex 0 is the source, n_inner + 1 the target
    s, t = 0, n_inner + 1
    edges = {(u + 1, v + 1) for u, v in interior_edges}
    edges |= {(s, entry_head + 1), (exit_tail + 1, t)}
    labels = ["s"] + [f"{name}{i}" for i in range(n_inner)] + ["t"]
    return validate_flow(Digraph(n_inner + 2, edges, labels=labels))


def path_block():
    return _block(set(), 1, 0, 0, "p")


def two_cycle_block():
    return _block({(0, 1), (1, 0)}, 2, 0, 1, "c")


def three_cycle_block():
    return _block({(0, 1), (1, 2), (2, 0)}, 3, 0, 2, "r")


def double_two_cycle_block():
    """Two 2-cycles sharing a vertex; spectral radius sqrt(2)."""
    return _block({(0, 1), (1, 0), (0, 2), (2, 0)}, 3, 0, 0, "d")


def plastic_block():
    return _block({(0, 1), (1, 0), (1, 2), (2, 0)}, 3, 0, 1, "q")


def complete3_block():
    return _block({(i, j) for i in range(3) for j in range(3) if i != j}, 3, 0, 2, "k")


# name -> (constructor, entropy)
BLOCKS = {
    "path": (path_block, -math.inf),
    "two-cycle": (two_cycle_block, 0.0),
    "three-cycle": (three_cycle_block, 0.0),
    "double-two-cycle": (double_two_cycle_block, 0.5 * math.log(2.0)),
    "plastic": (plastic_block, math.log(PLASTIC_NUMBER)),
    "complete3": (complete3_block, math.log(2.0)),
}


def four_vertex_flow():
    """The flow graph 0->1, 1->2, 2->1, 2->3."""
    return validate_flow(Digraph(4, {(0, 1), (1, 2), (2, 1), (2, 3)}))


def random_flow_graph(rng, max_vertices=20, depth=3):
    """Random series/parallel composition of library blocks.

    Valid by construction; retried until it has at most ``max_vertices``
    vertices.
    """
    names = list(BLOCKS)

    def build(d):
        r = rng.random()
        if d == 0 or r < 0.4:
            return BLOCKS[names[rng.integers(len(names))]][0]()
        k = int(rng.integers(2, 4))
        parts = [build(d - 1) for _ in range(k)]
        if r < 0.75:
            return _series(parts)[0]
        return _parallel(parts)[0]

    while True:
        F = build(depth)
        if F.n <= max_vertices:
            return F


@dataclass(frozen=True)
class Bundle:
    """Parallel bundle of series chains of blocks.

    ``backbone[k][j]`` is the edge between block ``j`` and block ``j + 1``
    of branch ``k`` (``j = 0`` is the edge out of the fork, ``j = J_k`` the
    edge into the join).  ``entropies[k][j]`` is the entropy of block
    ``j + 1`` of branch ``k``.
    """

    flow: object
    backbone: tuple
    entropies: tuple
    entry: tuple
    exit: tuple


def bundle(branches):
    """Build a bundle from ``branches[k] = [block name, ...]``."""
    chains, backbones, entropies = [], [], []
    for names in branches:
        blocks = [BLOCKS[name][0]() for name in names]
        chain, maps = _series(blocks)
        edges = [blocks[0].entry] + [b.exit for b in blocks]
        edges = [(maps[0][edges[0][0]], maps[0][edges[0][1]])] + [
            (m[e[0]], m[e[1]]) for m, e in zip(maps, edges[1:])
        ]
        chains.append(chain)
        backbones.append(edges)
        entropies.append(tuple(BLOCKS[name][1] for name in names))
    F, maps = _parallel(chains)
    backbone = tuple(
        tuple((m[u], m[v]) for u, v in edges) for m, edges in zip(maps, backbones)
    )
    return Bundle(F, backbone, tuple(entropies), F.entry, F.exit)


def random_bundle(rng, max_branches=3, max_blocks=4):
    names = list(BLOCKS)
    k = int(rng.integers(2, max_branches + 1))
    branches = [
        [names[i] for i in rng.integers(len(names), size=int(rng.integers(1, max_blocks + 1)))]
        for _ in range(k)
    ]
    return bundle(branches)


def random_polytree(rng, n):
    """Random orientation of a random labelled tree (Pruefer-free attachment)."""
    edges = set()
    for v in range(1, n):
        u = int(rng.integers(v))
        edges.add((u, v) if rng.random() < 0.5 else (v, u))
    perm = rng.permutation(n)
    return Digraph(n, {(int(perm[u]), int(perm[v])) for u, v in edges})


def random_loopless(rng, n, p):
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, False)
    u, v = np.nonzero(mask)
    return Digraph(n, zip(u.tolist(), v.tolist()))


__all__ = [
    "PLASTIC_NUMBER",
    "plastic",
    "cycle",
    "complete",
    "single_edge",
    "path",
    "BLOCKS",
    "four_vertex_flow",
    "random_flow_graph",
    "Bundle",
    "bundle",
    "random_bundle",
    "random_polytree",
    "random_loopless",
    "make_rng",
]
