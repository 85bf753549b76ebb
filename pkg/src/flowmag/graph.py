"""Simple digraphs: representation, I/O, random generation and traversal.

Every other module works on :class:`Digraph`, an immutable simple digraph
whose vertices are the dense integers ``0..n-1``.  Each vertex carries a
string label so that graphs loaded from files (or cut out of a larger
graph) can be matched back to their origin.
"""

from __future__ import annotations

import io
import json
import re
import sys
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, NamedTuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .exceptions import ParseError, PreconditionError, SchemaError

__all__ = [
    "Digraph",
    "Classification",
    "DuplicateEdgeWarning",
    "load_digraph",
    "dumps_edge_list",
    "reverse",
    "classify",
    "induced_subgraph",
    "strip_loops",
    "largest_weak_component",
    "shortest_path_matrix",
    "reachability_matrix",
    "count_walks",
    "make_rng",
    "erdos_renyi",
    "bernoulli_edge_subsample",
]

FORMATS = ("edge-list", "dot", "flare-json")


@dataclass(frozen=True)
class Digraph:
    """Finite simple digraph on vertices ``0..n-1``.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of (int, int)
        Ordered pairs ``(u, v)``; repeated pairs collapse.  Loops ``(v, v)``
        are representable (some loaders produce them) but most operations
        reject them.
    labels : sequence of str, optional
        Distinct vertex names.  Defaults to ``"0", "1", ...``.
    """

    n: int
    edges: frozenset = field(default_factory=frozenset)
    labels: tuple = None

    def __post_init__(self):
        n = int(self.n)
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        edges = frozenset((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        labels = self.labels
        if labels is None:
            labels = tuple(str(i) for i in range(n))
        else:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise ValueError("need exactly one label per vertex")
            if len(set(labels)) != n:
                raise ValueError("vertex labels must be distinct")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "labels", labels)

    def __repr__(self):
        return f"Digraph(n={self.n}, edges={sorted(self.edges)})"

    @cached_property
    def sorted_edges(self):
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self):
        """0/1 adjacency matrix as a read-only ``int64`` array."""
        a = np.zeros((self.n, self.n), dtype=np.int64)
        if self.edges:
            u, v = np.array(self.sorted_edges).T
            a[u, v] = 1
        a.setflags(write=False)
        return a

    @cached_property
    def successors(self):
        out = [[] for _ in range(self.n)]
        for u, v in self.sorted_edges:
            out[u].append(v)
        return tuple(tuple(s) for s in out)

    @cached_property
    def predecessors(self):
        inn = [[] for _ in range(self.n)]
        for u, v in self.sorted_edges:
            inn[v].append(u)
        return tuple(tuple(s) for s in inn)

    def out_degree(self):
        return np.array([len(s) for s in self.successors], dtype=np.int64)

    def in_degree(self):
        return np.array([len(p) for p in self.predecessors], dtype=np.int64)

    @cached_property
    def has_loops(self):
        return any(u == v for u, v in self.edges)

    @cached_property
    def is_strong(self):
        return self.n == 0 or int(self._strong_labels.max()) == 0

    @cached_property
    def _strong_labels(self):
        if self.n == 0:
            return np.zeros(0, dtype=np.int32)
        _, comp = connected_components(_csr(self), directed=True, connection="strong")
        comp.setflags(write=False)
        return comp

    def index(self, label):
        """Vertex id of ``label``."""
        try:
            return self._label_index[str(label)]
        except KeyError:
            raise KeyError(f"no vertex labelled {label!r}") from None

    @cached_property
    def _label_index(self):
        return {s: i for i, s in enumerate(self.labels)}

    def label_edges(self):
        """Edge set expressed with labels instead of ids."""
        return {(self.labels[u], self.labels[v]) for u, v in self.edges}


class Classification(NamedTuple):
    is_strong: bool
    has_loops: bool
    weak_component_count: int


class DuplicateEdgeWarning(UserWarning):
    def __init__(self, count):
        super().__init__(f"{count} duplicate edge(s) collapsed")
        self.count = count


# ---------------------------------------------------------------------------
# Loading and saving


def _read_text(source):
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, (str, Path)):
        if str(source) == "-":
            return sys.stdin.read()
        return Path(source).read_text(encoding="utf-8")
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return data


def guess_format(path):
    suffix = Path(str(path)).suffix.lower()
    if suffix in (".dot", ".gv"):
        return "dot"
    if suffix == ".json":
        return "flare-json"
    return "edge-list"


class _Builder:
    """Interns labels in first-appearance order and counts duplicate edges."""

    def __init__(self):
        self.index = {}
        self.edges = set()
        self.duplicates = 0

    def vertex(self, label):
        if label not in self.index:
            self.index[label] = len(self.index)
        return self.index[label]

    def edge(self, a, b):
        e = (self.vertex(a), self.vertex(b))
        if e in self.edges:
            self.duplicates += 1
        else:
            self.edges.add(e)

    def build(self):
        if self.duplicates:
            warnings.warn(DuplicateEdgeWarning(self.duplicates), stacklevel=3)
        return Digraph(len(self.index), self.edges, labels=tuple(self.index))


def _parse_edge_list(text):
    b = _Builder()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1:
            # bare label declares a (possibly isolated) vertex
            b.vertex(parts[0])
        elif len(parts) == 2:
            b.edge(parts[0], parts[1])
        else:
            raise ParseError(f"expected '<src> <dst>', got {line!r}", lineno)
    return b


_DOT_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>//[^\n]*|\#[^\n]*|/\*.*?\*/)
  | (?P<arrow>->)
  | (?P<undirected>--)
  | (?P<punct>[{}\[\];,=])
  | (?P<qid>"(?:[^"\\]|\\.)*")
  | (?P<id>-?[A-Za-z0-9_.]+)
    """,
    re.VERBOSE | re.DOTALL,
)


def _dot_tokens(text):
    pos, line = 0, 1
    while pos < len(text):
        m = _DOT_TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line)
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            line += 1
        elif kind == "comment":
            line += value.count("\n")
        elif kind != "ws":
            if kind == "qid":
                kind, value = "id", value[1:-1].replace('\\"', '"')
            yield kind, value, line
        pos = m.end()


def _parse_dot(text):
    toks = list(_dot_tokens(text))
    b = _Builder()
    i = 0

    def expect(kind, value=None):
        nonlocal i
        if i >= len(toks):
            raise ParseError(f"unexpected end of input, expected {value or kind}")
        k, v, ln = toks[i]
        if k != kind or (value is not None and v != value):
            raise ParseError(f"expected {value or kind}, got {v!r}", ln)
        i += 1
        return v

    if i < len(toks) and toks[i][1] == "strict":
        i += 1
    if i >= len(toks) or toks[i][1] != "digraph":
        ln = toks[i][2] if i < len(toks) else 1
        raise ParseError("expected 'digraph'", ln)
    i += 1
    if i < len(toks) and toks[i][0] == "id":
        i += 1
    expect("punct", "{")

    def skip_attrs():
        nonlocal i
        while i < len(toks) and toks[i][1] == "[":
            depth = 0
            while i < len(toks):
                v = toks[i][1]
                i += 1
                if v == "[":
                    depth += 1
                elif v == "]":
                    depth -= 1
                    if depth == 0:
                        break
            else:
                raise ParseError("unterminated attribute list")

    while True:
        if i >= len(toks):
            raise ParseError("missing closing '}'")
        k, v, ln = toks[i]
        if v == "}":
            i += 1
            break
        if v == ";" or v == ",":
            i += 1
            continue
        if k == "undirected":
            raise ParseError("undirected edge '--' in a digraph", ln)
        if k != "id":
            raise ParseError(f"unexpected token {v!r}", ln)
        if v in ("graph", "node", "edge") and i + 1 < len(toks) and toks[i + 1][1] == "[":
            i += 1
            skip_attrs()
            continue
        if i + 1 < len(toks) and toks[i + 1][1] == "=":
            # graph attribute statement: id = id
            i += 2
            expect("id")
            continue
        chain = [expect("id")]
        while i < len(toks) and toks[i][0] in ("arrow", "undirected"):
            if toks[i][0] == "undirected":
                raise ParseError("undirected edge '--' in a digraph", toks[i][2])
            i += 1
            chain.append(expect("id"))
        skip_attrs()
        if len(chain) == 1:
            b.vertex(chain[0])
        for a, c in zip(chain, chain[1:]):
            b.edge(a, c)
    if i != len(toks):
        raise ParseError("trailing input after graph body", toks[i][2])
    return b


def _parse_flare(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(data, list):
        raise SchemaError("flare JSON must be an array of {name, imports} objects")
    b = _Builder()
    for k, item in enumerate(data):
        if not isinstance(item, dict) or not isinstance(item.get("name"), str):
            raise SchemaError(f"entry {k}: missing string field 'name'")
        if item["name"] in b.index:
            raise SchemaError(f"entry {k}: duplicate name {item['name']!r}")
        b.vertex(item["name"])
    for k, item in enumerate(data):
        imports = item.get("imports", [])
        if not isinstance(imports, list) or not all(isinstance(s, str) for s in imports):
            raise SchemaError(f"entry {k}: 'imports' must be a list of names")
        for target in imports:
            if target not in b.index:
                raise SchemaError(f"entry {k}: import of unknown name {target!r}")
            b.edge(item["name"], target)
    return b


def load_digraph(source, format=None):
    """Read a digraph from a path, ``"-"`` (stdin), bytes or a file object.

    ``format`` is ``"edge-list"``, ``"dot"`` or ``"flare-json"``; when
    omitted it is guessed from the file suffix (default edge list).
    Labels are interned in order of first appearance.  Repeated edges
    collapse and trigger a :class:`DuplicateEdgeWarning`.
    """
    if format is None:
        format = guess_format(source) if isinstance(source, (str, Path)) else "edge-list"
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    text = _read_text(source)
    parser = {"edge-list": _parse_edge_list, "dot": _parse_dot,
              "flare-json": _parse_flare}[format]
    return parser(text).build()


def dumps_edge_list(D):
    """Edge-list text that :func:`load_digraph` reads back to the same graph.

    All vertices are declared first, in id order, so ids and isolated
    vertices survive the round trip.
    """
    for s in D.labels:
        if not s or any(c.isspace() for c in s) or "#" in s:
            raise ValueError(f"label {s!r} cannot be written to an edge list")
    out = io.StringIO()
    for s in D.labels:
        out.write(f"{s}\n")
    for u, v in D.sorted_edges:
        out.write(f"{D.labels[u]} {D.labels[v]}\n")
    return out.getvalue()


# ---------------------------------------------------------------------------
# Structure


def reverse(D):
    return Digraph(D.n, {(v, u) for u, v in D.edges}, labels=D.labels)


def _csr(D):
    a = D.adjacency
    return csr_matrix(a)


def classify(D):
    if D.n == 0:
        return Classification(True, False, 0)
    n_weak, _ = connected_components(_csr(D), directed=True, connection="weak")
    return Classification(D.is_strong, D.has_loops, int(n_weak))


def strong_components(D):
    """Strong component label per vertex (read-only array)."""
    return D._strong_labels


def induced_subgraph(D, vertices):
    """Subgraph induced on ``vertices``, re-indexed in increasing id order."""
    keep = sorted(set(int(v) for v in vertices))
    new = {v: i for i, v in enumerate(keep)}
    edges = {(new[u], new[v]) for u, v in D.edges if u in new and v in new}
    return Digraph(len(keep), edges, labels=[D.labels[v] for v in keep])


def strip_loops(D):
    return Digraph(D.n, {(u, v) for u, v in D.edges if u != v}, labels=D.labels)


def largest_weak_component(D):
    """Induced subgraph on the largest weak component.

    Ties go to the component with the smallest vertex id.  Labels are
    carried over, so vertices can be traced back to ``D``.
    """
    if D.n < 1:
        raise PreconditionError("largest_weak_component needs at least one vertex")
    _, comp = connected_components(_csr(D), directed=True, connection="weak")
    sizes = np.bincount(comp)
    first = {}
    for v, c in enumerate(comp):
        first.setdefault(int(c), v)
    best = min(range(len(sizes)), key=lambda c: (-sizes[c], first[c]))
    return induced_subgraph(D, np.flatnonzero(comp == best))


def shortest_path_matrix(D):
    """Hop-count distances as a float array with ``inf`` for unreachable pairs."""
    n = D.n
    d = np.full((n, n), np.inf)
    succ = D.successors
    for s in range(n):
        d[s, s] = 0.0
        frontier = [s]
        depth = 0
        seen = {s}
        while frontier:
            depth += 1
            nxt = []
            for u in frontier:
                for v in succ[u]:
                    if v not in seen:
                        seen.add(v)
                        d[s, v] = depth
                        nxt.append(v)
            frontier = nxt
    return d


def reachability_matrix(D):
    """Boolean ``R[u, v]``: some directed walk (possibly empty) joins u to v."""
    return np.isfinite(shortest_path_matrix(D))


def count_walks(D, N):
    """Number of directed walks with ``N`` edges, as an exact integer.

    This is the sum of all entries of ``A**N``.
    """
    if N < 0:
        raise PreconditionError("walk length must be nonnegative")
    w = [1] * D.n
    succ = D.successors
    for _ in range(N):
        w = [sum(w[v] for v in succ[u]) for u in range(D.n)]
    return sum(w)


# ---------------------------------------------------------------------------
# Randomness


def make_rng(seed, stream=0):
    """Counter-based generator keyed by ``(seed, stream)``.

    Uses Philox-4x64 with the two 64-bit key words set to ``seed`` and
    ``stream``; distinct keys give statistically independent streams, so
    results do not depend on the order in which trials run.
    """
    key = np.array([int(seed) % 2**64, int(stream) % 2**64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def erdos_renyi(n, q, seed, stream=0):
    """Directed G(n, q): each ordered pair ``u != v`` is an edge with probability q."""
    if not 0.0 <= q <= 1.0:
        raise PreconditionError(f"edge probability {q!r} not in [0, 1]")
    rng = make_rng(seed, stream)
    mask = rng.random((n, n)) < q
    np.fill_diagonal(mask, False)
    u, v = np.nonzero(mask)
    return Digraph(n, zip(u.tolist(), v.tolist()))


def bernoulli_edge_subsample(D, p_remove, seed, stream=0):
    """Drop each edge independently with probability ``p_remove``.

    The vertex set is untouched, so the result may have isolated vertices.
    """
    if not 0.0 <= p_remove <= 1.0:
        raise PreconditionError(f"removal probability {p_remove!r} not in [0, 1]")
    rng = make_rng(seed, stream)
    edges = D.sorted_edges
    keep = rng.random(len(edges)) >= p_remove
    return Digraph(D.n, [e for e, k in zip(edges, keep) if k], labels=D.labels)


def from_edges(edges: Iterable, n=None, labels=None):
    """Convenience constructor inferring ``n`` from the largest id."""
    edges = list(edges)
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return Digraph(n, edges, labels=labels)
