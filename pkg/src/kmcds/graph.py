"""Node-weighted simple graphs, problem instances and their text formats.

Instance file (``#`` starts a comment)::

    n E k m
    id weight [x y]        # n lines
    u v                    # E lines
    T id1 id2 ...          # optional terminal line

Solution file::

    S id1 id2 ...
    weight W
    kconn K
    mdom M
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .exceptions import InvalidNodeError, ParseError, PreconditionError

EPS_GEOM = 1e-9
WEIGHT_TOL = 1e-9


def _normalize_weight(w):
    if isinstance(w, bool):
        raise TypeError("boolean weight")
    if isinstance(w, int):
        return w
    w = float(w)
    if w.is_integer():
        return int(w)
    return w


class NodeWeightedGraph:
    """Immutable simple undirected graph with nonnegative node weights.

    Nodes are integer ids. Graphs read from files use the dense range
    ``0..n-1``; induced subgraphs keep the ids of the parent graph.

    Parameters
    ----------
    nodes : iterable of int
    edges : iterable of (int, int)
        Self-loops and repeated edges raise ``ValueError``.
    weights : mapping or sequence, optional
        Defaults to unit weights.
    coords : mapping or sequence of (x, y), optional
        When given for every node the unit-disc condition is enforced.
    """

    __slots__ = ("_nodes", "_adj", "_weights", "_coords", "_n_edges")

    def __init__(self, nodes, edges=(), weights=None, coords=None, *, _adj=None):
        nodes = tuple(sorted(set(int(v) for v in nodes)))
        self._nodes = nodes
        if _adj is not None:
            self._adj = _adj
        else:
            adj = {v: set() for v in nodes}
            for u, v in edges:
                u, v = int(u), int(v)
                if u == v:
                    raise ValueError(f"self-loop at node {u}")
                if u not in adj or v not in adj:
                    raise InvalidNodeError(f"edge ({u}, {v}) uses an unknown node")
                if v in adj[u]:
                    raise ValueError(f"duplicate edge ({u}, {v})")
                adj[u].add(v)
                adj[v].add(u)
            self._adj = {v: frozenset(nb) for v, nb in adj.items()}
        self._n_edges = sum(len(nb) for nb in self._adj.values()) // 2

        if weights is None:
            self._weights = {v: 1 for v in nodes}
        else:
            if not isinstance(weights, Mapping):
                weights = dict(zip(nodes, weights))
            missing = [v for v in nodes if v not in weights]
            if missing:
                raise ValueError(f"missing weights for nodes {missing[:5]}")
            self._weights = {v: _normalize_weight(weights[v]) for v in nodes}
            bad = [v for v, w in self._weights.items() if not w >= 0 or math.isinf(w)]
            if bad:
                raise ValueError(f"weights must be finite and nonnegative (node {bad[0]})")

        if coords is None:
            self._coords = None
        else:
            if not isinstance(coords, Mapping):
                coords = dict(zip(nodes, coords))
            self._coords = {v: (float(coords[v][0]), float(coords[v][1])) for v in nodes if v in coords}
            if len(self._coords) == len(nodes):
                self.check_unit_disc()

    # -- basic accessors ---------------------------------------------------

    @property
    def nodes(self):
        return self._nodes

    @property
    def adj(self) -> Mapping[int, frozenset]:
        return self._adj

    @property
    def weights(self) -> Mapping[int, float]:
        return self._weights

    @property
    def coords(self):
        return self._coords

    def __len__(self):
        return len(self._nodes)

    def __contains__(self, v):
        return v in self._adj

    @property
    def n_edges(self):
        return self._n_edges

    def edges(self):
        """Sorted list of edges ``(u, v)`` with ``u < v``."""
        return sorted((u, v) for u in self._nodes for v in self._adj[u] if u < v)

    def degree(self, v):
        return len(self._adj[v])

    def max_degree(self):
        return max((len(nb) for nb in self._adj.values()), default=0)

    def weight_of(self, nodes: Iterable[int]):
        return sum(self._weights[v] for v in nodes)

    def is_unit_weight(self):
        return all(w == 1 for w in self._weights.values())

    def has_edge(self, u, v):
        return v in self._adj.get(u, ())

    def check_nodes(self, nodes):
        """Raise :class:`InvalidNodeError` unless every id in ``nodes`` is in the graph."""
        for v in nodes:
            if v not in self._adj:
                raise InvalidNodeError(f"node {v!r} is not in the graph")

    def check_unit_disc(self, eps=EPS_GEOM):
        """Raise ``ValueError`` if the coordinates do not realise the edge set."""
        if self._coords is None or len(self._coords) != len(self._nodes):
            raise PreconditionError("unit-disc check needs coordinates for every node")
        c = self._coords
        nodes = self._nodes
        for i, u in enumerate(nodes):
            xu, yu = c[u]
            nb = self._adj[u]
            for v in nodes[i + 1:]:
                d = math.hypot(xu - c[v][0], yu - c[v][1])
                if v in nb:
                    if d > 1 + eps:
                        raise ValueError(f"edge ({u}, {v}) has length {d:.6g} > 1")
                elif d <= 1 - eps:
                    raise ValueError(f"non-edge ({u}, {v}) has length {d:.6g} <= 1")

    # -- derived graphs ----------------------------------------------------

    def induced(self, S: Iterable[int]) -> NodeWeightedGraph:
        S = frozenset(S)
        self.check_nodes(S)
        adj = {v: self._adj[v] & S for v in S}
        g = NodeWeightedGraph.__new__(NodeWeightedGraph)
        g._nodes = tuple(sorted(S))
        g._adj = adj
        g._n_edges = sum(len(nb) for nb in adj.values()) // 2
        g._weights = {v: self._weights[v] for v in S}
        g._coords = None if self._coords is None else {v: self._coords[v] for v in S if v in self._coords}
        return g

    def with_weights(self, weights: Mapping[int, float]) -> NodeWeightedGraph:
        return NodeWeightedGraph(self._nodes, weights=weights, coords=None, _adj=self._adj)._carry_coords(self._coords)

    def _carry_coords(self, coords):
        self._coords = coords
        return self

    def add_node(self, v, neighbors=(), weight=0) -> NodeWeightedGraph:
        """Return a copy with a new node ``v`` joined to ``neighbors``."""
        if v in self._adj:
            raise ValueError(f"node {v} already present")
        neighbors = frozenset(neighbors)
        self.check_nodes(neighbors)
        adj = {u: (nb | {v}) if u in neighbors else nb for u, nb in self._adj.items()}
        adj[v] = neighbors
        w = dict(self._weights)
        w[v] = weight
        return NodeWeightedGraph(list(self._nodes) + [v], weights=w, _adj=adj)

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        for v in self._nodes:
            g.add_node(v, weight=self._weights[v])
            if self._coords and v in self._coords:
                g.nodes[v]["pos"] = self._coords[v]
        g.add_edges_from(self.edges())
        return g

    def __eq__(self, other):
        if not isinstance(other, NodeWeightedGraph):
            return NotImplemented
        return (
            self._nodes == other._nodes
            and self._adj == other._adj
            and self._weights == other._weights
            and self._coords == other._coords
        )

    def __hash__(self):
        return hash((self._nodes, self._n_edges))

    def __repr__(self):
        return f"NodeWeightedGraph(n={len(self._nodes)}, edges={self._n_edges})"


def induced_subgraph(G: NodeWeightedGraph, S) -> NodeWeightedGraph:
    """Subgraph on ``S`` with every edge of ``G`` whose ends both lie in ``S``."""
    return G.induced(S)


def neighbors_in(G: NodeWeightedGraph, v, S) -> frozenset:
    G.check_nodes([v])
    S = frozenset(S)
    G.check_nodes(S)
    return G.adj[v] & S


@dataclass(frozen=True)
class Instance:
    graph: NodeWeightedGraph
    k: int
    m: int
    terminals: tuple | None = None
    root: int | None = None

    def __post_init__(self):
        if not (self.m >= self.k >= 1):
            raise PreconditionError(f"need m >= k >= 1, got k={self.k}, m={self.m}")
        if self.terminals is not None:
            t = tuple(sorted(set(self.terminals)))
            self.graph.check_nodes(t)
            object.__setattr__(self, "terminals", t)
        if self.root is not None:
            if self.terminals is None or self.root not in self.terminals:
                raise PreconditionError(f"root {self.root} must be a terminal")


# -- text formats ------------------------------------------------------------


def _strip(line):
    return line.split("#", 1)[0].strip()


def _int(tok, lineno, what):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {tok!r}", lineno) from None


def _number(tok, lineno, what):
    try:
        val = float(tok)
    except ValueError:
        raise ParseError(f"expected number {what}, got {tok!r}", lineno) from None
    if math.isnan(val) or math.isinf(val):
        raise ParseError(f"non-finite {what}", lineno)
    if val.is_integer() and "." not in tok and "e" not in tok.lower():
        return int(tok)
    return val


def _text(data):
    if isinstance(data, (bytes, bytearray)):
        return data.decode("utf-8")
    if hasattr(data, "read"):
        data = data.read()
        return data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    return data


def parse_instance(data) -> Instance:
    """Parse instance text (``str``, ``bytes`` or a file object)."""
    lines = [(i, _strip(l)) for i, l in enumerate(_text(data).splitlines(), start=1)]
    lines = [(i, l) for i, l in lines if l]
    if not lines:
        raise ParseError("empty instance")
    it = iter(lines)
    lineno, header = next(it)
    toks = header.split()
    if len(toks) != 4:
        raise ParseError("header must be 'n E k m'", lineno)
    n, n_edges, k, m = (_int(t, lineno, "in header") for t in toks)
    if n < 0 or n_edges < 0:
        raise ParseError("negative node or edge count", lineno)
    if not (m >= k >= 1):
        raise ParseError(f"need m >= k >= 1, got k={k}, m={m}", lineno)

    weights, coords = {}, {}
    for _ in range(n):
        try:
            lineno, line = next(it)
        except StopIteration:
            raise ParseError(f"expected {n} node lines") from None
        toks = line.split()
        if len(toks) not in (2, 4):
            raise ParseError("node line must be 'id weight' or 'id weight x y'", lineno)
        v = _int(toks[0], lineno, "node id")
        if not 0 <= v < n:
            raise ParseError(f"node id {v} out of range 0..{n - 1}", lineno)
        if v in weights:
            raise ParseError(f"duplicate node id {v}", lineno)
        w = _number(toks[1], lineno, "weight")
        if w < 0:
            raise ParseError(f"negative weight {w} for node {v}", lineno)
        weights[v] = w
        if len(toks) == 4:
            coords[v] = (_number(toks[2], lineno, "x"), _number(toks[3], lineno, "y"))

    edges = set()
    for _ in range(n_edges):
        try:
            lineno, line = next(it)
        except StopIteration:
            raise ParseError(f"expected {n_edges} edge lines") from None
        toks = line.split()
        if len(toks) != 2:
            raise ParseError("edge line must be 'u v'", lineno)
        u, v = (_int(t, lineno, "endpoint") for t in toks)
        if u == v:
            raise ParseError(f"self-loop at node {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge ({u}, {v}) uses an unknown node", lineno)
        e = (min(u, v), max(u, v))
        if e in edges:
            raise ParseError(f"duplicate edge {e}", lineno)
        edges.add(e)

    terminals = None
    for lineno, line in it:
        toks = line.split()
        if toks[0] != "T" or terminals is not None:
            raise ParseError(f"unexpected line {line!r}", lineno)
        terminals = []
        for tok in toks[1:]:
            t = _int(tok, lineno, "terminal id")
            if not 0 <= t < n:
                raise ParseError(f"terminal id {t} out of range", lineno)
            terminals.append(t)
        if len(set(terminals)) != len(terminals):
            raise ParseError("duplicate terminal id", lineno)

    if coords and len(coords) != n:
        raise ParseError("coordinates must be given for all nodes or none")
    try:
        g = NodeWeightedGraph(range(n), sorted(edges), weights, coords or None)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return Instance(g, k, m, None if terminals is None else tuple(terminals))


def _fmt(x):
    return str(x) if isinstance(x, int) else repr(float(x))


def emit_instance(inst: Instance) -> bytes:
    g = inst.graph
    out = io.StringIO()
    edges = g.edges()
    out.write(f"{len(g)} {len(edges)} {inst.k} {inst.m}\n")
    for v in g.nodes:
        line = f"{v} {_fmt(g.weights[v])}"
        if g.coords is not None and v in g.coords:
            x, y = g.coords[v]
            line += f" {x!r} {y!r}"
        out.write(line + "\n")
    for u, v in edges:
        out.write(f"{u} {v}\n")
    if inst.terminals is not None:
        out.write(" ".join(["T"] + [str(t) for t in inst.terminals]) + "\n")
    return out.getvalue().encode("utf-8")


@dataclass(frozen=True)
class SolutionRecord:
    """Parsed contents of a solution file."""

    nodes: tuple
    weight: float
    k_achieved: int
    m_achieved: int
    extra: dict = field(default_factory=dict)


def emit_solution(nodes, weight, k_achieved, m_achieved) -> bytes:
    lines = [
        " ".join(["S"] + [str(v) for v in sorted(nodes)]),
        f"weight {_fmt(weight)}",
        f"kconn {k_achieved}",
        f"mdom {m_achieved}",
    ]
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_solution(data) -> SolutionRecord:
    fields = {}
    nodes = None
    for lineno, raw in enumerate(_text(data).splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        toks = line.split()
        key = toks[0]
        if key == "S":
            if nodes is not None:
                raise ParseError("duplicate S line", lineno)
            nodes = tuple(sorted(_int(t, lineno, "node id") for t in toks[1:]))
            if len(set(nodes)) != len(nodes):
                raise ParseError("duplicate node id in S line", lineno)
        elif key in ("weight", "kconn", "mdom"):
            if len(toks) != 2:
                raise ParseError(f"{key} line takes one value", lineno)
            if key in fields:
                raise ParseError(f"duplicate {key} line", lineno)
            fields[key] = _number(toks[1], lineno, key) if key == "weight" else _int(toks[1], lineno, key)
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    if nodes is None:
        raise ParseError("missing S line")
    missing = [k for k in ("weight", "kconn", "mdom") if k not in fields]
    if missing:
        raise ParseError(f"missing {', '.join(missing)} line")
    return SolutionRecord(nodes, fields["weight"], fields["kconn"], fields["mdom"])
