"""Power graphs and their relatives, plus closed-form degree and edge counts."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Hashable, Iterable, Sequence

import numpy as np

from . import kernels
from .groups import Group, SpectrumInfo, spectrum
from .numtheory import divisors, euler_phi

ELEMENT = "element"
PRIME = "prime"
OTHER = "other"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=bool, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class UndirectedGraph:
    """Simple graph on labelled vertices, stored as a symmetric boolean matrix.

    ``kind`` records what the labels are: group elements, primes, or anything else.
    """

    labels: tuple[Hashable, ...]
    adj: np.ndarray
    kind: str = OTHER

    def __post_init__(self):
        adj = _frozen(self.adj)
        n = len(self.labels)
        if adj.shape != (n, n):
            raise ValueError(f"adjacency shape {adj.shape} does not match {n} labels")
        if adj.diagonal().any():
            raise ValueError("loops are not allowed")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency is not symmetric")
        if len(set(self.labels)) != n:
            raise ValueError("duplicate vertex labels")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "adj", adj)

    @classmethod
    def from_edges(cls, labels: Sequence[Hashable], edges: Iterable[tuple[Hashable, Hashable]], kind: str = OTHER):
        pos = {v: i for i, v in enumerate(labels)}
        adj = np.zeros((len(labels), len(labels)), dtype=bool)
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u!r}")
            adj[pos[u], pos[v]] = adj[pos[v], pos[u]] = True
        return cls(tuple(labels), adj, kind)

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def degrees(self) -> np.ndarray:
        d = self.adj.sum(axis=1)
        d.setflags(write=False)
        return d

    @cached_property
    def edge_count(self) -> int:
        return int(self.degrees.sum()) // 2

    @cached_property
    def index(self) -> dict[Hashable, int]:
        return {v: i for i, v in enumerate(self.labels)}

    @cached_property
    def neighbor_lists(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(j) for j in np.flatnonzero(row)) for row in self.adj)

    def neighbors(self, v: Hashable) -> list[Hashable]:
        return [self.labels[j] for j in self.neighbor_lists[self.index[v]]]

    def degree(self, v: Hashable) -> int:
        return int(self.degrees[self.index[v]])

    def has_edge(self, u: Hashable, v: Hashable) -> bool:
        return bool(self.adj[self.index[u], self.index[v]])

    def edge_indices(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.adj, 1))
        return list(zip(us.tolist(), vs.tolist()))

    def edges(self) -> list[tuple[Hashable, Hashable]]:
        """Edges as label pairs, ordered by vertex position."""
        return [(self.labels[u], self.labels[v]) for u, v in self.edge_indices()]

    def subgraph(self, keep: Iterable[Hashable]) -> "UndirectedGraph":
        idx = sorted(self.index[v] for v in keep)
        return UndirectedGraph(tuple(self.labels[i] for i in idx), self.adj[np.ix_(idx, idx)], self.kind)

    def without_edge(self, u: Hashable, v: Hashable) -> "UndirectedGraph":
        return self.with_edge_flipped(u, v) if self.has_edge(u, v) else self

    def with_edge_flipped(self, u: Hashable, v: Hashable) -> "UndirectedGraph":
        i, j = self.index[u], self.index[v]
        adj = self.adj.copy()
        adj[i, j] = adj[j, i] = not adj[i, j]
        return UndirectedGraph(self.labels, adj, self.kind)

    def __repr__(self) -> str:
        return f"UndirectedGraph(n={self.n}, edges={self.edge_count}, kind={self.kind!r})"


@dataclass(frozen=True, eq=False)
class DirectedPowerGraph:
    """Arc x -> y iff y is a power of x and y != x."""

    labels: tuple[Hashable, ...]
    arcs: np.ndarray
    kind: str = ELEMENT

    def __post_init__(self):
        arcs = _frozen(self.arcs)
        if arcs.shape != (len(self.labels),) * 2:
            raise ValueError("arc matrix does not match labels")
        if arcs.diagonal().any():
            raise ValueError("loops are not allowed")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "arcs", arcs)

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def out_degrees(self) -> np.ndarray:
        return self.arcs.sum(axis=1)

    @cached_property
    def in_degrees(self) -> np.ndarray:
        return self.arcs.sum(axis=0)

    @cached_property
    def index(self) -> dict[Hashable, int]:
        return {v: i for i, v in enumerate(self.labels)}

    @property
    def arc_count(self) -> int:
        return int(self.arcs.sum())

    def out_degree(self, v: Hashable) -> int:
        return int(self.out_degrees[self.index[v]])

    def in_degree(self, v: Hashable) -> int:
        return int(self.in_degrees[self.index[v]])

    def out_neighbors(self, v: Hashable) -> list[Hashable]:
        return [self.labels[j] for j in np.flatnonzero(self.arcs[self.index[v]])]

    def in_neighbors(self, v: Hashable) -> list[Hashable]:
        return [self.labels[j] for j in np.flatnonzero(self.arcs[:, self.index[v]])]

    def arc_list(self) -> list[tuple[Hashable, Hashable]]:
        us, vs = np.nonzero(self.arcs)
        return [(self.labels[u], self.labels[v]) for u, v in zip(us.tolist(), vs.tolist())]

    def symmetrize(self) -> UndirectedGraph:
        return UndirectedGraph(self.labels, self.arcs | self.arcs.T, self.kind)

    def __repr__(self) -> str:
        return f"DirectedPowerGraph(n={self.n}, arcs={self.arc_count})"


def build_directed(g: Group) -> DirectedPowerGraph:
    return DirectedPowerGraph(tuple(range(g.order)), kernels.power_arcs(g.table), ELEMENT)


def build_undirected(g: Group) -> UndirectedGraph:
    arcs = kernels.power_arcs(g.table)
    return UndirectedGraph(tuple(range(g.order)), arcs | arcs.T, ELEMENT)


def puncture(graph: UndirectedGraph | DirectedPowerGraph):
    """Drop the identity vertex (label 0) from a graph over group elements."""
    if graph.kind != ELEMENT or 0 not in graph.index:
        raise ValueError("puncture needs a graph whose vertices are group elements including the identity")
    keep = [i for i, v in enumerate(graph.labels) if v != 0]
    labels = tuple(graph.labels[i] for i in keep)
    if isinstance(graph, DirectedPowerGraph):
        return DirectedPowerGraph(labels, graph.arcs[np.ix_(keep, keep)], ELEMENT)
    return UndirectedGraph(labels, graph.adj[np.ix_(keep, keep)], ELEMENT)


def punctured_power_graph(g: Group) -> UndirectedGraph:
    return puncture(build_undirected(g))


# ----------------------------------------------------------------------
# closed forms


def cyclic_degree_formula(n: int, m: int) -> tuple[int, int, int]:
    """Degrees of x^m in the power graphs of Z_n = <x>.

    Returns ``(out_degree, loopless_in_degree, undirected_degree)``.
    """
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    g = gcd(m, n)
    d_plus = n // g - 1
    d_minus = printed_in_degree(n, m) - 1
    d_und = n // g - 1 + sum(euler_phi(n // d) for d in divisors(g) if d != g)
    return d_plus, d_minus, d_und


def printed_in_degree(n: int, m: int) -> int:
    """sum_{d | gcd(m, n)} phi(n/d): counts x^m itself among its in-neighbours."""
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    return sum(euler_phi(n // d) for d in divisors(gcd(m, n)))


def _edge_term(o: int) -> int:
    return 2 * o - euler_phi(o) - 3


def edge_count_closed_form(g: Group) -> int:
    """Edges of P*(G) from element orders alone."""
    orders = g.element_orders[1:].tolist()
    total = sum(_edge_term(o) for o in orders)
    if total % 2:
        raise ArithmeticError(f"odd doubled edge count {total}")
    return total // 2


def edge_count_by_order_classes(info: SpectrumInfo) -> int:
    total = sum(count * _edge_term(order) for order, count in info.s.items() if order > 1)
    if total % 2:
        raise ValueError(f"odd doubled edge count {total}: spectrum is not from a group")
    return total // 2


def elementary_abelian_edge_count(p: int, m: int) -> int:
    return (p**m - 1) * (p - 2) // 2


# ----------------------------------------------------------------------
# related graphs


def prime_graph(g: Group) -> UndirectedGraph:
    """Vertices are the primes dividing |G|; p ~ q iff G has an element of order pq."""
    if g.order < 2:
        raise ValueError("prime graph of the trivial group is undefined")
    info = spectrum(g)
    primes = info.pi
    orders = set(info.pi_e)
    edges = [(p, q) for i, p in enumerate(primes) for q in primes[i + 1:] if p * q in orders]
    return UndirectedGraph.from_edges(primes, edges, kind=PRIME)


def commuting_graph(g: Group) -> UndirectedGraph:
    """Non-identity elements, adjacent when distinct and commuting."""
    if g.order < 2:
        raise ValueError("commuting graph of the trivial group is undefined")
    t = g.table
    adj = (t == t.T)[1:, 1:].copy()
    np.fill_diagonal(adj, False)
    return UndirectedGraph(tuple(range(1, g.order)), adj, ELEMENT)


# ----------------------------------------------------------------------
# export


def to_edge_list(graph: UndirectedGraph | DirectedPowerGraph) -> str:
    directed = isinstance(graph, DirectedPowerGraph)
    pairs = graph.arc_list() if directed else graph.edges()
    lines = [f"# vertices: {graph.n}"]
    if directed:
        lines.append("# directed")
    lines.append("# labels: " + " ".join(str(v) for v in graph.labels))
    lines.extend(f"{u} {v}" for u, v in pairs)
    return "\n".join(lines) + "\n"


def read_edge_list(text: str, kind: str = ELEMENT) -> UndirectedGraph:
    """Inverse of ``to_edge_list`` for undirected graphs with integer labels."""
    labels = None
    count = None
    edges = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            key = key.strip()
            if key == "vertices":
                count = int(value)
            elif key == "labels":
                labels = [int(tok) for tok in value.split()]
            elif key == "directed":
                raise ValueError("directed edge lists are not supported here")
            continue
        u, v = (int(tok) for tok in line.split())
        edges.append((u, v))
    if labels is None:
        if count is None:
            raise ValueError("edge list has neither a '# vertices:' nor a '# labels:' header")
        labels = list(range(count))
    if count is not None and count != len(labels):
        raise ValueError(f"header says {count} vertices but {len(labels)} labels given")
    return UndirectedGraph.from_edges(labels, edges, kind=kind)


def to_dot(graph: UndirectedGraph | DirectedPowerGraph, name: str = "G") -> str:
    directed = isinstance(graph, DirectedPowerGraph)
    head, arrow = ("digraph", "->") if directed else ("graph", "--")
    pairs = graph.arc_list() if directed else graph.edges()
    safe = "".join(ch if ch.isalnum() else "_" for ch in name) or "G"
    lines = [f"{head} {safe} {{"]
    lines.extend(f'  "{v}";' for v in graph.labels)
    lines.extend(f'  "{u}" {arrow} "{v}";' for u, v in pairs)
    lines.append("}")
    return "\n".join(lines) + "\n"
