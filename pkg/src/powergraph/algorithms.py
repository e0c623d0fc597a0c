"""Graph properties used by the power-graph characterizations.

Everything here works on :class:`~powergraph.graphs.UndirectedGraph` (and the
directed power graph for the cut-edge criterion) and reports witnesses in
terms of vertex labels, so results can go straight into a JSON report.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable

import networkx as nx
import numpy as np

from .graphs import DirectedPowerGraph, UndirectedGraph
from .groups import Group, spectrum

ISOMORPHISM_CAP = 256
PLANARITY_CAP = 10_000


class SizeCapExceeded(ValueError):
    pass


# ----------------------------------------------------------------------
# components, bipartiteness, Euler tours, trees


def connected_components(graph: UndirectedGraph) -> list[list[Hashable]]:
    """Components as label lists, ordered by their first vertex."""
    return [[graph.labels[i] for i in comp] for comp in _components(graph)]


def _components(graph: UndirectedGraph) -> list[list[int]]:
    nbrs = graph.neighbor_lists
    seen = [False] * graph.n
    comps = []
    for s in range(graph.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in nbrs[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(graph: UndirectedGraph) -> bool:
    return graph.n <= 1 or len(_components(graph)) == 1


@dataclass(frozen=True)
class BipartiteResult:
    bipartite: bool
    coloring: dict | None = None
    odd_cycle: list | None = None

    def __bool__(self) -> bool:
        return self.bipartite


def is_bipartite(graph: UndirectedGraph) -> BipartiteResult:
    nbrs = graph.neighbor_lists
    color = [-1] * graph.n
    parent = [-1] * graph.n
    depth = [0] * graph.n
    for s in range(graph.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in nbrs[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif color[w] == color[u]:
                    return BipartiteResult(False, odd_cycle=_odd_cycle(graph, u, w, parent, depth))
    return BipartiteResult(True, coloring={graph.labels[i]: c for i, c in enumerate(color)})


def _odd_cycle(graph, u, w, parent, depth):
    left, right = [u], [w]
    a, b = u, w
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    cycle = left + right[-2::-1]
    return [graph.labels[i] for i in cycle]


def is_eulerian(graph: UndirectedGraph) -> bool:
    """Connected with all degrees even. K1 and the empty graph count as Eulerian."""
    if graph.n <= 1:
        return True
    return is_connected(graph) and not (graph.degrees % 2).any()


def is_complete(graph: UndirectedGraph) -> bool:
    return graph.edge_count == graph.n * (graph.n - 1) // 2


def is_tree(graph: UndirectedGraph) -> bool:
    return graph.n >= 1 and graph.edge_count == graph.n - 1 and is_connected(graph)


def universal_vertices(graph: UndirectedGraph) -> list[Hashable]:
    return [graph.labels[i] for i in np.flatnonzero(graph.degrees == graph.n - 1)]


# ----------------------------------------------------------------------
# bridges


def _edge(graph: UndirectedGraph, i: int, j: int) -> tuple:
    if i > j:
        i, j = j, i
    return (graph.labels[i], graph.labels[j])


def find_bridges(graph: UndirectedGraph) -> list[tuple]:
    """Cut edges via iterative DFS low-points, sorted by vertex position."""
    nbrs = graph.neighbor_lists
    n = graph.n
    disc = [-1] * n
    low = [0] * n
    bridges = []
    timer = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(nbrs[root]))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, u, iter(nbrs[w])))
                    advanced = True
                    break
                low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent >= 0:
                low[parent] = min(low[parent], low[u])
                if low[u] > disc[parent]:
                    bridges.append((min(parent, u), max(parent, u)))
    return [_edge(graph, i, j) for i, j in sorted(bridges)]


def cut_edge_criterion(g: Group, dpg: DirectedPowerGraph) -> list[tuple]:
    """Edges xy of P*(G) at a vertex x with in-degree = out-degree = 1 in the punctured digraph."""
    if 0 in dpg.index:
        raise ValueError("expected the punctured directed power graph")
    if dpg.n and max(dpg.labels) >= g.order:
        raise ValueError("digraph is not over the elements of this group")
    und = dpg.arcs | dpg.arcs.T
    hits = np.flatnonzero((dpg.in_degrees == 1) & (dpg.out_degrees == 1))
    edges = set()
    for x in hits.tolist():
        for y in np.flatnonzero(und[x]).tolist():
            edges.add((min(x, y), max(x, y)))
    return [(dpg.labels[i], dpg.labels[j]) for i, j in sorted(edges)]


# ----------------------------------------------------------------------
# strongly regular graphs


@dataclass(frozen=True)
class SrgParameters:
    """srg(n, k, lambda, mu); ``mu`` is None when no two vertices are non-adjacent."""

    n: int
    k: int
    lam: int
    mu: int | None

    def as_tuple(self) -> tuple:
        return (self.n, self.k, self.lam, self.mu)

    def __str__(self) -> str:
        mu = "-" if self.mu is None else self.mu
        return f"({self.n}, {self.k}, {self.lam}, {mu})"


class NotStronglyRegular(ValueError):
    def __init__(self, reason: str, pair: tuple | None = None):
        self.reason = reason
        self.pair = pair
        super().__init__(reason if pair is None else f"{reason} at {pair}")


def srg_parameters(graph: UndirectedGraph) -> SrgParameters:
    """Strongly regular parameters, or NotStronglyRegular naming a violating vertex pair.

    Complete graphs (mu None), edgeless graphs and disjoint unions of equal
    cliques (mu = 0) all qualify. A graph without edges reports lambda = 0.
    """
    n = graph.n
    if n == 0:
        raise NotStronglyRegular("empty graph")
    deg = graph.degrees
    if (deg != deg[0]).any():
        j = int(np.flatnonzero(deg != deg[0])[0])
        raise NotStronglyRegular("not regular", (graph.labels[0], graph.labels[j]))
    k = int(deg[0])
    a = graph.adj.astype(np.int64)
    common = a @ a
    off = ~np.eye(n, dtype=bool)
    adjacent = graph.adj
    nonadj = off & ~adjacent
    lam = _constant(graph, common, adjacent, "adjacent pairs disagree on common neighbours")
    mu = _constant(graph, common, nonadj, "non-adjacent pairs disagree on common neighbours")
    params = SrgParameters(n, k, 0 if lam is None else lam, mu)
    _recheck(graph, params)
    return params


def _constant(graph, common, mask, message):
    values = common[mask]
    if values.size == 0:
        return None
    if (values != values[0]).any():
        us, vs = np.nonzero(mask & (common != values[0]))
        raise NotStronglyRegular(message, (graph.labels[int(us[0])], graph.labels[int(vs[0])]))
    return int(values[0])


def _recheck(graph: UndirectedGraph, params: SrgParameters) -> None:
    """Independent pair-by-pair confirmation using neighbour bitmasks."""
    masks = [sum(1 << j for j in nb) for nb in graph.neighbor_lists]
    for i in range(graph.n):
        if bin(masks[i]).count("1") != params.k:
            raise AssertionError("srg recheck: degree mismatch")
        for j in range(i + 1, graph.n):
            c = bin(masks[i] & masks[j]).count("1")
            want = params.lam if masks[i] >> j & 1 else params.mu
            if c != want:
                raise AssertionError(f"srg recheck failed at {(graph.labels[i], graph.labels[j])}")
    comps = _components(graph)
    if len(comps) > 1 and any(len(c) != params.k + 1 for c in comps):
        raise AssertionError("disconnected srg is not a union of equal cliques")


def is_strongly_regular(graph: UndirectedGraph) -> bool:
    try:
        srg_parameters(graph)
    except NotStronglyRegular:
        return False
    return True


# ----------------------------------------------------------------------
# planarity


@dataclass(frozen=True)
class KuratowskiWitness:
    """A subdivision of K5 or K3,3: branch vertices plus the paths joining them."""

    kind: str
    branch_vertices: tuple
    paths: tuple[tuple, ...]

    def edges(self) -> list[tuple]:
        out = []
        for p in self.paths:
            out.extend(zip(p, p[1:]))
        return out

    def to_json(self) -> dict:
        return {"kind": self.kind, "branch_vertices": list(self.branch_vertices), "paths": [list(p) for p in self.paths]}


@dataclass(frozen=True)
class PlanarityResult:
    planar: bool
    rotation: dict | None = field(default=None, repr=False)
    faces: int | None = None
    kuratowski: KuratowskiWitness | None = None

    def __bool__(self) -> bool:
        return self.planar

    def witness_json(self):
        if self.planar:
            return {"faces": self.faces, "rotation": {str(v): list(r) for v, r in self.rotation.items()}}
        return self.kuratowski.to_json()


def _to_nx(graph: UndirectedGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(graph.n))
    h.add_edges_from(graph.edge_indices())
    return h


def _planar(h: nx.Graph) -> bool:
    return nx.check_planarity(h, counterexample=False)[0]


def is_planar(graph: UndirectedGraph) -> PlanarityResult:
    """Planarity with a certificate either way.

    Planar graphs come with a rotation system whose traced faces satisfy
    Euler's formula; non-planar graphs come with a verified Kuratowski
    subdivision.
    """
    if graph.n > PLANARITY_CAP:
        raise SizeCapExceeded(f"{graph.n} vertices exceeds the planarity cap {PLANARITY_CAP}")
    h = _to_nx(graph)
    # Euler bound first: cheap rejection before the full test
    dense = graph.n >= 3 and graph.edge_count > 3 * graph.n - 6
    ok, emb = (False, None) if dense else nx.check_planarity(h)
    if ok:
        rotation = {graph.labels[v]: tuple(graph.labels[w] for w in emb.neighbors_cw_order(v)) for v in range(graph.n)}
        faces = check_embedding(graph, rotation)
        return PlanarityResult(True, rotation=rotation, faces=faces)
    witness = _extract_kuratowski(graph, h)
    check_kuratowski(graph, witness)
    return PlanarityResult(False, kuratowski=witness)


def count_faces(graph: UndirectedGraph, rotation: dict) -> int:
    """Faces of the drawing given by a rotation system (one shared outer face)."""
    pos = {v: {w: i for i, w in enumerate(rot)} for v, rot in rotation.items()}
    seen = set()
    per_component = 0
    comps = _components(graph)
    for comp in comps:
        labels = [graph.labels[i] for i in comp]
        faces = 0
        for u in labels:
            for v in rotation[u]:
                if (u, v) in seen:
                    continue
                faces += 1
                a, b = u, v
                while (a, b) not in seen:
                    seen.add((a, b))
                    rot = rotation[b]
                    a, b = b, rot[(pos[b][a] + 1) % len(rot)]
        per_component += max(faces, 1)
    return per_component - (len(comps) - 1)


def check_embedding(graph: UndirectedGraph, rotation: dict) -> int:
    """Validate a rotation system against the graph and Euler's formula; return the face count."""
    for v in graph.labels:
        if sorted(map(graph.index.get, rotation[v])) != sorted(graph.neighbor_lists[graph.index[v]]):
            raise AssertionError(f"rotation at {v!r} does not list its neighbours")
    faces = count_faces(graph, rotation)
    c = len(_components(graph))
    if graph.n - graph.edge_count + faces != 1 + c:
        raise AssertionError(f"Euler check failed: v={graph.n} e={graph.edge_count} f={faces} c={c}")
    return faces


def _extract_kuratowski(graph: UndirectedGraph, h: nx.Graph) -> KuratowskiWitness:
    # smallest non-planar prefix of the vertices by descending degree, then edge-minimal
    order = sorted(range(graph.n), key=lambda v: (-int(graph.degrees[v]), v))
    lo, hi = 5, graph.n
    while lo < hi:
        mid = (lo + hi) // 2
        if _planar(h.subgraph(order[:mid])):
            lo = mid + 1
        else:
            hi = mid
    sub = nx.Graph(h.subgraph(order[:hi]))
    for e in sorted(sub.edges()):
        sub.remove_edge(*e)
        if _planar(sub):
            sub.add_edge(*e)
    sub.remove_nodes_from([v for v in list(sub) if sub.degree(v) == 0])
    branch = sorted(v for v in sub if sub.degree(v) > 2)
    kind = "K5" if len(branch) == 5 else "K3,3"
    paths = []
    done = set()
    for b in branch:
        for nb in sorted(sub[b]):
            path = [b, nb]
            while path[-1] not in branch:
                prev, cur = path[-2], path[-1]
                path.append(next(w for w in sub[cur] if w != prev))
            key = frozenset(frozenset(e) for e in zip(path, path[1:]))
            if key in done:
                continue
            done.add(key)
            paths.append(tuple(graph.labels[v] for v in path))
    return KuratowskiWitness(kind, tuple(graph.labels[v] for v in branch), tuple(paths))


def check_kuratowski(graph: UndirectedGraph, w: KuratowskiWitness) -> None:
    """Raise AssertionError unless ``w`` really is a K5 / K3,3 subdivision inside ``graph``."""
    branch = set(w.branch_vertices)
    want = {"K5": (5, 10), "K3,3": (6, 9)}.get(w.kind)
    if want is None or len(branch) != want[0] or len(w.paths) != want[1]:
        raise AssertionError(f"bad witness shape for {w.kind}")
    interior_seen = set()
    pairs = set()
    for p in w.paths:
        if p[0] not in branch or p[-1] not in branch or p[0] == p[-1]:
            raise AssertionError(f"path {p} does not join two branch vertices")
        inner = p[1:-1]
        if branch & set(inner) or interior_seen & set(inner) or len(set(inner)) != len(inner):
            raise AssertionError("paths are not internally disjoint")
        interior_seen.update(inner)
        for u, v in zip(p, p[1:]):
            if not graph.has_edge(u, v):
                raise AssertionError(f"witness edge {(u, v)} missing from graph")
        pair = frozenset((p[0], p[-1]))
        if pair in pairs:
            raise AssertionError("two paths join the same branch pair")
        pairs.add(pair)
    if w.kind == "K3,3":
        # the branch-pair graph must be complete bipartite 3+3
        bv = sorted(branch, key=str)
        side = {bv[0]}
        side |= {v for v in bv if v != bv[0] and frozenset((bv[0], v)) not in pairs}
        other = branch - side
        if len(side) != 3 or len(other) != 3 or any(frozenset((a, b)) not in pairs for a in side for b in other):
            raise AssertionError("branch pairs do not form K3,3")


# ----------------------------------------------------------------------
# isomorphism


@dataclass(frozen=True)
class IsomorphismResult:
    isomorphic: bool
    mapping: dict | None = None

    def __bool__(self) -> bool:
        return self.isomorphic


def _refine(a: UndirectedGraph, b: UndirectedGraph) -> tuple[list[int], list[int]]:
    """Joint colour refinement, so colours are comparable across both graphs."""
    ca = [int(d) for d in a.degrees]
    cb = [int(d) for d in b.degrees]
    classes = len(set(ca) | set(cb))
    while True:
        sa = [(ca[v], tuple(sorted(ca[w] for w in a.neighbor_lists[v]))) for v in range(a.n)]
        sb = [(cb[v], tuple(sorted(cb[w] for w in b.neighbor_lists[v]))) for v in range(b.n)]
        ids = {s: i for i, s in enumerate(sorted(set(sa) | set(sb)))}
        ca, cb = [ids[s] for s in sa], [ids[s] for s in sb]
        if len(ids) == classes:
            return ca, cb
        classes = len(ids)


def are_isomorphic(a: UndirectedGraph, b: UndirectedGraph) -> IsomorphismResult:
    """Backtracking search over refined colour classes; any mapping found is re-verified."""
    for g in (a, b):
        if g.n > ISOMORPHISM_CAP:
            raise SizeCapExceeded(f"{g.n} vertices exceeds the isomorphism cap {ISOMORPHISM_CAP}")
    if a.n != b.n or a.edge_count != b.edge_count:
        return IsomorphismResult(False)
    if sorted(a.degrees.tolist()) != sorted(b.degrees.tolist()):
        return IsomorphismResult(False)
    ca, cb = _refine(a, b)
    if sorted(ca) != sorted(cb):
        return IsomorphismResult(False)
    n = a.n
    if n == 0:
        return IsomorphismResult(True, {})
    size = {c: ca.count(c) for c in set(ca)}
    # static order: start rare, then prefer vertices with many already-ordered neighbours
    order: list[int] = []
    placed = np.zeros(n, dtype=bool)
    links = np.zeros(n, dtype=np.int64)
    for _ in range(n):
        free = np.flatnonzero(~placed)
        v = min(free.tolist(), key=lambda u: (-links[u], size[ca[u]], u))
        order.append(v)
        placed[v] = True
        links += a.adj[v]
    by_color: dict[int, list[int]] = {}
    for w in range(n):
        by_color.setdefault(cb[w], []).append(w)
    image = [-1] * n
    used = np.zeros(n, dtype=bool)
    adj_a, adj_b = a.adj, b.adj

    def extend(depth: int) -> bool:
        if depth == n:
            return True
        v = order[depth]
        prev = order[:depth]
        targets = [image[u] for u in prev]
        row = adj_a[v, prev]
        for w in by_color[ca[v]]:
            if used[w] or not np.array_equal(adj_b[w, targets], row):
                continue
            image[v] = w
            used[w] = True
            if extend(depth + 1):
                return True
            used[w] = False
            image[v] = -1
        return False

    if not extend(0):
        return IsomorphismResult(False)
    perm = np.array(image)
    if not np.array_equal(a.adj, b.adj[np.ix_(perm, perm)]):
        raise AssertionError("isomorphism witness failed edge-by-edge verification")
    return IsomorphismResult(True, {a.labels[v]: b.labels[image[v]] for v in range(n)})


def verify_isomorphism(a: UndirectedGraph, b: UndirectedGraph, mapping: dict) -> bool:
    if sorted(mapping, key=a.index.get) != list(a.labels) or set(mapping.values()) != set(b.labels):
        return False
    return all(a.has_edge(u, v) == b.has_edge(mapping[u], mapping[v]) for i, u in enumerate(a.labels) for v in a.labels[i + 1:])


# ----------------------------------------------------------------------
# misc comparisons


def is_spanning_subgraph(sub: UndirectedGraph, sup: UndirectedGraph) -> bool:
    if set(sub.labels) != set(sup.labels):
        raise ValueError("graphs have different vertex sets")
    return all(sup.has_edge(u, v) for u, v in sub.edges())


def order_statistics_equal(a: Group, b: Group) -> bool:
    return spectrum(a).s == spectrum(b).s
