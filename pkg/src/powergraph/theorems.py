"""Executable checks of power-graph theorems over a constructive catalog of groups.

Each registered claim pairs a group-theoretic prediction with an observation made
on the graph by the algorithms module. An instance passes when the two agree.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from itertools import combinations
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from . import algorithms as alg
from . import graphs as gr
from . import groups as grp
from .groups import Group
from .numtheory import euler_phi, is_prime, is_prime_power, phi_identity_sides, prime_divisors

SUITE_VERSION = "1.0"

OUT_OF_SCOPE = {
    "P3.2": "recognition of a family of simple groups; quantifies over all finite groups",
    "P3.3": "recognition of a family of simple groups; quantifies over all finite groups",
    "P3.4": "recognition of a family of simple groups; quantifies over all finite groups",
    "T3.5": "recognition by power graph; quantifies over all finite groups",
    "T3.6": "recognition by power graph; quantifies over all finite groups",
    "T7.2": "depends on the classification of EPPO groups",
    "C7.3": "depends on the classification of EPPO groups",
}


# ----------------------------------------------------------------------
# catalog


def _products() -> list[tuple[int, str, Callable[[], Group]]]:
    Z, E, Q, D = grp.build_cyclic, grp.build_elementary_abelian, grp.build_generalized_quaternion, grp.build_dihedral
    S, A, P = grp.build_symmetric, grp.build_alternating, grp.direct_product

    def prod(*factories, label):
        def build():
            out = factories[0]()
            for f in factories[1:]:
                out = P(out, f())
            return grp.Group(out.table, label, out.names)
        return build

    return [
        (8, "Z2xZ4", prod(lambda: Z(2), lambda: Z(4), label="Z2xZ4")),
        (12, "Z2xZ6", prod(lambda: Z(2), lambda: Z(6), label="Z2xZ6")),
        (16, "Z2xZ8", prod(lambda: Z(2), lambda: Z(8), label="Z2xZ8")),
        (16, "Z4xZ4", prod(lambda: Z(4), lambda: Z(4), label="Z4xZ4")),
        (16, "Z2^2xZ4", prod(lambda: E(2, 2), lambda: Z(4), label="Z2^2xZ4")),
        (16, "Z2xQ8", prod(lambda: Z(2), lambda: Q(2), label="Z2xQ8")),
        (16, "Z2xD8", prod(lambda: Z(2), lambda: D(4), label="Z2xD8")),
        (18, "Z3xZ6", prod(lambda: Z(3), lambda: Z(6), label="Z3xZ6")),
        (18, "S3xZ3", prod(lambda: S(3), lambda: Z(3), label="S3xZ3")),
        (20, "Z2xZ10", prod(lambda: Z(2), lambda: Z(10), label="Z2xZ10")),
        (24, "Z2xZ12", prod(lambda: Z(2), lambda: Z(12), label="Z2xZ12")),
        (24, "Z2xA4", prod(lambda: Z(2), lambda: A(4), label="Z2xA4")),
        (24, "Z3xQ8", prod(lambda: Z(3), lambda: Q(2), label="Z3xQ8")),
        (24, "Z4xS3", prod(lambda: Z(4), lambda: S(3), label="Z4xS3")),
        (27, "Z3xZ9", prod(lambda: Z(3), lambda: Z(9), label="Z3xZ9")),
        (30, "Z5xS3", prod(lambda: Z(5), lambda: S(3), label="Z5xS3")),
        (32, "Z4xZ8", prod(lambda: Z(4), lambda: Z(8), label="Z4xZ8")),
        (32, "Z2xQ16", prod(lambda: Z(2), lambda: Q(4), label="Z2xQ16")),
        (36, "S3xS3", prod(lambda: S(3), lambda: S(3), label="S3xS3")),
        (36, "Z3xA4", prod(lambda: Z(3), lambda: A(4), label="Z3xA4")),
        (48, "Z2xS4", prod(lambda: Z(2), lambda: S(4), label="Z2xS4")),
        (60, "Z5xA4", prod(lambda: Z(5), lambda: A(4), label="Z5xA4")),
        (81, "Z3xHeis(3)", prod(lambda: Z(3), lambda: grp.build_heisenberg(3), label="Z3xHeis(3)")),
        (81, "Z3xZ27", prod(lambda: Z(3), lambda: Z(27), label="Z3xZ27")),
        (120, "Z2xA5", prod(lambda: Z(2), lambda: A(5), label="Z2xA5")),
    ]


def _catalog_specs(max_order: int) -> list[tuple[int, str, Callable[[], Group]]]:
    specs: list[tuple[int, str, Callable[[], Group]]] = []
    specs += [(n, f"Z{n}", lambda n=n: grp.build_cyclic(n)) for n in range(1, max_order + 1)]
    for p in prime_divisors_upto(max_order):
        k = 2
        while p**k <= max_order:
            specs.append((p**k, f"Z{p}^{k}", lambda p=p, k=k: grp.build_elementary_abelian(p, k)))
            k += 1
    specs += [(4 * m, f"Q{4 * m}", lambda m=m: grp.build_generalized_quaternion(m)) for m in range(2, max_order // 4 + 1)]
    specs += [(2 * m, f"D{2 * m}", lambda m=m: grp.build_dihedral(m)) for m in range(3, max_order // 2 + 1)]
    specs += [
        (27, "Heis(3)", lambda: grp.build_heisenberg(3)),
        (125, "Heis(5)", lambda: grp.build_heisenberg(5)),
        (6, "S3", lambda: grp.build_symmetric(3)),
        (24, "S4", lambda: grp.build_symmetric(4)),
        (120, "S5", lambda: grp.build_symmetric(5)),
        (12, "A4", lambda: grp.build_alternating(4)),
        (60, "A5", lambda: grp.build_alternating(5)),
        (21, "F21", lambda: grp.build_frobenius_7_3()),
        (147, "Z7^2:Z3", lambda: grp.build_frobenius_7_3(2)),
    ]
    specs += _products()
    return [s for s in specs if s[0] <= max_order]


def prime_divisors_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


_GROUP_CACHE: dict[str, Group] = {}


def catalog(max_order: int) -> list[Group]:
    """Deterministic, duplicate-free list of catalog groups of order at most ``max_order``."""
    if max_order < 2:
        raise ValueError("max_order must be at least 2")
    out, seen = [], set()
    for _, label, factory in _catalog_specs(max_order):
        if label in seen:
            continue
        seen.add(label)
        if label not in _GROUP_CACHE:
            g = factory()
            _GROUP_CACHE[label] = g if g.label == label else Group(g.table, label, g.names)
        out.append(_GROUP_CACHE[label])
    return out


def catalog_group(label: str, max_order: int = 256) -> Group:
    """Look up one catalog group by label."""
    for g in catalog(max_order):
        if g.label == label:
            return g
    raise KeyError(label)


# ----------------------------------------------------------------------
# subjects


class Subject:
    """A group with its graphs built on first use.

    ``punctured`` may inject a replacement P*(G); P(G) is then rebuilt from it by
    joining the identity to every vertex, so the injected graph drives every check.
    """

    def __init__(self, group: Group, punctured: gr.UndirectedGraph | None = None):
        self.group = group
        self._override = punctured
        if punctured is not None and punctured.labels != tuple(range(1, group.order)):
            raise ValueError("injected graph must be on the non-identity elements 1..n-1")

    @property
    def label(self) -> str:
        return self.group.label

    @property
    def order(self) -> int:
        return self.group.order

    @cached_property
    def info(self) -> grp.SpectrumInfo:
        return grp.spectrum(self.group)

    @cached_property
    def directed(self) -> gr.DirectedPowerGraph:
        return gr.build_directed(self.group)

    @cached_property
    def directed_punctured(self) -> gr.DirectedPowerGraph:
        return gr.puncture(self.directed)

    @cached_property
    def full(self) -> gr.UndirectedGraph:
        if self._override is None:
            return gr.build_undirected(self.group)
        n = self.order
        adj = np.ones((n, n), dtype=bool)
        adj[1:, 1:] = self._override.adj
        np.fill_diagonal(adj, False)
        return gr.UndirectedGraph(tuple(range(n)), adj, gr.ELEMENT)

    @cached_property
    def punctured(self) -> gr.UndirectedGraph:
        if self._override is not None:
            return self._override
        return gr.puncture(self.full)

    @cached_property
    def component_ids(self) -> np.ndarray:
        """Component number of each element in P*(G); -1 for the identity."""
        comp = np.full(self.order, -1, dtype=np.int64)
        for c, members in enumerate(alg.connected_components(self.punctured)):
            comp[list(members)] = c
        return comp

    @cached_property
    def center(self) -> frozenset[int]:
        return grp.center(self.group)


def _as_subject(item: Group | Subject) -> Subject:
    return item if isinstance(item, Subject) else Subject(item)


# ----------------------------------------------------------------------
# report types


def _plain(value: Any) -> Any:
    """Convert numpy scalars and tuples into JSON-ready Python values."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [_plain(v) for v in value]
        return sorted(items, key=repr) if isinstance(value, (set, frozenset)) else items
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    return value


@dataclass
class TheoremInstance:
    theorem_id: str
    group: str
    predicted: Any
    observed: Any
    witness: Any = None

    def __post_init__(self):
        self.predicted = _plain(self.predicted)
        self.observed = _plain(self.observed)
        self.witness = _plain(self.witness)

    @property
    def status(self) -> str:
        return "pass" if self.predicted == self.observed else "fail"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "group": self.group,
            "predicted": self.predicted,
            "observed": self.observed,
            "status": self.status,
            "witness": self.witness,
        }


@dataclass
class TheoremReport:
    max_order: int
    catalog: list[str]
    instances: list[TheoremInstance]
    version: str = SUITE_VERSION
    out_of_scope: dict[str, str] = field(default_factory=lambda: dict(OUT_OF_SCOPE))

    def __post_init__(self):
        self.instances = sorted(self.instances, key=lambda i: (i.theorem_id, i.group))

    @property
    def summary(self) -> dict[str, int]:
        passed = sum(i.passed for i in self.instances)
        return {"pass": passed, "fail": len(self.instances) - passed}

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    def failures(self) -> list[TheoremInstance]:
        return [i for i in self.instances if not i.passed]

    def coverage(self) -> dict[str, dict]:
        out = {}
        for tid in sorted({i.theorem_id for i in self.instances}):
            mine = [i for i in self.instances if i.theorem_id == tid]
            entry = {"kind": REGISTRY[tid].kind if tid in REGISTRY else "unknown", "instances": len(mine)}
            if entry["kind"] in ("iff", "implication"):
                entry["predicted_true"] = sum(bool(i.predicted) for i in mine)
                entry["predicted_false"] = len(mine) - entry["predicted_true"]
            entry["scope"] = REGISTRY[tid].scope if tid in REGISTRY else ""
            out[tid] = entry
        return out

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "max_order": self.max_order,
            "catalog": list(self.catalog),
            "instances": [i.to_json() for i in self.instances],
            "summary": self.summary,
            "coverage": self.coverage(),
            "out_of_scope": dict(sorted(self.out_of_scope.items())),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True) + "\n"


def report_schema() -> dict:
    return json.loads(resources.files("powergraph").joinpath("data/report_schema.json").read_text())


# ----------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class Theorem:
    theorem_id: str
    kind: str  # "iff", "implication" or "property"
    statement: str
    scope: str
    check: Callable[[list[Subject], int], list[TheoremInstance]]


REGISTRY: dict[str, Theorem] = {}


def _register(theorem_id: str, kind: str, statement: str, scope: str):
    def deco(fn):
        REGISTRY[theorem_id] = Theorem(theorem_id, kind, statement, scope, fn)
        return fn
    return deco


def _per_group(theorem_id: str, select: Callable[[Subject], bool] = lambda s: True):
    """Lift ``fn(subject) -> (predicted, observed, witness)`` to a sweep that never aborts."""
    def wrap(fn):
        def run(subjects: list[Subject], max_order: int) -> list[TheoremInstance]:
            out = []
            for s in subjects:
                if not select(s):
                    continue
                try:
                    predicted, observed, witness = fn(s)
                except Exception as exc:  # recorded as a failed instance
                    predicted, observed, witness = "no error", f"error: {type(exc).__name__}: {exc}", None
                out.append(TheoremInstance(theorem_id, s.label, predicted, observed, witness))
            return out
        return run
    return wrap


def _nontrivial(s: Subject) -> bool:
    return s.order > 1


def _cyclic(s: Subject) -> bool:
    return grp.is_cyclic(s.group)


def _p_group(s: Subject) -> bool:
    return grp.is_p_group(s.group)


def _nonident(s: Subject) -> np.ndarray:
    mask = np.ones(s.order, dtype=bool)
    mask[0] = False
    return mask


def _pair(s: Subject, mask: np.ndarray):
    i, j = np.argwhere(mask)[0].tolist()
    return [i, j]


# -- elementary structure


@_register("L2.1", "iff", "P(G) is complete iff G is cyclic of order 1 or a prime power", "all catalog groups")
@_per_group("L2.1")
def _l21(s):
    predicted = grp.is_cyclic(s.group) and (s.order == 1 or is_prime_power(s.order))
    return predicted, alg.is_complete(s.full), {"edges": s.full.edge_count}


@_register("L2.2", "property",
           "maximal-order elements have degree o(x)-1; coprime orders and distinct involutions are non-adjacent",
           "nontrivial catalog groups")
@_per_group("L2.2", _nontrivial)
def _l22(s):
    g, adj, orders = s.group, s.full.adj, s.group.element_orders
    maximal = np.isin(orders, s.info.mu)
    bad_deg = np.flatnonzero(maximal & (s.full.degrees != orders - 1))
    o_i, o_j = orders[:, None], orders[None, :]
    coprime = (np.gcd(o_i, o_j) == 1) & (o_i > 1) & (o_j > 1)
    involutions = (o_i == 2) & (o_j == 2)
    bad_pairs = adj & (coprime | involutions)
    witness: dict = {}
    if bad_deg.size:
        witness["degree_violation"] = int(bad_deg[0])
    if bad_pairs.any():
        witness["adjacent_pair"] = _pair(s, bad_pairs)
    if g.is_abelian and grp.is_p_group(g) and grp.exponent(g) == s.info.pi[0]:
        # elementary abelian: (p^n - 1)/(p - 1) cliques of size p - 1 after removing the identity
        p = s.info.pi[0]
        cliques = len(alg.connected_components(s.punctured))
        if cliques != (s.order - 1) // (p - 1):
            witness["clique_count"] = cliques
    return True, not witness, witness or None


@_register("L2.3", "property",
           "digraph degrees of maximal-order elements, involutions as sinks of the punctured digraph, "
           "and sources exactly the involutions that are not proper powers",
           "nontrivial catalog groups")
@_per_group("L2.3", _nontrivial)
def _l23(s):
    g, d = s.group, s.directed
    orders = g.element_orders
    maximal = np.isin(orders, s.info.mu)
    phis = np.array([euler_phi(int(o)) for o in orders])
    witness: dict = {}
    bad = np.flatnonzero(maximal & ((d.out_degrees != orders - 1) | (d.in_degrees != phis - 1)))
    if bad.size:
        witness["maximal_degree_violation"] = int(bad[0])
    inv = np.flatnonzero(orders == 2)
    if (d.out_degrees[inv] != 1).any() or (s.directed_punctured.out_degrees[inv - 1] != 0).any():
        witness["involution_not_sink"] = int(inv[(d.out_degrees[inv] != 1)][0]) if (d.out_degrees[inv] != 1).any() else None
    # an involution is a proper power iff it is y^(o(y)/2) for some y of even order > 2
    rooted = {g.power(y, int(orders[y]) // 2) for y in range(g.order) if orders[y] > 2 and orders[y] % 2 == 0}
    predicted_sources = sorted(set(inv.tolist()) - rooted)
    observed_sources = np.flatnonzero(d.in_degrees == 0).tolist()
    if predicted_sources != observed_sources:
        witness["sources"] = {"predicted": predicted_sources, "observed": observed_sources}
    return True, not witness, witness or {"sources": observed_sources}


@_register("L2.4", "implication",
           "commuting elements, neither order dividing the other, lie in one component of P*(G)",
           "nontrivial catalog groups")
@_per_group("L2.4", _nontrivial)
def _l24(s):
    t, orders, comp = s.group.table, s.group.element_orders, s.component_ids
    o_i, o_j = orders[:, None], orders[None, :]
    hyp = (t == t.T) & (o_j % o_i != 0) & (o_i % o_j != 0)
    bad = hyp & (comp[:, None] != comp[None, :])
    pairs = int(np.triu(hyp, 1).sum())
    if bad.any():
        return True, False, {"pair": _pair(s, bad), "hypothesis_pairs": pairs}
    return True, True, {"hypothesis_pairs": pairs}


def _cyclic_generator(g: Group) -> int:
    return int(np.flatnonzero(g.element_orders == g.order)[0])


@_register("L2.5", "property",
           "cyclic-group degree formulas; the printed in-degree counts x^m itself",
           "cyclic catalog groups")
@_per_group("L2.5", _cyclic)
def _l25(s):
    g, n = s.group, s.order
    x = _cyclic_generator(g)
    d, und = s.directed, s.full
    for m in range(1, n + 1):
        e = g.power(x, m)
        d_plus, d_minus, d_und = gr.cyclic_degree_formula(n, m)
        seen = (int(d.out_degrees[e]), int(d.in_degrees[e]), int(und.degrees[e]))
        if (d_plus, d_minus, d_und) != seen or gr.printed_in_degree(n, m) - 1 != seen[1]:
            return True, False, {"m": m, "formula": [d_plus, d_minus, d_und], "observed": list(seen)}
    return True, True, None


@_register("C2.6", "property", "non-trivial elements of equal order have equal degree in P(G) of a cyclic group",
           "cyclic catalog groups")
@_per_group("C2.6", _cyclic)
def _c26(s):
    orders, deg = s.group.element_orders, s.full.degrees
    for o in np.unique(orders[1:]).tolist():
        ds = np.unique(deg[orders == o])
        if ds.size > 1:
            return True, False, {"order": o, "degrees": ds}
    return True, True, None


@_register("L2.7", "iff", "for a p-group, P*(G) is connected iff G has a unique subgroup of order p",
           "catalog groups of prime-power order")
@_per_group("L2.7", _p_group)
def _l27(s):
    p = s.info.pi[0]
    count = grp.count_order_p_subgroups(s.group, p)
    return count == 1, alg.is_connected(s.punctured), {"order_p_subgroups": count}


@_register("C2.8", "iff", "for a p-group, P*(G) is connected iff G is cyclic or generalized quaternion",
           "catalog groups of prime-power order")
@_per_group("C2.8", _p_group)
def _c28(s):
    cyc, quat = grp.is_cyclic(s.group), grp.is_generalized_quaternion(s.group)
    return cyc or quat, alg.is_connected(s.punctured), {"cyclic": cyc, "generalized_quaternion": quat}


@_register("L2.9", "iff",
           "P*(G) has a vertex joined to all others iff G is cyclic or a generalized quaternion 2-group",
           "nontrivial catalog groups")
@_per_group("L2.9", _nontrivial)
def _l29(s):
    g = s.group
    two_group = s.order & (s.order - 1) == 0
    predicted = grp.is_cyclic(g) or (two_group and grp.is_generalized_quaternion(g))
    universal = alg.universal_vertices(s.punctured)
    return predicted, bool(universal), {"universal": universal[:8]}


@_register("L2.10", "implication", "if Z(G) has order divisible by two primes then P*(G) is connected",
           "nontrivial catalog groups")
@_per_group("L2.10", _nontrivial)
def _l210(s):
    z_primes = prime_divisors(len(s.center)) if len(s.center) > 1 else []
    hyp = len(z_primes) >= 2
    connected = alg.is_connected(s.punctured)
    return hyp, hyp and connected, {"center_primes": z_primes, "connected": connected}


def _l211_scope(s: Subject) -> int | None:
    """The prime p when |pi(G)| >= 2 and Z(G) is a nontrivial p-group, else None."""
    z = len(s.center)
    if len(s.info.pi) < 2 or z == 1:
        return None
    zp = prime_divisors(z)
    return zp[0] if len(zp) == 1 else None


def _l211(subjects: list[Subject], max_order: int) -> list[TheoremInstance]:
    out = []
    for s in subjects:
        p = _l211_scope(s)
        if p is None:
            continue
        try:
            predicted, witness = _l211_criterion(s, p)
            observed = alg.is_connected(s.punctured)
        except Exception as exc:
            predicted, observed, witness = "no error", f"error: {type(exc).__name__}: {exc}", None
        out.append(TheoremInstance("L2.11", s.label, predicted, observed, witness))
    return out


def _l211_criterion(s: Subject, p: int) -> tuple[bool, dict]:
    g, orders, arcs = s.group, s.group.element_orders, s.directed.arcs
    p_elements = np.array([o == 1 or (is_prime_power(int(o)) and int(o) % p == 0) for o in orders])
    candidates = [x for x in np.flatnonzero(orders == p).tolist() if x not in s.center]
    for x in candidates:
        # a non-p-element adjacent to x must contain x among its powers
        if not (arcs[:, x] & ~p_elements).any():
            return False, {"p": p, "isolated_from_p_prime": x}
    return True, {"p": p, "checked": len(candidates)}


REGISTRY["L2.11"] = Theorem(
    "L2.11", "iff",
    "with Z(G) a p-group and |pi(G)| >= 2, P*(G) is connected iff every non-central element of order p "
    "is adjacent to some element whose order is not a power of p",
    "catalog groups with at least two prime divisors and center a nontrivial p-group",
    _l211,
)


@_register("L2.12", "implication", "if P*(G) is connected then the prime graph is connected",
           "nontrivial catalog groups")
@_per_group("L2.12", _nontrivial)
def _l212(s):
    hyp = alg.is_connected(s.punctured)
    prime_ok = alg.is_connected(gr.prime_graph(s.group))
    return hyp, hyp and prime_ok, {"prime_graph_connected": prime_ok}


@_register("L2.13", "implication", "P*(G) is a spanning subgraph of the commuting graph",
           "nontrivial catalog groups")
@_per_group("L2.13", _nontrivial)
def _l213(s):
    delta = gr.commuting_graph(s.group)
    extra = s.punctured.adj & ~delta.adj
    if extra.any():
        i, j = np.argwhere(extra)[0].tolist()
        return True, False, {"non_commuting_edge": [s.punctured.labels[i], s.punctured.labels[j]]}
    return True, True, None


# -- power-graph isomorphism keeps element-order statistics


def _l31(subjects: list[Subject], max_order: int) -> list[TheoremInstance]:
    by_order: dict[int, list[Subject]] = {}
    for s in subjects:
        if 1 < s.order <= alg.ISOMORPHISM_CAP:
            by_order.setdefault(s.order, []).append(s)
    out = []
    for n in sorted(by_order):
        for a, b in combinations(by_order[n], 2):
            label = f"{a.label}~{b.label}"
            try:
                res = alg.are_isomorphic(a.full, b.full)
                same_stats = grp.spectrum(a.group).s == grp.spectrum(b.group).s
                witness = {"isomorphic": res.isomorphic}
                if res.isomorphic:
                    witness["mapping_verified"] = alg.verify_isomorphism(a.full, b.full, res.mapping)
                out.append(TheoremInstance("L3.1", label, res.isomorphic, res.isomorphic and same_stats
                                           and witness.get("mapping_verified", True), witness))
            except Exception as exc:
                out.append(TheoremInstance("L3.1", label, "no error", f"error: {type(exc).__name__}: {exc}"))
    return out


REGISTRY["L3.1"] = Theorem(
    "L3.1", "implication", "isomorphic power graphs force equal numbers of elements of each order",
    "pairs of distinct catalog groups of equal order up to the isomorphism cap", _l31)


# -- strong regularity


@_register("T4.1", "iff", "P*(G) is strongly regular iff G is a p-group of exponent p or |G|",
           "nontrivial catalog groups")
@_per_group("T4.1", _nontrivial)
def _t41(s):
    g = s.group
    exp = grp.exponent(g)
    predicted = grp.is_p_group(g) and (is_prime(exp) or exp == s.order)
    try:
        params = alg.srg_parameters(s.punctured)
        return predicted, True, {"parameters": str(params)}
    except alg.NotStronglyRegular as exc:
        return predicted, False, {"reason": exc.reason, "pair": exc.pair}


# -- bipartite and planar


def _spectrum_within(s: Subject, allowed: set[int]) -> bool:
    return set(s.info.pi_e) <= allowed


@_register("T5.1", "iff", "P*(G) is bipartite iff every element order is 1, 2 or 3", "nontrivial catalog groups")
@_per_group("T5.1", _nontrivial)
def _t51(s):
    res = alg.is_bipartite(s.punctured)
    return _spectrum_within(s, {1, 2, 3}), res.bipartite, {"odd_cycle": res.odd_cycle} if not res.bipartite else None


@_register("T5.1-form", "property",
           "when every element order is 1, 2 or 3, P*(G) is isolated involutions plus one edge per order-3 subgroup",
           "nontrivial catalog groups with element orders in {1, 2, 3}")
@_per_group("T5.1-form", lambda s: _nontrivial(s) and _spectrum_within(s, {1, 2, 3}))
def _t51_form(s):
    orders = s.group.element_orders
    sizes = {}
    for comp in alg.connected_components(s.punctured):
        key = int(orders[comp[0]])
        if any(int(orders[v]) != key for v in comp) or len(comp) != key - 1:
            return True, False, {"component": comp}
        sizes[key] = sizes.get(key, 0) + 1
    expected = {k: v for k, v in {2: s.info.s.get(2, 0), 3: s.info.s.get(3, 0) // 2}.items() if v}
    ok = sizes == expected and s.punctured.edge_count == s.info.s.get(3, 0) // 2
    return True, ok, {"K1": sizes.get(2, 0), "K2": sizes.get(3, 0)}


@_register("C5.2", "iff", "P*(G) is a tree iff G has order 2 or 3", "nontrivial catalog groups")
@_per_group("C5.2", _nontrivial)
def _c52(s):
    return s.order in (2, 3), alg.is_tree(s.punctured), None


@_register("T5.3", "iff", "P*(G) is planar iff every element order is at most 6",
           "nontrivial catalog groups; outside the catalog the converse fails, e.g. Z6xZ6 and A4xZ2^2")
@_per_group("T5.3", _nontrivial)
def _t53(s):
    res = alg.is_planar(s.punctured)
    witness = {"faces": res.faces} if res.planar else res.kuratowski.to_json()
    return _spectrum_within(s, {1, 2, 3, 4, 5, 6}), res.planar, witness


@_register("T5.3-eppo", "property",
           "for groups whose elements all have prime-power order, P(G) is the union of its maximal cyclic "
           "subgroups, each a clique; they meet only at the identity iff maximal cyclic subgroups intersect trivially",
           "nontrivial catalog groups with every element of prime-power order")
@_per_group("T5.3-eppo", lambda s: _nontrivial(s) and grp.is_eppo(s.group))
def _t53_eppo(s):
    g = s.group
    cyclic = {grp.cyclic_subgroup(g, x) for x in range(1, g.order)}
    subgroups = sorted((h for h in cyclic if not any(h < k for k in cyclic)), key=sorted)
    trivial_meets = all(len(a & b) == 1 for a, b in combinations(subgroups, 2))
    covered = np.zeros_like(s.full.adj)
    cliques_ok = True
    for h in subgroups:
        idx = sorted(h)
        block = s.full.adj[np.ix_(idx, idx)]
        cliques_ok &= bool(block.sum() == len(idx) * (len(idx) - 1))
        covered[np.ix_(idx, idx)] = True
    union_ok = cliques_ok and not (s.full.adj & ~covered).any()
    components_are_cliques = all(
        s.punctured.adj[np.ix_(c, c)].sum() == len(c) * (len(c) - 1)
        for c in ([s.punctured.index[v] for v in comp] for comp in alg.connected_components(s.punctured))
    )
    predicted = {"union_of_maximal_cyclic_cliques": True, "meet_only_at_identity": trivial_meets}
    observed = {"union_of_maximal_cyclic_cliques": union_ok, "meet_only_at_identity": components_are_cliques}
    return predicted, observed, {"maximal_cyclic_subgroups": len(subgroups)}


# -- Eulerian


@_register("P6.1", "iff", "for cyclic G of order n, P*(G) is Eulerian iff n is a power of 2", "cyclic catalog groups")
@_per_group("P6.1", _cyclic)
def _p61(s):
    n = s.order
    odd = [v for v, d in zip(s.punctured.labels, s.punctured.degrees.tolist()) if d % 2]
    return n & (n - 1) == 0, alg.is_eulerian(s.punctured), {"odd_degree_vertices": odd[:8]}


# -- cut edges


@_register("T7.1", "iff",
           "an edge xy of P*(G) is a cut edge iff x has in- and out-degree 1 in the punctured digraph",
           "nontrivial catalog groups; predicted and observed are edge lists")
@_per_group("T7.1", _nontrivial)
def _t71(s):
    predicted = [list(e) for e in alg.cut_edge_criterion(s.group, s.directed_punctured)]
    observed = [list(e) for e in alg.find_bridges(s.punctured)]
    return predicted, observed, None


# -- edge counts


@_register("L8.1", "property", "2e* is the sum over non-identity g of 2o(g) - phi(o(g)) - 3",
           "nontrivial catalog groups; elementary abelian groups also checked against (p^m - 1)(p - 2)/2")
@_per_group("L8.1", _nontrivial)
def _l81(s):
    closed = gr.edge_count_closed_form(s.group)
    witness = None
    if grp.is_p_group(s.group) and grp.exponent(s.group) == s.info.pi[0]:
        p = s.info.pi[0]
        m = round(np.log(s.order) / np.log(p))
        witness = {"elementary_abelian_formula": gr.elementary_abelian_edge_count(p, m)} if s.group.is_abelian else None
        if witness and witness["elementary_abelian_formula"] != closed:
            return closed, None, witness
    return closed, s.punctured.edge_count, witness


@_register("C8.2", "property", "2e* is the sum over element orders n > 1 of s_n (2n - phi(n) - 3)",
           "nontrivial catalog groups")
@_per_group("C8.2", _nontrivial)
def _c82(s):
    return gr.edge_count_by_order_classes(s.info), s.punctured.edge_count, None


@_register("C8.3", "implication", "if P*(G) is bipartite then e* is half the number of elements of order 3",
           "nontrivial catalog groups")
@_per_group("C8.3", _nontrivial)
def _c83(s):
    hyp = alg.is_bipartite(s.punctured).bipartite
    half = s.info.s.get(3, 0) // 2
    return hyp, hyp and s.punctured.edge_count == half, {"edges": s.punctured.edge_count, "half_s3": half}


P84_PRIME_LIMIT = 13
P84_VALUE_LIMIT = 10**5


def p84_cases() -> list[tuple[int, int]]:
    cases = []
    for p in prime_divisors_upto(P84_PRIME_LIMIT):
        n = 1
        while p**n <= P84_VALUE_LIMIT:
            cases.append((p, n))
            n += 1
    return cases


def _p84(subjects: list[Subject], max_order: int) -> list[TheoremInstance]:
    out = []
    for p, n in p84_cases():
        lhs, rhs = phi_identity_sides(p, n)
        out.append(TheoremInstance("P8.4", f"p={p},n={n:02d}", rhs, lhs, None))
    return out


REGISTRY["P8.4"] = Theorem(
    "P8.4", "property", "sum_{i<=n} phi(p^i)(2p^i - phi(p^i) - 3) = 2 C(p^n - 1, 2)",
    f"primes p <= {P84_PRIME_LIMIT} with p^n <= {P84_VALUE_LIMIT}; independent of the catalog", _p84)


# -- worked examples


def _q4n_model(m: int) -> gr.UndirectedGraph:
    """K1 joined with (K_{2m-2} plus m disjoint K2)."""
    n = 4 * m - 1
    adj = np.zeros((n, n), dtype=bool)
    adj[0, 1:] = adj[1:, 0] = True
    big = list(range(1, 2 * m - 1))
    adj[np.ix_(big, big)] = True
    for k in range(m):
        a, b = 2 * m - 1 + 2 * k, 2 * m + 2 * k
        adj[a, b] = adj[b, a] = True
    np.fill_diagonal(adj, False)
    return gr.UndirectedGraph(tuple(range(n)), adj, gr.OTHER)


def verify_q4n_structure(m: int, punctured: gr.UndirectedGraph | None = None) -> TheoremInstance:
    """P*(Q_4m) = K1 v (K_{2m-2} + m K2) with the involution as the only degree-(4m-2) vertex.

    For m not a power of 2 the structure is predicted absent.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    g = grp.build_generalized_quaternion(m)
    graph = punctured if punctured is not None else gr.punctured_power_graph(g)
    predicted = m & (m - 1) == 0
    top = [v for v, d in zip(graph.labels, graph.degrees.tolist()) if d == 4 * m - 2]
    involution = g.power(1, m)  # x^m with x = index 1
    iso = alg.are_isomorphic(graph, _q4n_model(m))
    observed = iso.isomorphic and top == [involution]
    witness = {"top_degree_vertices": top, "involution": involution}
    if iso.isomorphic:
        witness["mapping"] = {str(k): v for k, v in sorted(iso.mapping.items(), key=lambda kv: repr(kv[0]))}
    return TheoremInstance("Q4N", g.label, predicted, observed, witness)


def _q4n(subjects: list[Subject], max_order: int) -> list[TheoremInstance]:
    overrides = {s.label: s._override for s in subjects if s._override is not None}
    out = []
    for m in range(2, max_order // 4 + 1):
        if 4 * m - 1 > alg.ISOMORPHISM_CAP:
            break
        try:
            out.append(verify_q4n_structure(m, overrides.get(f"Q{4 * m}")))
        except Exception as exc:
            out.append(TheoremInstance("Q4N", f"Q{4 * m}", "no error", f"error: {type(exc).__name__}: {exc}"))
    return out


REGISTRY["Q4N"] = Theorem(
    "Q4N", "iff", "P*(Q_4m) is K1 joined with K_{2m-2} and m copies of K2 iff m is a power of 2",
    "generalized quaternion groups Q_4m, 4m <= max_order", _q4n)


def verify_order27_pair(abelian: Group | None = None, heis: Group | None = None) -> TheoremInstance:
    """The elementary abelian group of order 27 and Heis(3) have isomorphic power graphs."""
    a = abelian or grp.build_elementary_abelian(3, 3)
    b = heis or grp.build_heisenberg(3)
    pa, pb = gr.build_undirected(a), gr.build_undirected(b)
    iso = alg.are_isomorphic(pa, pb)
    verified = iso.isomorphic and alg.verify_isomorphism(pa, pb, iso.mapping)
    stats = alg.order_statistics_equal(a, b)
    differ = a.is_abelian != b.is_abelian
    witness = {
        "mapping": {str(k): v for k, v in sorted(iso.mapping.items())} if iso.isomorphic else None,
        "degree_sequences_equal": sorted(pa.degrees.tolist()) == sorted(pb.degrees.tolist()),
        "abelian": [a.is_abelian, b.is_abelian],
    }
    return TheoremInstance("ORD27", f"{a.label}~{b.label}", True, bool(verified and stats and differ), witness)


def _ord27(subjects: list[Subject], max_order: int) -> list[TheoremInstance]:
    if max_order < 27:
        return []
    return [verify_order27_pair()]


REGISTRY["ORD27"] = Theorem(
    "ORD27", "property", "two non-isomorphic groups of order 27 with isomorphic power graphs",
    "the elementary abelian group of order 27 and Heis(3)", _ord27)


# ----------------------------------------------------------------------
# drivers


def verify(theorem_id: str, groups: Iterable[Group | Subject], max_order: int | None = None) -> list[TheoremInstance]:
    """Run one registered claim over the given groups."""
    if theorem_id not in REGISTRY:
        raise KeyError(f"unknown theorem id {theorem_id!r}")
    subjects = [_as_subject(g) for g in groups]
    if max_order is None:
        max_order = max((s.order for s in subjects), default=1)
    return REGISTRY[theorem_id].check(subjects, max_order)


def run_all(
    max_order: int,
    overrides: dict[str, gr.UndirectedGraph] | None = None,
    theorem_ids: Sequence[str] | None = None,
) -> TheoremReport:
    """Sweep every registered claim (or the chosen ones) over ``catalog(max_order)``.

    ``overrides`` maps a group label to a replacement P*(G), for mutation testing.
    """
    overrides = overrides or {}
    groups = catalog(max_order)
    unknown = set(overrides) - {g.label for g in groups}
    if unknown:
        raise KeyError(f"override labels not in the catalog: {sorted(unknown)}")
    subjects = [Subject(g, overrides.get(g.label)) for g in groups]
    ids = list(theorem_ids) if theorem_ids is not None else sorted(REGISTRY)
    instances: list[TheoremInstance] = []
    for tid in ids:
        instances.extend(verify(tid, subjects, max_order))
    return TheoremReport(max_order=max_order, catalog=[g.label for g in groups], instances=instances)
