"""Breadth-first exploration of the tau-tilting exchange graph."""
from __future__ import annotations

import json
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from sympy import QQ

from .algebra import Algebra
from .errors import IncompleteGraph, NoContainingNode
from .fields import fraction_str
from .linalg import determinant
from .modules import fac_contains
from .tilting import TauPair, check_pair, is_tau_tilting, mutate, new_slot

Key = tuple


@dataclass(frozen=True)
class Edge:
    a: Key
    b: Key
    slot_a: int
    slot_b: int


@dataclass
class ExchangeGraph:
    algebra: Algebra
    nodes: dict[Key, TauPair] = field(default_factory=dict)
    edges: list[Edge] = field(default_factory=list)
    explored: dict[Key, set] = field(default_factory=dict)
    complete: bool = False

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def frontier(self) -> list[Key]:
        return [k for k in self.nodes if len(self.explored.get(k, ())) < self.n]

    def neighbours(self, key: Key) -> list[Key]:
        out = []
        for e in self.edges:
            if e.a == key:
                out.append(e.b)
            elif e.b == key:
                out.append(e.a)
        return out

    def adjacency(self) -> dict[Key, list[Key]]:
        adj = {k: [] for k in self.nodes}
        for e in self.edges:
            adj[e.a].append(e.b)
            adj[e.b].append(e.a)
        return adj

    def degree(self, key: Key) -> int:
        return sum((e.a == key) + (e.b == key) for e in self.edges)

    def edge_set(self) -> set[frozenset]:
        return {frozenset((e.a, e.b)) for e in self.edges}

    def add_node(self, p: TauPair) -> None:
        self.nodes.setdefault(p.key, p)
        self.explored.setdefault(p.key, set())


def explore(start: TauPair, budget: int | None = None, *, threads: int = 1) -> ExchangeGraph:
    """Breadth-first closure under mutation, stopping at ``budget`` nodes.

    Mutations of one breadth-first layer may run on several threads; the
    results are merged in (node, slot) order so the graph does not depend on
    the thread count."""
    if budget is not None and budget < 1:
        raise ValueError("budget must be at least 1")
    A = start.algebra
    if not is_tau_tilting(start):
        raise ValueError("exploration needs a tau-tilting start pair")
    g = ExchangeGraph(A)
    g.add_node(start)
    seen_edges: set = set()
    layer = [start.key]
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        while layer:
            jobs = [(k, s) for k in layer for s in range(A.n) if s not in g.explored[k]]
            if pool is not None:
                results = list(pool.map(lambda ks: mutate(g.nodes[ks[0]], ks[1]), jobs))
            else:
                results = [mutate(g.nodes[k], s) for k, s in jobs]
            nxt = []
            for (k, s), q in zip(jobs, results):
                if q.key not in g.nodes:
                    if budget is not None and len(g.nodes) >= budget:
                        g.complete = False
                        return g
                    g.add_node(q)
                    nxt.append(q.key)
                t = new_slot(g.nodes[k], q)
                g.explored[k].add(s)
                g.explored[q.key].add(t)
                e = frozenset(((k, s), (q.key, t)))
                if e not in seen_edges:
                    seen_edges.add(e)
                    g.edges.append(Edge(k, q.key, s, t))
            layer = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    g.complete = True
    return g


def is_connected(g: ExchangeGraph) -> bool:
    if not g.nodes:
        return True
    adj = g.adjacency()
    first = next(iter(g.nodes))
    seen = {first}
    queue = deque([first])
    while queue:
        k = queue.popleft()
        for m in adj[k]:
            if m not in seen:
                seen.add(m)
                queue.append(m)
    return len(seen) == len(g.nodes)


def _as_key(x) -> Key:
    return x.key if isinstance(x, TauPair) else tuple(x)


def path_in_subgraph(g: ExchangeGraph, start, end, shared) -> list[Key] | None:
    """Shortest path from start to end through nodes containing every summand of ``shared``.

    Returns the list of node keys (just ``[start]`` when start = end) or None."""
    if not g.complete:
        raise IncompleteGraph("path search needs a complete graph")
    a, b = _as_key(start), _as_key(end)
    need = set(_as_key(shared))
    ok = {k for k in g.nodes if need <= set(k)}
    if a not in ok or b not in ok:
        return None
    adj = g.adjacency()
    prev = {a: None}
    queue = deque([a])
    while queue:
        k = queue.popleft()
        if k == b:
            path = []
            while k is not None:
                path.append(k)
                k = prev[k]
            return path[::-1]
        for m in adj[k]:
            if m in ok and m not in prev:
                prev[m] = k
                queue.append(m)
    return None


def containing_nodes(g: ExchangeGraph, u: TauPair) -> list[Key]:
    return [k for k in g.nodes if set(u.key) <= set(k)]


def fac_maximal_completion(g: ExchangeGraph, u: TauPair) -> TauPair:
    """The node containing u whose module part generates the largest torsion class."""
    if not g.complete:
        raise IncompleteGraph("completion search needs a complete graph")
    check_pair(u)
    keys = containing_nodes(g, u)
    if not keys:
        raise NoContainingNode("no explored node contains the given pair")
    for k in keys:
        T = g.nodes[k].module_part()
        if all(fac_contains(T, g.nodes[m].module_part()) for m in keys if m != k):
            return g.nodes[k]
    raise NoContainingNode("no Fac-maximal node among the containing nodes")


# invariants ------------------------------------------------------------------

def g_matrix_determinant(p: TauPair) -> int:
    return int(determinant([list(s.g) for s in p.summands], QQ))


def regularity_violations(g: ExchangeGraph) -> list[Key]:
    return [k for k in g.nodes if g.degree(k) != g.n]


def involution_violations(g: ExchangeGraph) -> list[tuple[Key, int]]:
    out = []
    for k, p in g.nodes.items():
        for s in range(g.n):
            q = mutate(p, s)
            back = mutate(q, new_slot(p, q))
            if back.key != k:
                out.append((k, s))
    return out


# export ------------------------------------------------------------------

def _node_record(g: ExchangeGraph, k: Key, idx: int) -> dict:
    p = g.nodes[k]
    labels = g.algebra.quiver.vertices
    return {
        "id": idx,
        "key": [list(v) for v in k],
        "g_vectors": [list(s.g) for s in p.summands],
        "dim_vectors": [list(s.module.dims) for s in p.summands if not s.is_shifted],
        "support_projectives": sorted(labels[v] for v in p.projectives),
        "determinant": fraction_str(g_matrix_determinant(p)),
    }


def graph_to_json_dict(g: ExchangeGraph) -> dict:
    ids = {k: i for i, k in enumerate(g.nodes)}
    return {
        "nodes": [_node_record(g, k, ids[k]) for k in g.nodes],
        "edges": [{"a": ids[e.a], "b": ids[e.b], "slot_a": e.slot_a, "slot_b": e.slot_b}
                  for e in g.edges],
        "complete": g.complete,
        "node_count": len(g.nodes),
        "edge_count": len(g.edges),
    }


def graph_to_json(g: ExchangeGraph) -> str:
    return json.dumps(graph_to_json_dict(g), sort_keys=True, indent=1)


def graph_to_dot(g: ExchangeGraph) -> str:
    ids = {k: i for i, k in enumerate(g.nodes)}
    lines = ["graph exchange {"]
    for k, i in ids.items():
        label = "\\n".join(" ".join(str(x) for x in v) for v in k)
        lines.append(f'  n{i} [label="{label}"];')
    for e in g.edges:
        lines.append(f'  n{ids[e.a]} -- n{ids[e.b]} [label="{e.slot_a}/{e.slot_b}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
