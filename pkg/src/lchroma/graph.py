"""Intersection graphs, small exact oracles, and permutation-graph coloring."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError, LimitExceeded
from .geometry import LCollection, intersects


@dataclass(frozen=True)
class IntersectionGraph:
    """Undirected graph on shape ids, stored as bitmask adjacency rows."""

    ids: tuple[str, ...]
    adj: tuple[int, ...]  # adj[i] bit j set iff ids[i] ~ ids[j]

    @property
    def n(self) -> int:
        return len(self.ids)

    def index(self, shape_id: str) -> int:
        return self.ids.index(shape_id)

    def has_edge(self, a: str, b: str) -> bool:
        i, j = self.index(a), self.index(b)
        return bool(self.adj[i] >> j & 1)

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(row.bit_count() for row in self.adj))

    def edges(self):
        for i in range(self.n):
            row = self.adj[i] >> (i + 1) << (i + 1)
            while row:
                j = (row & -row).bit_length() - 1
                yield (self.ids[i], self.ids[j])
                row &= row - 1

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def subgraph(self, keep_ids) -> "IntersectionGraph":
        keep = [i for i, v in enumerate(self.ids) if v in set(keep_ids)]
        pos = {old: new for new, old in enumerate(keep)}
        rows = []
        for old in keep:
            row = 0
            for other in keep:
                if self.adj[old] >> other & 1:
                    row |= 1 << pos[other]
            rows.append(row)
        return IntersectionGraph(ids=tuple(self.ids[i] for i in keep), adj=tuple(rows))

    def to_edge_list(self) -> dict:
        return {"vertices": list(self.ids), "edges": [list(e) for e in self.edges()]}


def graph_from_edges(vertices, edges) -> IntersectionGraph:
    ids = tuple(sorted(str(v) for v in vertices))
    pos = {v: i for i, v in enumerate(ids)}
    rows = [0] * len(ids)
    for a, b in edges:
        a, b = str(a), str(b)
        if a == b:
            raise InputError(f"self-loop on {a!r}")
        i, j = pos[a], pos[b]
        rows[i] |= 1 << j
        rows[j] |= 1 << i
    return IntersectionGraph(ids=ids, adj=tuple(rows))


def build_intersection_graph(collection: LCollection) -> IntersectionGraph:
    """Pairwise-scan intersection graph; vertex order is sorted ids, so the
    result does not depend on the input order of the shapes."""
    ids = tuple(sorted(s.id for s in collection.shapes))
    shape = {s.id: s for s in collection.shapes}
    n = len(ids)
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if intersects(shape[ids[i]], shape[ids[j]]):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return IntersectionGraph(ids=ids, adj=tuple(rows))


def _greedy_color_order(masks, candidates: int):
    """Greedy coloring of the candidate set; returns (vertex, bound) pairs in
    the branching order used by the clique search."""
    order = []
    color = 0
    rest = candidates
    while rest:
        color += 1
        avail = rest
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= avail - 1
            avail &= ~masks[v]
            rest &= ~(1 << v)
            order.append((v, color))
    return order


def clique_number(graph: IntersectionGraph, limit: int = 500, node_budget: int = 5_000_000):
    """Exact maximum clique via branch and bound with greedy-coloring bounds.

    Returns (omega, witness_ids).  Raises LimitExceeded for graphs larger than
    `limit` vertices or when the search exceeds its node budget.
    """
    n = graph.n
    if n > limit:
        raise LimitExceeded(f"clique oracle limited to {limit} vertices, got {n}")
    if n == 0:
        return 0, []
    masks = list(graph.adj)
    best_mask = 1 << max(range(n), key=lambda i: masks[i].bit_count())
    best_size = 1
    nodes = 0

    def expand(current: int, size: int, candidates: int):
        nonlocal best_mask, best_size, nodes
        nodes += 1
        if nodes > node_budget:
            raise LimitExceeded("clique search budget exhausted")
        order = _greedy_color_order(masks, candidates)
        for v, bound in reversed(order):
            if size + bound <= best_size:
                return
            bit = 1 << v
            new_cand = candidates & masks[v]
            if size + 1 + new_cand.bit_count() > best_size:
                if size + 1 > best_size:
                    best_size = size + 1
                    best_mask = current | bit
                if new_cand:
                    expand(current | bit, size + 1, new_cand)
            candidates &= ~bit

    expand(0, 0, (1 << n) - 1)
    witness = [graph.ids[i] for i in range(n) if best_mask >> i & 1]
    return best_size, sorted(witness)


def chromatic_number_exact(graph: IntersectionGraph, limit: int = 16) -> int:
    """Exact chromatic number for small graphs: clique lower bound, then
    iterative deepening with a backtracking k-colorability test."""
    n = graph.n
    if n > limit:
        raise LimitExceeded(f"chromatic oracle limited to {limit} vertices, got {n}")
    if n == 0:
        return 0
    masks = list(graph.adj)
    lb, _ = clique_number(graph)
    order = sorted(range(n), key=lambda i: -masks[i].bit_count())

    def colorable(k: int) -> bool:
        colors = [0] * n

        def place(pos: int, used: int) -> bool:
            if pos == n:
                return True
            v = order[pos]
            forbidden = 0
            row = masks[v]
            while row:
                u = (row & -row).bit_length() - 1
                row &= row - 1
                if colors[u]:
                    forbidden |= 1 << colors[u]
            for c in range(1, min(k, used + 1) + 1):
                if forbidden >> c & 1:
                    continue
                colors[v] = c
                if place(pos + 1, max(used, c)):
                    return True
                colors[v] = 0
            return False

        return place(0, 0)

    k = lb
    while not colorable(k):
        k += 1
    return k


@dataclass(frozen=True)
class PermutationInstance:
    """Two total orders over one element set; elements are adjacent iff their
    relative order differs between the two."""

    elements: tuple[str, ...]
    order1: tuple[str, ...]
    order2: tuple[str, ...]

    def __post_init__(self):
        base = set(self.elements)
        if set(self.order1) != base or set(self.order2) != base:
            raise InputError("order1/order2 must be permutations of the element set")
        if len(self.order1) != len(base) or len(self.order2) != len(base):
            raise InputError("orders contain repeats")

    def __len__(self):
        return len(self.elements)

    def adjacent(self, a: str, b: str) -> bool:
        if a == b:
            return False
        p1 = {e: i for i, e in enumerate(self.order1)}
        p2 = {e: i for i, e in enumerate(self.order2)}
        return (p1[a] < p1[b]) != (p2[a] < p2[b])

    def to_graph(self) -> IntersectionGraph:
        edges = [
            (a, b)
            for i, a in enumerate(self.elements)
            for b in self.elements[i + 1 :]
            if self.adjacent(a, b)
        ]
        return graph_from_edges(self.elements, edges)


def color_permutation_graph(inst: PermutationInstance):
    """Optimal proper coloring of a permutation graph.

    Elements are scanned in order1; each goes to the first class whose last
    member precedes it in order2 as well (patience piles of mutually
    compatible elements).  The class count equals the longest chain that is
    increasing in order1 and decreasing in order2, which is the clique number,
    so the coloring is optimal.  Returns (color_of, clique_size).
    """
    pos2 = {e: i for i, e in enumerate(inst.order2)}
    piles: list[int] = []  # pos2 of each pile's last element, strictly decreasing
    color_of: dict[str, int] = {}
    for e in inst.order1:
        p = pos2[e]
        lo, hi = 0, len(piles)
        while lo < hi:  # leftmost pile whose top precedes e in order2
            mid = (lo + hi) // 2
            if piles[mid] < p:
                hi = mid
            else:
                lo = mid + 1
        if lo == len(piles):
            piles.append(p)
        else:
            piles[lo] = p
        color_of[e] = lo + 1
    return color_of, len(piles)
