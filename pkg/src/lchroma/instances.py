"""Instance generators: seeded random collections, interval embeddings, and
the four separation gadget graphs (with an explicit flat representation for
the cycle-with-triples gadget).

Randomness comes from splitmix64 so that digests are reproducible across
languages: state advances by 0x9E3779B97F4A7C15 and each output is mixed with
the constants 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB and xor-shifts 30/27/31.
"""

from __future__ import annotations

from .errors import InputError, RepresentationMismatch, SharedEndpoint
from .geometry import LCollection, LShape, validate_collection
from .graph import IntersectionGraph, build_intersection_graph, graph_from_edges

_MASK = (1 << 64) - 1


class SplitMix64:
    """Deterministic 64-bit generator used by all profiles."""

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next() % bound

    def in_range(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in [lo, hi]."""
        return lo + self.below(hi - lo + 1)


def _draw_distinct(rng: SplitMix64, bound: int, count: int, taken: set) -> list[int]:
    out = []
    while len(out) < count:
        v = rng.below(bound)
        if v not in taken:
            taken.add(v)
            out.append(v)
    return out


def _shape_ids(n: int) -> list[str]:
    width = max(2, len(str(n - 1)) if n else 2)
    return [f"L{str(i).zfill(width)}" for i in range(n)]


PROFILES = ("uniform", "flat", "dense")


def random_collection(n: int, seed: int, profile: str = "uniform") -> LCollection:
    """Deterministic random collection of n shapes.

    uniform: left endpoints spread over [0, 12n), widths in [1, 24], heights
    in [1, 8n]; endpoint collisions are re-drawn.  flat: same coordinates,
    but heights are re-assigned in projection-width order so every nested
    pair is lower inside, making the collection flat.  dense: the sorted 2n
    endpoint values are paired first-half to second-half so all projections
    overlap a common middle window.
    """
    if profile not in PROFILES:
        raise InputError(f"unknown profile {profile!r}; pick one of {PROFILES}")
    if n == 0:
        return validate_collection([])
    rng = SplitMix64(seed)
    ids = _shape_ids(n)
    span = 12 * n + 16

    if profile == "dense":
        taken: set = set()
        values = sorted(_draw_distinct(rng, span, 2 * n, taken))
        heights_taken: set = set()
        heights = _draw_distinct(rng, 8 * n, n, heights_taken)
        shapes = [
            LShape(id=ids[i], left=values[i], right=values[i + n], height=heights[i] + 1)
            for i in range(n)
        ]
        return validate_collection(shapes)

    taken = set()
    lefts = []
    rights = []
    for _ in range(n):
        while True:
            l = rng.below(span)
            w = rng.in_range(1, 24)
            if l not in taken and (l + w) not in taken and l != l + w:
                taken.add(l)
                taken.add(l + w)
                lefts.append(l)
                rights.append(l + w)
                break
    heights_taken: set = set()
    heights = [h + 1 for h in _draw_distinct(rng, 8 * n, n, heights_taken)]

    if profile == "flat":
        order = sorted(range(n), key=lambda i: (rights[i] - lefts[i], lefts[i]))
        sorted_heights = sorted(heights)
        assigned = [0] * n
        for rank, i in enumerate(order):
            assigned[i] = sorted_heights[rank]
        heights = assigned

    shapes = [
        LShape(id=ids[i], left=lefts[i], right=rights[i], height=heights[i])
        for i in range(n)
    ]
    collection = validate_collection(shapes)
    if profile == "flat":
        assert collection.flat
    return collection


def _check_interval_endpoints(intervals) -> list[tuple]:
    intervals = [(a, b) for a, b in intervals]
    seen: dict = {}
    for a, b in intervals:
        if not a < b:
            raise InputError(f"interval ({a}, {b}) is empty")
        for v in (a, b):
            if v in seen:
                raise SharedEndpoint(f"endpoint {v} used twice")
            seen[v] = True
    return intervals


def overlap_intervals_to_lshapes(intervals) -> LCollection:
    """Shapes whose intersection graph is the overlap graph of the intervals.

    Interval (a, b) becomes the shape (left=a, right=b) with height growing
    with b: a later-starting overlapping interval ends higher, so its
    vertical crosses the earlier one's horizontal; nested or disjoint pairs
    never cross.
    """
    intervals = _check_interval_endpoints(intervals)
    if not intervals:
        return validate_collection([])
    shift = min(v for ab in intervals for v in ab)
    shapes = [
        LShape(id=f"I{idx:02d}", left=a, right=b, height=b - shift + 1)
        for idx, (a, b) in enumerate(intervals)
    ]
    return validate_collection(shapes)


def interval_graph_to_lshapes(intervals) -> LCollection:
    """Shapes whose intersection graph is the interval intersection graph.

    Heights increase with the left endpoint, so of two intersecting
    intervals the later-starting shape rises through the earlier one's
    horizontal.
    """
    intervals = _check_interval_endpoints(intervals)
    order = sorted(range(len(intervals)), key=lambda i: intervals[i][0])
    rank = {i: pos for pos, i in enumerate(order)}
    shapes = [
        LShape(id=f"I{idx:02d}", left=a, right=b, height=rank[idx] + 1)
        for idx, (a, b) in enumerate(intervals)
    ]
    return validate_collection(shapes)


GADGETS = ("if-not-pc", "gl-not-if", "ml-not-if", "pc-not-o1s")


def _cycle_with_apexes(block: int, apex_rule) -> IntersectionGraph:
    """Two blocks of cycle vertices v{i}_{j} plus apex pairs a{i}, b{i}."""
    vertices = []
    edges = []
    cycle = [f"v{i}_{j}" for i in (1, 2) for j in range(block)]
    vertices.extend(cycle)
    for idx, v in enumerate(cycle):
        edges.append((v, cycle[(idx + 1) % len(cycle)]))
    for i in (1, 2):
        a, b = f"a{i}", f"b{i}"
        vertices.extend([a, b])
        edges.append((a, b))
        for v, targets in apex_rule.items():
            for j in targets:
                edges.append((f"{v}{i}", f"v{i}_{j}"))
    return graph_from_edges(vertices, edges)


def gadget_graph(which: str, n: int | None = None) -> IntersectionGraph:
    """Adjacency of one of the four separation gadgets.

    gl-not-if takes the cycle parameter n >= 3: a cycle of 2n vertices v0,
    e0, v1, e1, ... plus one triple vertex t{i} adjacent to v{i}, v{i+1},
    v{i+2} for each i in 1..n-1 (indices mod n; t0 is intentionally absent).
    """
    if which == "if-not-pc":
        return _cycle_with_apexes(13, {"a": (1, 7), "b": (3, 5)})
    if which == "ml-not-if":
        return _cycle_with_apexes(11, {"a": (1, 2), "b": (4, 5)})
    if which == "pc-not-o1s":
        cycle = [f"v{i}_{j}" for i in range(5) for j in range(6)]
        edges = [(cycle[idx], cycle[(idx + 1) % 30]) for idx in range(30)]
        edges.append(("a", "b"))
        for i in range(5):
            edges.append(("a", f"v{i}_0"))
            edges.append(("a", f"v{i}_4"))
            edges.append(("b", f"v{i}_2"))
        return graph_from_edges(cycle + ["a", "b"], edges)
    if which == "gl-not-if":
        if n is None or n < 3:
            raise InputError("gl-not-if requires a cycle parameter n >= 3")
        vertices = [f"v{i}" for i in range(n)] + [f"e{i}" for i in range(n)]
        vertices += [f"t{i}" for i in range(1, n)]
        edges = []
        for i in range(n):
            edges.append((f"v{i}", f"e{i}"))
            edges.append((f"e{i}", f"v{(i + 1) % n}"))
        for i in range(1, n):
            for d in range(3):
                edges.append((f"t{i}", f"v{(i + d) % n}"))
        return graph_from_edges(vertices, edges)
    raise InputError(f"unknown gadget {which!r}; pick one of {GADGETS}")


def gadget_gl_representation(n: int) -> LCollection:
    """Explicit flat collection whose intersection graph is gl-not-if(n).

    Layout ("comb"): the cycle vertices become stairs of descending height
    placed left to right in the order v1, v2, ..., v{n-1}, v0; the first
    stair keeps a horizontal running past everything.  Cycle-edge and triple
    vertices become low wide shapes whose horizontals are crossed by exactly
    the stair verticals they must meet; the two relations that wrap around
    the seam (e0 and t{n-1}) become tall spikes at the far right, piercing
    the stairs whose horizontals still reach them.  Correctness is verified
    by graph comparison, never assumed.
    """
    if n < 3:
        raise InputError("gadget requires n >= 3")
    shapes = []

    def stair_position(k: int) -> str:
        # stair k (1-based) carries v_k, except the last stair carries v_0
        return f"v{k}" if k <= n - 1 else "v0"

    for k in range(1, n + 1):
        left = 100 * k + 30
        height = 3000 - 100 * k
        if k == 1:
            right = 100 * (n + 2) + 10  # spans everything, up to the seam spikes
        elif k == n - 1:
            right = 100 * (n + 1) + 20
        elif k == n:
            right = 100 * (n + 1) + 40
        else:
            right = 100 * (k + 2) + 60
        shapes.append(LShape(id=stair_position(k), left=left, right=right, height=height))

    # cycle links e_i (i=1..n-1) span the stairs at positions i and i+1
    for i in range(1, n):
        shapes.append(
            LShape(
                id=f"e{i}",
                left=100 * i + 20,
                right=100 * (i + 1) + 40,
                height=2780 - 100 * i,
            )
        )
    # triples t_i (i=1..n-2) span the stairs at positions i, i+1, i+2
    for i in range(1, n - 1):
        shapes.append(
            LShape(
                id=f"t{i}",
                left=100 * i + 10,
                right=100 * (i + 2) + 50,
                height=2790 - 100 * i,
            )
        )
    # seam spikes: e0 reaches v0 and v1; t{n-1} reaches v{n-1}, v0 and v1
    shapes.append(
        LShape(
            id=f"t{n - 1}",
            left=100 * (n + 1) + 10,
            right=100 * (n + 2) + 20,
            height=5000,
        )
    )
    shapes.append(
        LShape(
            id="e0",
            left=100 * (n + 1) + 30,
            right=100 * (n + 2) + 30,
            height=4900,
        )
    )

    collection = validate_collection(shapes)
    expected = gadget_graph("gl-not-if", n)
    actual = build_intersection_graph(collection)
    if actual.ids != expected.ids or actual.adj != expected.adj:
        got = set(map(tuple, actual.to_edge_list()["edges"]))
        want = set(map(tuple, expected.to_edge_list()["edges"]))
        raise RepresentationMismatch(
            f"n={n}: spurious={sorted(got - want)} missing={sorted(want - got)}"
        )
    if not collection.flat:
        raise RepresentationMismatch(f"n={n}: representation is not flat")
    return collection
