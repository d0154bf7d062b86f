"""The 2<->2 move graph on minimal diagrams, with a brute-force oracle.

``enumerate_component`` closes the standard diagram of a matching under
2<->2 moves.  ``enumerate_connected_diagrams`` independently generates
every connected diagram with a given trace and crossing count by
recursive disk decomposition: the first boundary port of a sub-disk
either closes to another of its boundary ports (splitting the disk in
two) or feeds a fresh crossing whose remaining five legs join the
working boundary.  Planarity is built in, every crossing hangs off the
boundary circle, and duplicates are removed by canonical key.  The
generator never consults the move system, so comparing the two sides
genuinely checks the claim that 2<->2 moves connect all minimal
diagrams of a matching.
"""

from dataclasses import dataclass

from .diagram import TripleDiagram, is_source
from .standard import standard_diagram, minimal_crossing_count
from .moves import find_22_sites, apply_22, find_badgons

ORACLE_MAX_N = 4
ORACLE_MAX_CROSSINGS = 5


class GuardExceeded(ValueError):
    pass


@dataclass
class MoveGraph:
    root: str
    vertices: dict   # canonical key -> TripleDiagram
    edges: dict      # frozenset((key1, key2)) -> site face index

    def size(self):
        return len(self.vertices)


def enumerate_component(matching, strategy="inclusion"):
    """BFS closure of the standard diagram under 2<->2 moves."""
    root = standard_diagram(matching, strategy)
    rk = root.canonical_key()
    vertices = {rk: root}
    edges = {}
    frontier = [root]
    while frontier:
        nxt = []
        for d in frontier:
            dk = d.canonical_key()
            for site in find_22_sites(d):
                nd = apply_22(d, site)
                nk = nd.canonical_key()
                pair = frozenset((dk, nk))
                if pair not in edges:
                    edges[pair] = d.face_by_key(site.face_key).index
                if nk not in vertices:
                    vertices[nk] = nd
                    nxt.append(nd)
        frontier = nxt
    return MoveGraph(rk, vertices, edges)


def walk_fillings(n, crossings, emit, want=None):
    """Stream every planar filling of the disk to ``emit(edges, ncross)``.

    The recursion closes the first open boundary port against a later
    one (splitting the disk; both ports real) or feeds it into a fresh
    crossing whose other five legs join the working boundary.  Every
    crossing therefore hangs off the boundary circle and the result is
    planar and connected by construction.  ``want`` (a matching dict)
    prunes boundary-to-boundary chords early.
    """
    edges = []

    def run(items, next_id):
        # items: pending (sub-boundary, exact budget) regions
        while items and not items[0][0]:
            if items[0][1] != 0:
                return
            items = items[1:]
        if not items:
            emit(edges, next_id)
            return
        while items and not items[0][0]:
            if items[0][1] != 0:
                return
            items = items[1:]
        boundary, budget = items[0]
        tail = items[1:]
        p0 = boundary[0]
        rest = boundary[1:]
        for j in range(0, len(rest), 2):
            pj = rest[j]
            if p0[0] == 'b' and pj[0] == 'b' and want is not None:
                i, o = (p0[1], pj[1]) if p0[1] % 2 == 0 else (pj[1], p0[1])
                if want.get(i) != o:
                    continue
            edges.append((p0, pj))
            left, right = rest[:j], rest[j + 1:]
            for b1 in range(budget + 1):
                run(((left, b1), (right, budget - b1)) + tail, next_id)
            edges.pop()
        if budget >= 1:
            c = next_id
            s = 0 if is_source(p0) else 1
            legs = tuple(('c', c, (s + k) % 6) for k in (5, 4, 3, 2, 1))
            edges.append((p0, ('c', c, s)))
            run(((legs + rest, budget - 1),) + tail, next_id + 1)
            edges.pop()

    run(((tuple(('b', i) for i in range(2 * n)), crossings),), 0)


def enumerate_connected_diagrams(matching, crossings, allow_closed=True):
    """All connected diagrams with the given trace and crossing count.

    Returns {canonical key: diagram}.  With ``allow_closed`` false,
    diagrams containing closed strands are dropped.
    """
    n = matching.n
    want = matching.as_dict()
    results = {}

    def emit(edges, ncross):
        d = TripleDiagram.from_edge_list(n, range(ncross), list(edges))
        traced, loops = d.trace()
        if traced.as_dict() != want:
            return
        if loops and not allow_closed:
            return
        if d.validate():
            return
        results.setdefault(d.canonical_key(), d)

    walk_fillings(n, crossings, emit, want)
    return results


def brute_force_minimal(matching, guard=True):
    """Canonical keys of all minimal diagrams with the given matching."""
    k = minimal_crossing_count(matching)
    if guard and (matching.n > ORACLE_MAX_N or k > ORACLE_MAX_CROSSINGS):
        raise GuardExceeded("oracle guard: n <= %d and count <= %d"
                            % (ORACLE_MAX_N, ORACLE_MAX_CROSSINGS))
    found = enumerate_connected_diagrams(matching, k)
    return {key for key, d in found.items() if not find_badgons(d)}


def verify_theorem2(matching, strategy="inclusion"):
    """Compare the move-graph component against the brute-force oracle."""
    component = enumerate_component(matching, strategy)
    oracle = brute_force_minimal(matching)
    return {
        "component_size": component.size(),
        "oracle_size": len(oracle),
        "equal": set(component.vertices) == oracle,
    }
