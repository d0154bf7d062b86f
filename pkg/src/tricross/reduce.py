"""Reduction to standard form with a verifiable move log.

The reducer straightens strands along minimal intervals, innermost
first, exactly mirroring the standard construction: a frontier of
anchor ports (real endpoints, later the upper legs of frozen crossings)
carries persistent position keys, the same interval selector picks the
next pair, and a worker makes that strand boundary-parallel inside the
sub-diagram spanned by the not-yet-frozen crossings.  Because both
pipelines share keys and selector, reducing any diagram reproduces the
standard diagram of its matching up to canonical relabeling.

The worker loops over a fixed priority:

  0. drop free loops, dissolve floating components;
  1. done when the strand is boundary-parallel;
  2. fire any empty monogon (a 1->0 move, strictly fewer crossings);
  3. a self-intersecting strand: take its first-revisit loop - the
     petal then hugs an empty corner of the revisited crossing - clear
     the petal's interior by recursion, leaving an empty monogon;
  4. a strand crossing S twice: straighten its innermost under-piece by
     recursion, then search (breadth-first over 2<->2 moves confined to
     the window of involved crossings) for a state that either drops
     the double crossing or exposes an empty monogon;
  5. comb: search the window of S plus everything under it for a state
     lowering (crossings under S, detours of the hanging strands).

Every sequence found by the window searches is 2<->2-only, so the
crossing count never increases between the explicit 1->0 steps.
"""

from .diagram import TripleDiagram, is_source
from .standard import standard_diagram, select_interval, STRATEGIES
from .moves import (Move, MoveError, find_22_sites,
                    find_10_sites, move_22, apply_move, make_log, is_minimal)


class ReductionError(RuntimeError):
    """The reducer could not make progress (unsupported interlocking)."""


# ----------------------------------------------------------------------
# crossing-set regions

def region_legs(diagram, crossings):
    """Cut edges of a crossing-set region, in boundary cyclic order.

    Returns a list of (inner_port, outer_port) pairs walking the
    region's frontier counterclockwise.  Raises if the cuts do not form
    a single circle (the set is not a disk-like region).
    """
    cs = set(crossings)
    cuts = []
    for p, q in diagram.edge_list():
        pin = p[0] == 'c' and p[1] in cs
        qin = q[0] == 'c' and q[1] in cs
        if pin and not qin:
            cuts.append(p)
        elif qin and not pin:
            cuts.append(q)
    if not cuts:
        raise ReductionError("region has no frontier")

    def next_cut(port):
        d = ('c', port[1], (port[2] - 1) % 6)
        while True:
            q = diagram.edges[d]
            if q[0] == 'c' and q[1] in cs:
                d = ('c', q[1], (q[2] - 1) % 6)
            else:
                return d

    start = min(cuts)
    order = [start]
    cur = next_cut(start)
    while cur != start:
        order.append(cur)
        cur = next_cut(cur)
    if len(order) != len(cuts):
        raise ReductionError("region frontier is not a single circle")
    order.reverse()  # the walk runs clockwise; boundary order is ccw
    # rotate so index 0 is an in-leg (inner port is a sink)
    ins = [i for i, p in enumerate(order) if not is_source(p)]
    if not ins:
        raise ReductionError("region frontier has no in-leg")
    best = min(ins, key=lambda i: order[i])
    order = order[best:] + order[:best]
    return [(p, diagram.edges[p]) for p in order]


def extract_region(diagram, crossings):
    """Build the standalone sub-diagram of a crossing-set region.

    Returns (sub, legs) where legs[i] is the (inner, outer) cut pair for
    sub boundary endpoint i.  Crossing ids and slots are preserved, so
    2<->2 and 1->0 moves found in the sub apply verbatim to the parent.
    """
    legs = region_legs(diagram, crossings)
    cs = set(crossings)
    edges = []
    for i, (inner, outer) in enumerate(legs):
        if (i % 2 == 0) == is_source(inner):
            raise ReductionError("region legs do not alternate")
        edges.append((('b', i), inner))
    for p, q in diagram.edge_list():
        if p[0] == 'c' and p[1] in cs and q[0] == 'c' and q[1] in cs:
            edges.append((p, q))
    sub = TripleDiagram.from_edge_list(len(legs) // 2, sorted(cs), edges)
    loops = {}
    for key, count in diagram.loops.items():
        face = diagram.face_by_key(key)
        if face.darts and all(d[0] == 'c' and d[1] in cs for d in face.darts):
            loops[key] = count
    sub = sub.with_loops(loops)
    sub.check()
    return sub, legs


# ----------------------------------------------------------------------
# strand helpers on a standalone diagram

def _strand_from(diagram, idx):
    for s in diagram.strands():
        if s['start'] == idx:
            return s
    raise ReductionError("no strand at endpoint %d" % idx)


def _interval_span(n, a, b, dirn):
    out = []
    cur = (a + dirn) % (2 * n)
    while cur != b:
        out.append(cur)
        cur = (cur + dirn) % (2 * n)
    return out


def is_boundary_parallel(diagram, a, dirn):
    """Is the strand at ``a`` boundary-parallel along its dirn interval?"""
    s = _strand_from(diagram, a)
    b = s['end']
    interior = _interval_span(diagram.n, a, b, dirn)
    k = len(interior) // 2
    visits = s['visits']
    if len(visits) != k or len(set(c for c, _ in visits)) != k:
        return False
    for j in range(k):
        o = interior[2 * j]
        i = interior[2 * j + 1]
        c, e = visits[j]
        if dirn == 1:
            down_out, down_in = (e + 1) % 6, (e + 2) % 6
        else:
            down_out, down_in = (e + 5) % 6, (e + 4) % 6
        if diagram.edges[('c', c, down_out)] != ('b', o):
            return False
        if diagram.edges[('c', c, down_in)] != ('b', i):
            return False
    return True


def _under_region(diagram, a, dirn):
    """(faces, crossings) strictly between the strand at ``a`` and its
    interval: flood face adjacency from the outer face, blocked by the
    strand's edges and the interval's boundary arcs."""
    s = _strand_from(diagram, a)
    b = s['end']
    interior = _interval_span(diagram.n, a, b, dirn)
    span = [a] + interior + [b]
    blocked_arcs = set()
    for i in range(len(span) - 1):
        lo = span[i] if dirn == 1 else span[i + 1]
        blocked_arcs.add(lo)
    s_edges = set(frozenset(e) for e in s['path'])
    faces = diagram.faces()
    reach = set()
    todo = ['outer']
    adj = {}
    for f in faces:
        for d in f.darts:
            if d[0] == '+':
                if d[1] in blocked_arcs:
                    continue
                adj.setdefault('outer', set()).add(f.key)
                adj.setdefault(f.key, set()).add('outer')
            elif d[0] in ('b', 'c'):
                e = frozenset((d, diagram.edges[d]))
                if e in s_edges:
                    continue
                other = diagram.face_of(diagram.edges[d]).key
                adj.setdefault(f.key, set()).add(other)
    while todo:
        x = todo.pop()
        if x in reach:
            continue
        reach.add(x)
        todo.extend(adj.get(x, ()))
    s_cross = set(c for c, _ in s['visits'])
    under_faces = [f for f in faces if f.key not in reach and 'outer' not in (f.key,)]
    under_cross = set()
    for f in under_faces:
        for d in f.darts:
            if d[0] == 'c' and d[1] not in s_cross:
                under_cross.add(d[1])
    return set(f.key for f in under_faces), under_cross


def _shared_crossings(s1, s2):
    return set(c for c, _ in s1['visits']) & set(c for c, _ in s2['visits'])


# ----------------------------------------------------------------------
# petals

def _first_revisit(strand):
    """(i, j) positions of the first revisited crossing along the strand."""
    seen = {}
    for j, (c, _) in enumerate(strand['visits']):
        if c in seen:
            return seen[c], j
        seen[c] = j
    return None


def _petal_region(diagram, strand, i, j):
    """Crossings to clear so the self-intersection becomes removable.

    The loop runs from the exit of visit ``i`` back to the entry of
    visit ``j`` at the same crossing x.  Its two slots at x are
    cyclically adjacent, so the corner between them is a face; the petal
    is the side of the loop holding that corner.  Returns (region
    crossings, loop edges, x, entry slot of the final edge).
    """
    m = len(strand['visits'])
    x, e_i = strand['visits'][i % m]
    _, e_j = strand['visits'][j % m]
    s_out = (e_i + 3) % 6
    s_in = e_j
    if (s_in - s_out) % 6 not in (1, 5):
        raise ReductionError("loop slots are not adjacent")
    # the loop's edge path: edges between exiting visit i and entering j;
    # path[t] is the edge into visit t, cyclically for closed strands
    path = strand['path']
    if strand['kind'] == 'closed':
        loop_edges = set(frozenset(path[(t + 1) % m]) for t in range(i, j))
    else:
        loop_edges = set(frozenset(path[t + 1]) for t in range(i, j))
    corner = (s_out if (s_in - s_out) % 6 == 1 else s_in)
    corner_face = diagram.face_of(('c', x, corner))
    # flood the face graph avoiding loop edges; petal = corner side
    reach = {corner_face.key}
    todo = [corner_face.key]
    faces = {f.key: f for f in diagram.faces()}
    while todo:
        fk = todo.pop()
        for d in faces[fk].darts:
            if d[0] not in ('b', 'c'):
                continue
            e = frozenset((d, diagram.edges[d]))
            if e in loop_edges:
                continue
            other = diagram.face_of(diagram.edges[d]).key
            if other not in reach:
                reach.add(other)
                todo.append(other)
    region = set()
    for fk in reach:
        for d in faces[fk].darts:
            if d[0] in ('b', '+', '-'):
                raise ReductionError("petal flood reached the boundary")
            if d[0] == 'c' and d[1] != x:
                region.add(d[1])
    return region, loop_edges, x, (s_out, s_in)


# ----------------------------------------------------------------------
# window search

def _window_bfs(diagram, window, goal, cap=30000):
    """Shortest 2<->2-only move sequence inside ``window`` reaching goal.

    Returns a list of Moves, or None when the window's closure has no
    goal state.  ``goal`` takes a diagram.
    """
    start = diagram.canonical_key()
    seen = {start}
    frontier = [(diagram, [])]
    while frontier:
        nxt = []
        for cur, path in frontier:
            for site in find_22_sites(cur):
                if site.x[0] not in window or site.y[0] not in window:
                    continue
                nd, mv = move_22(cur, site)
                key = nd.canonical_key()
                if key in seen:
                    continue
                seen.add(key)
                if len(seen) > cap:
                    raise ReductionError("window search exceeded %d states"
                                         % cap)
                if goal(nd):
                    return path + [mv]
                nxt.append((nd, path + [mv]))
        frontier = nxt
    return None


# ----------------------------------------------------------------------
# the worker

def _apply_all(diagram, moves, log):
    for mv in moves:
        diagram = apply_move(diagram, mv)
        log.append(mv)
    return diagram


def straighten(diagram, a, dirn, log=None, depth=0):
    """Make the strand at in-endpoint ``a`` boundary-parallel along its
    dirn-side interval.  Returns (diagram, moves); the interval must be
    minimal for the diagram's matching."""
    if log is None:
        log = []
    if depth > 60:
        raise ReductionError("straightening recursion too deep")
    guard = 0
    while True:
        guard += 1
        if guard > 300 + 60 * (diagram.crossing_count() + 2):
            raise ReductionError("straightening stalled")
        # 0. loops and floating components
        if diagram.loops:
            key = sorted(diagram.loops)[0]
            diagram = _apply_all(diagram, [Move('drop', (key,))], log)
            continue
        moved = _dissolve_one_floating(diagram, log, depth)
        if moved is not None:
            diagram = moved
            continue
        # 1. done?
        if is_boundary_parallel(diagram, a, dirn):
            return diagram, log
        # 2. empty monogons
        sites = find_10_sites(diagram)
        if sites:
            diagram = _apply_all(
                diagram, [Move('10', (sites[0].crossing, sites[0].slot))],
                log)
            continue
        # 3. self-intersections (the interval strand first)
        strands = diagram.strands()
        s_main = _strand_from(diagram, a)
        chosen = None
        for s in [s_main] + [t for t in strands if t is not s_main]:
            rev = _first_revisit(s)
            if rev:
                chosen = (s, rev)
                break
        if chosen:
            diagram = _clear_petal(diagram, chosen[0], chosen[1], log, depth)
            continue
        # 4. strands crossing S twice
        dbl = _innermost_double(diagram, a, dirn)
        if dbl:
            diagram = _remove_double(diagram, a, dirn, dbl, log, depth)
            continue
        # 5. comb
        diagram = _comb(diagram, a, dirn, log)


def _dissolve_one_floating(diagram, log, depth):
    """Reduce one crossing of a floating component, or return None."""
    if diagram.n > 0:
        anchored = set()
        for s in diagram.strands():
            if s['kind'] == 'arc':
                anchored.update(c for c, _ in s['visits'])
    else:
        anchored = set()
    floating = [c for c in diagram.crossings if c not in anchored]
    if not floating:
        return None
    for s in diagram.strands():
        if s['kind'] != 'closed':
            continue
        if not any(c in floating for c, _ in s['visits']):
            continue
        for rev in _closed_loop_candidates(s):
            try:
                return _clear_petal(diagram, s, rev, log, depth)
            except ReductionError:
                continue
    raise ReductionError("floating component with no clearable loop")


def _closed_loop_candidates(strand):
    """Self-intersection segments of a closed strand, small spans first.

    Yields (i, j) with visits i and j at the same crossing and no
    repeated crossing strictly between (indices may wrap past the
    cycle's length)."""
    seq = [c for c, _ in strand['visits']]
    m = len(seq)
    out = []
    for i in range(m):
        for span in range(1, m):
            j = i + span
            if seq[j % m] != seq[i]:
                continue
            inner = [seq[t % m] for t in range(i + 1, j)]
            if len(set(inner)) == len(inner) and seq[i] not in inner:
                out.append((span, i, j))
    out.sort()
    return [(i, j) for _, i, j in out]


def _clear_petal(diagram, strand, rev, log, depth):
    i, j = rev
    region, loop_edges, x, (s_out, s_in) = _petal_region(diagram, strand, i, j)
    if not region:
        # the loop is a single edge already: an empty monogon
        lo = s_out if (s_in - s_out) % 6 == 1 else s_in
        return _apply_all(diagram, [Move('10', (x, lo))], log)
    sub, legs = extract_region(diagram, region)
    # the loop's two cut legs sit at the crossing x
    a_idx = b_idx = None
    for idx, (inner, outer) in enumerate(legs):
        if outer == ('c', x, s_out):
            a_idx = idx
        if outer == ('c', x, s_in):
            b_idx = idx
    if a_idx is None or b_idx is None:
        raise ReductionError("petal legs not found")
    dirn = _empty_side(sub, a_idx, b_idx)
    sub2, submoves = straighten(sub, a_idx, dirn, None, depth + 1)
    return _apply_all(diagram, submoves, log)


def _empty_side(sub, a, b):
    for dirn in (1, -1):
        if not _interval_span(sub.n, a, b, dirn):
            return dirn
    raise ReductionError("loop legs are not adjacent")


def _innermost_double(diagram, a, dirn):
    """The innermost under-piece of a strand meeting S twice, if any."""
    s_main = _strand_from(diagram, a)
    s_ids = [c for c, _ in s_main['visits']]
    s_pos = {c: t for t, c in enumerate(s_ids)}
    under_faces, under_cross = _under_region(diagram, a, dirn)
    best = None
    for s in diagram.strands():
        if s is s_main:
            continue
        seq = [c for c, _ in s['visits']]
        hits = [t for t, c in enumerate(seq) if c in s_pos]
        for h in range(len(hits) - 1):
            t1, t2 = hits[h], hits[h + 1]
            c1, c2 = seq[t1], seq[t2]
            between = seq[t1 + 1:t2]
            # the piece between consecutive S-crossings is under iff its
            # crossings are under, or, when empty, its edge borders an
            # under face
            if between:
                if not all(c in under_cross for c in between):
                    continue
            else:
                edge = s['path'][t1 + 1]
                f1 = diagram.face_of(edge[0]).key
                f2 = diagram.face_of(diagram.edges[edge[0]]).key
                if f1 not in under_faces and f2 not in under_faces:
                    continue
            span = abs(s_pos[c1] - s_pos[c2])
            size = (len(between), span)
            if best is None or size < best[0]:
                best = (size, s, t1, t2, c1, c2)
    if best is None:
        return None
    return best[1:]


def _remove_double(diagram, a, dirn, dbl, log, depth):
    s, t1, t2, c1, c2 = dbl
    seq = [c for c, _ in s['visits']]
    between = seq[t1 + 1:t2]
    if between:
        region = set(between)
        sub, legs = extract_region(diagram, region)
        a_idx = b_idx = None
        ein = s['path'][t1 + 1]
        eout = s['path'][t2]
        for idx, (inner, outer) in enumerate(legs):
            if inner in ein or inner in eout:
                if is_source(inner):
                    b_idx = idx
                else:
                    a_idx = idx
        if a_idx is None or b_idx is None:
            raise ReductionError("double-piece legs not found")
        # straighten the piece along the side hugging S: its interior
        # legs all attach to crossings of S
        s_cross = set(c for c, _ in _strand_from(diagram, a)['visits'])
        dsub = None
        for cand in (1, -1):
            span = _interval_span(sub.n, a_idx, b_idx, cand)
            if all(legs[t][1][0] == 'c' and legs[t][1][1] in s_cross
                   for t in span):
                if dsub is None or len(span) < len(
                        _interval_span(sub.n, a_idx, b_idx, dsub)):
                    dsub = cand
        if dsub is None:
            raise ReductionError("no S-side span for the double piece")
        sub2, submoves = straighten(sub, a_idx, dsub, None, depth + 1)
        diagram = _apply_all(diagram, submoves, log)
    # window search: kill the double crossing or expose a monogon
    s_main = _strand_from(diagram, a)
    u = _strand_at_same_ends(diagram, s)
    before = len(_shared_crossings(s_main, u))
    window = set([c1, c2])
    spos = [c for c, _ in s_main['visits']]
    i1, i2 = spos.index(c1), spos.index(c2)
    window.update(spos[min(i1, i2):max(i1, i2) + 1])
    useq = [c for c, _ in u['visits']]
    u1, u2 = useq.index(c1), useq.index(c2)
    window.update(useq[min(u1, u2):max(u1, u2) + 1])

    def goal(d):
        if find_10_sites(d):
            return True
        sm = _strand_from(d, a)
        uu = _strand_at_same_ends(d, u)
        if _first_revisit(sm):
            return False
        return len(_shared_crossings(sm, uu)) <= before - 2

    path = _window_bfs(diagram, window, goal)
    if path is None:
        path = _window_bfs(diagram, set(diagram.crossings), goal)
    if path is None:
        raise ReductionError("double crossing is stuck")
    return _apply_all(diagram, path, log)


def _strand_at_same_ends(diagram, s):
    if s['kind'] == 'arc':
        return _strand_from(diagram, s['start'])
    raise ReductionError("closed strand interlocked with the interval")


def _comb_potential(diagram, a, dirn):
    under_faces, under_cross = _under_region(diagram, a, dirn)
    s_main = _strand_from(diagram, a)
    s_set = set(c for c, _ in s_main['visits'])
    interior = _interval_span(diagram.n, a, s_main['end'], dirn)
    detours = 0
    for e in interior:
        strand = None
        for s in diagram.strands():
            if s['start'] == e or s['end'] == e:
                strand = s
                break
        seq = [c for c, _ in strand['visits']]
        if strand['end'] == e and strand['start'] != e:
            seq = list(reversed(seq))
        steps = 0
        for c in seq:
            if c in s_set:
                break
            steps += 1
        detours += steps
    return (len(under_cross), detours)


def _comb(diagram, a, dirn, log):
    base = _comb_potential(diagram, a, dirn)

    def goal(d):
        if find_10_sites(d):
            return True
        sm = _strand_from(d, a)
        if _first_revisit(sm):
            return False
        if _innermost_double(d, a, dirn):
            return False
        return _comb_potential(d, a, dirn) < base

    s_main = _strand_from(diagram, a)
    _, under_cross = _under_region(diagram, a, dirn)
    window = set(c for c, _ in s_main['visits']) | under_cross
    path = _window_bfs(diagram, window, goal)
    if path is None:
        path = _window_bfs(diagram, set(diagram.crossings), goal)
    if path is None:
        raise ReductionError("combing is stuck")
    return _apply_all(diagram, path, log)


def straighten_interval(diagram, interval):
    """Public wrapper: ``interval`` is (in_endpoint, out_endpoint, side)
    with side +1 for the counterclockwise interval, -1 for clockwise.
    Returns (diagram, MoveLog); the interval must be minimal."""
    a, b, dirn = interval
    diagram.check()
    matching, _ = diagram.trace()
    if matching[a] != b:
        raise MoveError("interval endpoints are not a matched pair")
    final, moves = straighten(diagram, a, dirn)
    if not is_boundary_parallel(final, a, dirn):
        raise ReductionError("straightening finished off-template")
    return make_log(diagram, moves)


# ----------------------------------------------------------------------
# reduction to the standard diagram

def _build_residual(diagram, active, frontier):
    """Sub-diagram spanned by the active crossings over the frontier.

    ``frontier`` is the list of (key, port) anchors in counterclockwise
    key order; ports are real endpoints or upper legs of frozen
    crossings.  Returns the standalone diagram whose boundary endpoint i
    is the i-th frontier anchor.
    """
    index = {port: i for i, (key, port) in enumerate(frontier)}
    edges = []
    seen = set()
    for i, (key, port) in enumerate(frontier):
        q = diagram.edges[port]
        if q[0] == 'c' and q[1] in active:
            edges.append((('b', i), q))
        else:
            j = index.get(q)
            if j is None:
                raise ReductionError("frontier strand leaks out of the "
                                     "residual region")
            if (i, j) not in seen:
                edges.append((('b', i), ('b', j)))
                seen.add((j, i))
    for p, q in diagram.edge_list():
        if p[0] == 'c' and p[1] in active and q[0] == 'c' and q[1] in active:
            edges.append((p, q))
    sub = TripleDiagram.from_edge_list(len(frontier) // 2,
                                       sorted(active), edges)
    loops = {}
    for fk, count in diagram.loops.items():
        face = diagram.face_by_key(fk)
        if face.darts and all(d[0] == 'c' and d[1] in active
                              for d in face.darts):
            loops[fk] = count
    return sub.with_loops(loops)


def to_standard(diagram, strategy="inclusion"):
    """Reduce to the standard diagram of the trace, with a move log.

    The log contains only 2<->2, 1->0 and loop-dropping moves; on a
    minimal input it is 2<->2-only.  The result's canonical key equals
    ``standard_diagram(trace, strategy)``'s.
    """
    if strategy not in STRATEGIES:
        raise ValueError("unknown strategy %r" % strategy)
    diagram.check()
    start = diagram
    matching, _ = diagram.trace()
    log = []
    # top-level loops and floating junk go first
    while diagram.loops:
        key = sorted(diagram.loops)[0]
        diagram = _apply_all(diagram, [Move('drop', (key,))], log)
    while True:
        moved = _dissolve_one_floating(diagram, log, 0)
        if moved is None:
            break
        diagram = moved
        while diagram.loops:
            key = sorted(diagram.loops)[0]
            diagram = _apply_all(diagram, [Move('drop', (key,))], log)

    frozen = set()
    frontier = [(i, ('b', i)) for i in range(2 * diagram.n)]
    while frontier:
        # moves inside the worker may delete crossings, so the active
        # set is recomputed from what is left and what was frozen
        active = set(diagram.crossings) - frozen
        # sub-endpoint 0 must be an in-anchor; rotating the frontier
        # keeps the cyclic key order that interval selection relies on
        ins = [t for t, (_, port) in enumerate(frontier)
               if is_source(port)]
        if not ins:
            raise ReductionError("frontier lost its in-anchors")
        frontier = frontier[ins[0]:] + frontier[:ins[0]]
        keys = [k for k, _ in frontier]
        sub = _build_residual(diagram, active, frontier)
        traced, _ = sub.trace()
        pairing = {keys[i]: keys[o] for i, o in traced.pairs}
        if not pairing:
            break
        a_key, b_key, dirn, interior_keys = select_interval(
            keys, pairing, strategy)
        pos = {k: i for i, k in enumerate(keys)}
        a_idx, b_idx = pos[a_key], pos[b_key]
        sub2, submoves = straighten(sub, a_idx, dirn)
        diagram = _apply_all(diagram, submoves, log)
        sub2.check()
        # freeze the laid strand and swap the frontier keys over it
        s = _strand_from(sub2, a_idx)
        assert is_boundary_parallel(sub2, a_idx, dirn)
        interior = _interval_span(sub2.n, a_idx, b_idx, dirn)
        new_frontier = {k: p for k, p in frontier}
        for j, (c, e) in enumerate(s['visits']):
            o_key = keys[interior[2 * j]]
            i_key = keys[interior[2 * j + 1]]
            if dirn == 1:
                t_up, u_up = ('c', c, (e + 4) % 6), ('c', c, (e + 5) % 6)
            else:
                t_up, u_up = ('c', c, (e + 2) % 6), ('c', c, (e + 1) % 6)
            new_frontier[i_key] = t_up
            new_frontier[o_key] = u_up
            frozen.add(c)
        del new_frontier[a_key], new_frontier[b_key]
        order = {k: t for t, k in enumerate(keys)}
        frontier = sorted(new_frontier.items(), key=lambda kv: order[kv[0]])
    final, movelog = make_log(start, log)
    target = standard_diagram(matching, strategy)
    if final.canonical_key() != target.canonical_key():
        raise ReductionError("reduction did not reach the standard diagram")
    return final, movelog


def reduce_to_minimal(diagram, strategy="inclusion"):
    """Reduce to a minimal diagram (the standard one) with a move log."""
    final, movelog = to_standard(diagram, strategy)
    assert is_minimal(final)
    return final, movelog


def connect_minimal(d1, d2, strategy="inclusion"):
    """A 2<->2-only log from d1 to d2 (both minimal, same matching)."""
    if not is_minimal(d1) or not is_minimal(d2):
        raise MoveError("connect_minimal requires minimal diagrams")
    m1, _ = d1.trace()
    m2, _ = d2.trace()
    if m1 != m2:
        raise MoveError("matchings differ")
    s1, log1 = to_standard(d1)
    s2, log2 = to_standard(d2)
    assert all(mv.kind == '22' for mv in log1.moves + log2.moves)
    # Walk log2 backwards along its stored forward states.  A 2<->2
    # applied at its resulting site undoes the move only up to canonical
    # relabeling, so each inverse move's darts (recorded in the forward
    # state's labels) are translated into the current lineage through
    # the canonical forms of both diagrams.
    states = [d2]
    for mv in log2.moves:
        states.append(apply_move(states[-1], mv))
    moves = list(log1.moves)
    cur = s1
    for k in range(len(log2.moves) - 1, -1, -1):
        inv = log2.moves[k].inverse()
        _, lab_fwd = states[k + 1].canonical_form()
        _, lab_cur = cur.canonical_form()
        back = {cid: (c, ph) for c, (cid, ph) in lab_cur.items()}

        def translate(dart, lab_fwd=lab_fwd, back=back):
            c2, s = dart
            cid, ph2 = lab_fwd[c2]
            c1, ph1 = back[cid]
            return (c1, (s - ph2 + ph1) % 6)

        x, y, nx, ny = inv.data
        tmv = Move('22', (translate(x), translate(y),
                          translate(nx), translate(ny)))
        cur = apply_move(cur, tmv)
        moves.append(tmv)
    final, movelog = make_log(d1, moves)
    if final.canonical_key() != d2.canonical_key():
        raise ReductionError("connection replay missed the target")
    return movelog


# ----------------------------------------------------------------------
# slide macros

def pattern_tilings(pattern, repeats):
    """The two tilings realizing a slide pattern with r central repeats.

    Each pattern is a pair of domino tilings of one region, so the two
    dual diagrams are connected by 2<->2 moves (the flip graph is
    connected).  'a' exchanges the vertical and horizontal weaves of a
    2-row strip (one slide per repeat), 'b' carries a weave defect
    across the strip, 'c' exchanges the horizontal and brick phases of
    a 3-row strip.
    """
    from .domino import Region, Tiling
    r = repeats
    if r < 1:
        raise ValueError("need at least one central repeat")
    if pattern == 'a':
        region = Region.rectangle(2 * r, 2)
        left = Tiling(region, [(x, 0, False) for x in range(2 * r)])
        right = Tiling(region, [(2 * i, y, True)
                                for i in range(r) for y in range(2)])
    elif pattern == 'b':
        region = Region.rectangle(r + 2, 2)
        left = Tiling(region, [(0, 0, True), (0, 1, True)]
                      + [(x, 0, False) for x in range(2, r + 2)])
        right = Tiling(region, [(r, 0, True), (r, 1, True)]
                       + [(x, 0, False) for x in range(r)])
    elif pattern == 'c':
        w = 2 * r + 2
        region = Region.rectangle(w, 3)
        left = Tiling(region, [(2 * i, y, True)
                               for i in range(w // 2) for y in range(3)])
        right = Tiling(region, [(x, 0, False) for x in range(w)]
                       + [(2 * i, 2, True) for i in range(w // 2)])
    else:
        raise ValueError("pattern must be 'a', 'b' or 'c'")
    return left, right


def pattern_template(pattern, repeats):
    """(left diagram, window ids in template order, right diagram)."""
    from .domino import tiling_to_diagram
    left, right = pattern_tilings(pattern, repeats)
    d_left, dommap = tiling_to_diagram(left, with_map=True)
    d_right = tiling_to_diagram(right)
    window = [None] * len(dommap)
    for dom, idx in dommap.items():
        window[idx] = idx
    return d_left, window, d_right


def match_window(diagram, template, window):
    """Phases making the window isomorphic to the template's crossings.

    ``window[i]`` is the diagram crossing playing template crossing i.
    Returns {template id: phase} such that every internal template edge
    ((i, s), (j, t)) appears in the diagram as
    ((window[i], s+phase[i]), (window[j], t+phase[j])).
    """
    internal = []
    for p, q in template.edge_list():
        if p[0] == 'c' and q[0] == 'c':
            internal.append((p, q))
    if not internal:
        raise MoveError("template has no internal edges")
    adj = {}
    for p, q in internal:
        adj.setdefault(p[1], []).append((p, q))
        adj.setdefault(q[1], []).append((q, p))
    for ph0 in (0, 2, 4):
        phases = {internal[0][0][1]: ph0}
        todo = [internal[0][0][1]]
        ok = True
        while todo and ok:
            i = todo.pop()
            for (p, q) in adj.get(i, ()):
                got = diagram.edges.get(
                    ('c', window[i], (p[2] + phases[i]) % 6))
                if got is None or got[0] != 'c' or got[1] != window[q[1]]:
                    ok = False
                    break
                ph = (got[2] - q[2]) % 6
                if ph % 2:
                    ok = False
                    break
                if q[1] in phases:
                    if phases[q[1]] != ph:
                        ok = False
                        break
                else:
                    phases[q[1]] = ph
                    todo.append(q[1])
        if ok and len(phases) == len(set(window)):
            return phases
    raise MoveError("window does not match the pattern's left side")


def slide_macro(diagram, pattern, window, repeats=None):
    """A 2<->2-only log turning the window into the pattern's right side.

    ``window`` lists the diagram crossings matching the pattern's left
    side (template order); ``repeats`` defaults to the size implied by
    the window.  The sequence is found by breadth-first search over
    2<->2 moves confined to the template, then replayed through the
    window, so it never touches outside crossings.
    """
    if repeats is None:
        repeats = _infer_repeats(pattern, len(window))
    t_left, t_window, t_right = pattern_template(pattern, repeats)
    if len(window) != len(t_window):
        raise MoveError("window size does not fit the pattern")
    phases = match_window(diagram, t_left, window)
    target = t_right.canonical_key()

    def goal(d):
        return d.canonical_key() == target

    if goal(t_left):
        path = []
    else:
        path = _window_bfs(t_left, set(t_left.crossings), goal)
    if path is None:
        raise ReductionError("pattern sides are not 2<->2 connected")
    moves = []
    for mv in path:
        x, y, nx, ny = mv.data

        def tr(dart):
            c, s = dart
            return (window[c], (s + phases[c]) % 6)

        moves.append(Move('22', (tr(x), tr(y), tr(nx), tr(ny))))
    final, movelog = make_log(diagram, moves)
    return movelog


def _infer_repeats(pattern, size):
    if pattern == 'a':
        r = size // 2          # 2-row strip of width 2r
    elif pattern == 'b':
        r = size - 2           # 2-row strip of width r+2
    else:
        r = (size - 3) // 3    # 3-row strip has 3(r+1) dominoes
    if r < 1:
        raise MoveError("window too small for the pattern")
    return r


# ----------------------------------------------------------------------
# test inflation

def inflate(diagram, bumps, loops, shuffles, rng):
    """Grow a diagram by monogon insertions, free loops and 2<->2 noise.

    Returns (diagram, applied moves).  Used to exercise the reducer:
    reduce_to_minimal must undo exactly ``bumps`` crossings by 1->0
    moves and ``loops`` by drops.
    """
    moves = []
    cur = diagram
    for _ in range(bumps):
        cands = []
        for f in cur.faces():
            edge_darts = []
            seen = set()
            for d in f.darts:
                if d[0] not in ('b', 'c'):
                    continue
                e = frozenset((d, cur.edges[d]))
                if e in seen:
                    continue
                seen.add(e)
                edge_darts.append(d)
            if len(edge_darts) >= 2:
                cands.append((f, edge_darts))
        if not cands:
            break
        f, darts = cands[rng.randrange(len(cands))]
        dp = darts[rng.randrange(len(darts))]
        dq = dp
        while dq == dp:
            dq = darts[rng.randrange(len(darts))]
        side = 'l' if is_source(dp) else 'r'
        mv = Move('01', (dp if is_source(dp) else cur.edges[dp],
                         dq if is_source(dq) else cur.edges[dq], side))
        cur = apply_move(cur, mv)
        moves.append(mv)
    for _ in range(loops):
        faces = cur.faces()
        f = faces[rng.randrange(len(faces))]
        mv = Move('add', (f.key,))
        cur = apply_move(cur, mv)
        moves.append(mv)
    for _ in range(shuffles):
        sites = find_22_sites(cur)
        if not sites:
            continue
        site = sites[rng.randrange(len(sites))]
        cur, mv = move_22(cur, site)
        moves.append(mv)
    return cur, moves
