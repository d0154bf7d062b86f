"""Local moves on triple diagrams: 2<->2, 1->0, loop moves, badgons.

The 2<->2 template.  A site is an interior degree-2 face between two
distinct crossings X and Y; its two boundary darts are the crossing
ports (X, x1) and (Y, y1), so the face occupies the corner between
slots ``x1, x1+1`` at X and ``y1, y1+1`` at Y, and its two edges are
``{(X, x1), (Y, y1+1)}`` and ``{(Y, y1), (X, x1+1)}``.  The move keeps
both crossing ids and rewires

    (X, x1+4) -> (Y, y1)        (Y, y1+4) -> (X, x1)
    (X, x1+5) -> (Y, y1+1)      (Y, y1+5) -> (X, x1+1)

with slots ``x1+2, x1+3, y1+2, y1+3`` untouched and the new central
bigon spanning ``{(X, x1+4), (Y, y1+5)}`` and ``{(Y, y1+4), (X, x1+5)}``.
The eight external legs keep their cyclic order and their through
connectivity; the central face color is preserved.  This table is the
dart-level transcription of the domino flip on a 2x2 block.

The 1->0 splice joins the former edges at slots ``j+3``/``j+4`` and
``j+2``/``j+5`` of the deleted crossing (``j``/``j+1`` carried the empty
monogon edge); chains through the remaining slots are followed so that
self-edges collapse correctly, producing free loops when a closed
strand loses its last crossing.
"""

from dataclasses import dataclass

from .diagram import TripleDiagram, is_source


@dataclass(frozen=True)
class TwoTwoSite:
    face_key: tuple
    x: tuple  # (crossing, x1)
    y: tuple  # (crossing, y1)


@dataclass(frozen=True)
class OneZeroSite:
    crossing: int
    slot: int  # monogon edge joins slots (slot, slot+1)


@dataclass(frozen=True)
class LoopSite:
    face_key: tuple


@dataclass(frozen=True)
class Badgon:
    kind: str       # 'monogon' | 'parallel-bigon' | 'simple-loop'
    detail: tuple


class MoveError(ValueError):
    """Stale or ill-formed move site."""


@dataclass(frozen=True)
class Move:
    kind: str    # '22' | '10' | '01' | 'drop' | 'add'
    data: tuple

    def inverse(self):
        if self.kind == '22':
            x, y, nx, ny = self.data
            return Move('22', (nx, ny, x, y))
        if self.kind == 'drop':
            return Move('add', self.data)
        if self.kind == 'add':
            return Move('drop', self.data)
        raise MoveError("no recorded inverse for %s" % self.kind)


@dataclass
class MoveLog:
    initial_key: str
    moves: list       # Move
    keys: list        # canonical key after each move

    def counts(self):
        out = {}
        for mv in self.moves:
            out[mv.kind] = out.get(mv.kind, 0) + 1
        return out

    def __len__(self):
        return len(self.moves)


# ----------------------------------------------------------------------
# site discovery

def find_22_sites(diagram):
    """All interior degree-2 faces between two distinct crossings."""
    sites = []
    for face in diagram.faces():
        if face.boundary or len(face.darts) != 2:
            continue
        d1, d2 = face.darts
        if d1[0] != 'c' or d2[0] != 'c' or d1[1] == d2[1]:
            continue
        sites.append(TwoTwoSite(face.key, (d1[1], d1[2]), (d2[1], d2[2])))
    return sites


def find_10_sites(diagram):
    """Empty monogons: a self-edge on consecutive slots, loop-free face."""
    sites = []
    for face in diagram.faces():
        if len(face.darts) != 1:
            continue
        d = face.darts[0]
        if diagram.loops.get(face.key):
            continue
        sites.append(OneZeroSite(d[1], d[2]))
    return sites


def find_loop_sites(diagram):
    return [LoopSite(key) for key in sorted(diagram.loops)]


# ----------------------------------------------------------------------
# face correspondence helper

def _face_map(old, new, port_map, forced):
    """Map each old face key to a new face key via surviving darts."""
    mapping = dict(forced)
    for face in old.faces():
        if face.key in mapping:
            continue
        target = None
        for d in face.darts:
            nd = port_map.get(d, d) if d[0] == 'c' else d
            if nd is None:
                continue
            try:
                target = new.face_of(nd).key
            except KeyError:
                continue
            break
        if target is None:
            target = new.faces()[0].key
        mapping[face.key] = target
    return mapping


def _carry_loops(old, new, face_map, extra=None):
    loops = {}
    for key, count in old.loops.items():
        nk = face_map[key]
        loops[nk] = loops.get(nk, 0) + count
    for key, count in (extra or {}).items():
        loops[key] = loops.get(key, 0) + count
    return loops


# ----------------------------------------------------------------------
# the 2<->2 move

def _apply_22_full(diagram, site):
    face = _resolve_22(diagram, site)
    (X, x1), (Y, y1) = face
    port_map = {}
    for k in (2, 3):
        port_map[('c', X, (x1 + k) % 6)] = ('c', X, (x1 + k) % 6)
        port_map[('c', Y, (y1 + k) % 6)] = ('c', Y, (y1 + k) % 6)
    port_map[('c', X, (x1 + 4) % 6)] = ('c', Y, y1)
    port_map[('c', X, (x1 + 5) % 6)] = ('c', Y, (y1 + 1) % 6)
    port_map[('c', Y, (y1 + 4) % 6)] = ('c', X, x1)
    port_map[('c', Y, (y1 + 5) % 6)] = ('c', X, (x1 + 1) % 6)
    # the old bigon-edge ports carry different edges afterwards; never
    # use them as face-correspondence witnesses
    port_map[('c', X, x1)] = None
    port_map[('c', X, (x1 + 1) % 6)] = None
    port_map[('c', Y, y1)] = None
    port_map[('c', Y, (y1 + 1) % 6)] = None

    e1 = frozenset((('c', X, x1), ('c', Y, (y1 + 1) % 6)))
    e2 = frozenset((('c', Y, y1), ('c', X, (x1 + 1) % 6)))
    new_edges = []
    for p, q in diagram.edge_list():
        if frozenset((p, q)) in (e1, e2):
            continue
        new_edges.append((port_map.get(p, p), port_map.get(q, q)))
    new_edges.append((('c', X, (x1 + 4) % 6), ('c', Y, (y1 + 5) % 6)))
    new_edges.append((('c', Y, (y1 + 4) % 6), ('c', X, (x1 + 5) % 6)))

    new = TripleDiagram.from_edge_list(diagram.n, diagram.crossings, new_edges)
    old_center = diagram.face_of(('c', X, x1)).key
    new_center = new.face_of(('c', X, (x1 + 4) % 6)).key
    face_map = _face_map(diagram, new, port_map, {old_center: new_center})
    new = new.with_loops(_carry_loops(diagram, new, face_map))
    new_site = TwoTwoSite(new_center, (X, (x1 + 4) % 6), (Y, (y1 + 4) % 6))
    return new, face_map, new_site


def _resolve_22(diagram, site):
    try:
        face = diagram.face_by_key(site.face_key)
    except KeyError:
        raise MoveError("stale 2<->2 site: face gone")
    darts = set(face.darts)
    want = {('c',) + site.x, ('c',) + site.y}
    if len(face.darts) != 2 or darts != want:
        raise MoveError("stale 2<->2 site: face changed")
    if site.x[0] == site.y[0]:
        raise MoveError("2<->2 site needs two distinct crossings")
    if any(d[0] != 'c' for d in face.darts):
        raise MoveError("2<->2 site must be interior")
    return (site.x, site.y)


def apply_22(diagram, site):
    """Apply the 2<->2 move; crossing count and trace are preserved."""
    return _apply_22_full(diagram, site)[0]


def move_22(diagram, site):
    """(new diagram, Move record with forward and inverse site darts)."""
    new, _, new_site = _apply_22_full(diagram, site)
    mv = Move('22', (site.x, site.y, new_site.x, new_site.y))
    return new, mv


def resolve_22_by_darts(diagram, x, y):
    """Rebuild a TwoTwoSite from its two corner darts, checking freshness."""
    face = diagram.face_of(('c',) + tuple(x))
    site = TwoTwoSite(face.key, tuple(x), tuple(y))
    _resolve_22(diagram, site)
    return site


# ----------------------------------------------------------------------
# the 1->0 move and its inverse

def _apply_10_full(diagram, site):
    c, j = site.crossing, site.slot
    petal = frozenset((('c', c, j), ('c', c, (j + 1) % 6)))
    if diagram.edges.get(('c', c, j)) != ('c', c, (j + 1) % 6):
        raise MoveError("stale 1->0 site: no monogon edge")
    face = diagram.face_of(('c', c, j))
    if len(face.darts) != 1:
        raise MoveError("stale 1->0 site: monogon not empty")
    if diagram.loops.get(face.key):
        raise MoveError("1->0 site carries free loops")

    partner = {}
    for a, b in ((j + 2, j + 5), (j + 3, j + 4)):
        partner[a % 6] = b % 6
        partner[b % 6] = a % 6
    slots = sorted(partner)
    new_edges = []
    loops_made = 0
    consumed = set()
    anchor = None
    for s in slots:
        # chains anchored at an external end
        if s in consumed:
            continue
        start = diagram.edges[('c', c, s)]
        if start[:2] == ('c', c):
            continue
        consumed.add(s)
        cur = partner[s]
        while True:
            consumed.add(cur)
            far = diagram.edges[('c', c, cur)]
            if far[:2] == ('c', c):
                consumed.add(far[2])
                cur = partner[far[2]]
            else:
                new_edges.append((start, far))
                anchor = start
                break
    for s in slots:
        # leftover internal cycles close into free loops
        if s in consumed:
            continue
        cur = s
        while cur not in consumed:
            consumed.add(cur)
            far = diagram.edges[('c', c, cur)]
            consumed.add(far[2])
            cur = partner[far[2]]
        loops_made += 1
    for p, q in diagram.edge_list():
        if ('c', c) == p[:2] or ('c', c) == q[:2]:
            continue
        new_edges.append((p, q))
    crossings = [k for k in diagram.crossings if k != c]
    new = TripleDiagram.from_edge_list(diagram.n, crossings, new_edges)
    port_map = {}
    face_map = _face_map(diagram, new, port_map, {})
    extra = {}
    if loops_made:
        if anchor is not None:
            home = new.face_of(anchor).key
        else:
            home = new.faces()[0].key
        extra[home] = loops_made
    new = new.with_loops(_carry_loops(diagram, new, face_map, extra))
    return new, face_map


def apply_10(diagram, site):
    """Delete the crossing under an empty monogon; splices j+3<->j+4, j+2<->j+5."""
    return _apply_10_full(diagram, site)[0]


def move_10(diagram, site):
    new, _ = _apply_10_full(diagram, site)
    return new, Move('10', (site.crossing, site.slot))


# ----------------------------------------------------------------------
# monogon insertion (0->1), the test-inflation inverse of 1->0

def apply_01(diagram, edge_p, edge_q, side):
    """Insert an empty monogon: bump ``edge_p`` across ``edge_q``.

    ``edge_p``/``edge_q`` are ports identifying two distinct edges that
    border a common face; ``side`` is 'l' or 'r', the side of ``edge_p``
    (relative to its travel direction) on which that face lies.  The
    strand through ``edge_p`` acquires a self-intersection at a fresh
    crossing; the matching is unchanged.
    """
    new, _, _ = _apply_01_full(diagram, edge_p, edge_q, side)
    return new


def _apply_01_full(diagram, edge_p, edge_q, side):
    a_src = edge_p if is_source(edge_p) else diagram.edges[edge_p]
    c_src = edge_q if is_source(edge_q) else diagram.edges[edge_q]
    if a_src == c_src:
        raise MoveError("monogon insertion needs two distinct edges")
    b_dst = diagram.edges[a_src]
    d_dst = diagram.edges[c_src]
    dart = a_src if side == 'l' else b_dst
    face = diagram.face_of(dart)
    if not (c_src in face.darts or d_dst in face.darts):
        raise MoveError("edges do not share the chosen face")
    c = max(diagram.crossings, default=-1) + 1
    new_edges = [e for e in diagram.edge_list()
                 if frozenset(e) not in (frozenset((a_src, b_dst)),
                                         frozenset((c_src, d_dst)))]
    if face.color == 'black':
        # petal edge on slots (0, 1)
        new_edges += [(a_src, ('c', c, 4)), (('c', c, 3), b_dst),
                      (('c', c, 1), ('c', c, 0)),
                      (c_src, ('c', c, 2)), (('c', c, 5), d_dst)]
        petal = 0
    else:
        # petal edge on slots (1, 2)
        new_edges += [(a_src, ('c', c, 4)), (('c', c, 5), b_dst),
                      (('c', c, 1), ('c', c, 2)),
                      (c_src, ('c', c, 0)), (('c', c, 3), d_dst)]
        petal = 1
    new = TripleDiagram.from_edge_list(diagram.n, diagram.crossings + (c,),
                                       new_edges)
    port_map = {}
    face_map = _face_map(diagram, new, port_map, {})
    new = new.with_loops(_carry_loops(diagram, new, face_map))
    return new, face_map, OneZeroSite(c, petal)


def move_01(diagram, edge_p, edge_q, side):
    new, _, site = _apply_01_full(diagram, edge_p, edge_q, side)
    return new, Move('01', (edge_p, edge_q, side)), site


# ----------------------------------------------------------------------
# loop moves

def drop_loop(diagram, site):
    if not diagram.loops.get(site.face_key):
        raise MoveError("no free loop at that face")
    loops = dict(diagram.loops)
    loops[site.face_key] -= 1
    if not loops[site.face_key]:
        del loops[site.face_key]
    return diagram.with_loops(loops)


def add_loop(diagram, face_key):
    diagram.face_by_key(face_key)  # raises KeyError when stale
    loops = dict(diagram.loops)
    loops[face_key] = loops.get(face_key, 0) + 1
    return diagram.with_loops(loops)


# ----------------------------------------------------------------------
# badgons and minimality

def _has_forward(strand, x, y):
    """Is there a subpath of the strand from crossing x to crossing y?"""
    if strand['kind'] == 'closed':
        return True
    seq = [c for c, _ in strand['visits']]
    first_x = min(i for i, c in enumerate(seq) if c == x)
    return any(c == y for c in seq[first_x + 1:])


def find_badgons(diagram):
    """Monogons, parallel bigons and free simple loops, complete list."""
    out = []
    strands = diagram.strands()
    for idx, s in enumerate(strands):
        seq = [c for c, _ in s['visits']]
        seen = set()
        dup = set()
        for c in seq:
            if c in seen:
                dup.add(c)
            seen.add(c)
        for c in sorted(dup):
            out.append(Badgon('monogon', (idx, c)))
    for i in range(len(strands)):
        for j in range(i + 1, len(strands)):
            si, sj = strands[i], strands[j]
            shared = sorted(set(c for c, _ in si['visits'])
                            & set(c for c, _ in sj['visits']))
            if len(shared) < 2:
                continue
            for a in range(len(shared)):
                for b in range(a + 1, len(shared)):
                    x, y = shared[a], shared[b]
                    if ((_has_forward(si, x, y) and _has_forward(sj, x, y))
                            or (_has_forward(si, y, x)
                                and _has_forward(sj, y, x))):
                        out.append(Badgon('parallel-bigon', (i, j, x, y)))
    for key in sorted(diagram.loops):
        out.append(Badgon('simple-loop', (key, diagram.loops[key])))
    return out


def is_minimal(diagram):
    """Connected and badgon-free; equivalently, fewest crossings for the
    matching (checked against the brute-force oracle in the test suite)."""
    return diagram.is_connected() and not find_badgons(diagram)


# ----------------------------------------------------------------------
# generic replay

def apply_move(diagram, move):
    if move.kind == '22':
        site = resolve_22_by_darts(diagram, move.data[0], move.data[1])
        return apply_22(diagram, site)
    if move.kind == '10':
        return apply_10(diagram, OneZeroSite(*move.data))
    if move.kind == '01':
        return apply_01(diagram, *move.data)
    if move.kind == 'drop':
        return drop_loop(diagram, LoopSite(move.data[0]))
    if move.kind == 'add':
        return add_loop(diagram, move.data[0])
    raise MoveError("unknown move kind %r" % move.kind)


def replay(diagram, log):
    """Replay a MoveLog, checking every recorded canonical key."""
    if diagram.canonical_key() != log.initial_key:
        raise MoveError("log does not start at this diagram")
    cur = diagram
    for mv, key in zip(log.moves, log.keys):
        cur = apply_move(cur, mv)
        if cur.canonical_key() != key:
            raise MoveError("replay diverged at %s move" % mv.kind)
    return cur


def make_log(diagram, moves):
    """Build a MoveLog by applying ``moves`` in order from ``diagram``."""
    keys = []
    cur = diagram
    for mv in moves:
        cur = apply_move(cur, mv)
        keys.append(cur.canonical_key())
    return cur, MoveLog(diagram.canonical_key(), list(moves), keys)
