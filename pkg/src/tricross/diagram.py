"""Core data model for oriented triple-crossing diagrams in a disk.

Conventions (global, used by every other module):

* The disk boundary carries ``2n`` endpoints numbered counterclockwise
  ``0 .. 2n-1``.  Even endpoints are *in* (a strand enters the disk
  there), odd endpoints are *out*.

* A crossing has six slots in counterclockwise cyclic order.  Even
  slots are strand entries, odd slots are strand exits.  A strand
  entering at slot ``s`` leaves at slot ``(s + 3) % 6``.

* Ports are tuples: ``('b', i)`` for boundary endpoint ``i`` and
  ``('c', c, s)`` for slot ``s`` of crossing ``c``.  Every edge joins a
  source port (even boundary endpoint, or odd slot) to a sink port.

* ``edges`` is stored as a fixed-point-free involution: a dict mapping
  each port to its partner, both directions present.

* Faces are computed from the rotation system.  Darts are ports plus,
  for ``n > 0``, the boundary-arc darts ``('+', i)`` (arc from endpoint
  ``i`` toward ``i+1``) and ``('-', i)`` (arc from ``i`` toward
  ``i-1``).  The face to the left of a dart is traced by
  ``phi(d) = sigma_inv(alpha(d))`` where ``sigma_inv`` rotates one step
  clockwise around the dart's vertex.  Interior faces of the disk are
  exactly the orbits other than the outer orbit (the one made of all
  ``('-', i)`` darts).

* A face is white when every strand dart on its boundary runs in the
  strand's travel direction (counterclockwise around the face), black
  when every strand dart runs against it.

Diagrams are immutable values by convention: all operations build new
instances.
"""

from dataclasses import dataclass, field


class DiagramError(ValueError):
    """Raised for structurally broken inputs (corrupted involutions)."""


def is_source(port):
    """True when a strand leaves the disk boundary / crossing at this port."""
    if port[0] == 'b':
        return port[1] % 2 == 0
    return port[2] % 2 == 1


def is_sink(port):
    return not is_source(port)


def port_str(port):
    if port[0] == 'b':
        return "B%d" % port[1]
    return "C%d.%d" % (port[1], port[2])


def parse_port(text):
    if text.startswith("B"):
        return ('b', int(text[1:]))
    if text.startswith("C"):
        c, s = text[1:].split(".")
        return ('c', int(c), int(s))
    raise ValueError("bad port %r" % text)


@dataclass(frozen=True)
class Matching:
    """Bijection from in-endpoints (even) to out-endpoints (odd)."""

    n: int
    pairs: tuple  # sorted tuple of (in, out)

    @staticmethod
    def from_dict(n, mapping):
        if sorted(mapping) != [2 * i for i in range(n)]:
            raise ValueError("matching domain must be the %d even indices" % n)
        if sorted(mapping.values()) != [2 * i + 1 for i in range(n)]:
            raise ValueError("matching codomain must be the %d odd indices" % n)
        return Matching(n, tuple(sorted(mapping.items())))

    def as_dict(self):
        return dict(self.pairs)

    def __getitem__(self, i):
        return self.as_dict()[i]


@dataclass(frozen=True)
class Face:
    """A complementary region: its boundary darts, color and boundary flag.

    ``darts`` is the left-face orbit in traversal order, rotated to start
    at the minimal dart; each dart is one (edge, side) incidence.
    """

    index: int
    darts: tuple
    color: str          # 'white' | 'black'
    boundary: bool
    key: tuple = field(default=())  # minimal dart; () for the empty-disk face


class TripleDiagram:
    """Planar combinatorial map of 6-valent crossings with boundary endpoints."""

    def __init__(self, n, crossings, edges, loops=None):
        self.n = n
        self.crossings = tuple(sorted(crossings))
        self.edges = dict(edges)
        # free crossing-free loops, keyed by the containing face's key dart
        self.loops = dict(loops) if loops else {}
        self._cache = {}

    @staticmethod
    def from_edge_list(n, crossings, edge_list, loops=None):
        edges = {}
        for p, q in edge_list:
            edges[p] = q
            edges[q] = p
        return TripleDiagram(n, crossings, edges, loops)

    def edge_list(self):
        seen = set()
        out = []
        for p, q in self.edges.items():
            if p in seen or q in seen:
                continue
            seen.add(p)
            seen.add(q)
            out.append(tuple(sorted((p, q))))
        return sorted(out)

    def ports(self):
        for i in range(2 * self.n):
            yield ('b', i)
        for c in self.crossings:
            for s in range(6):
                yield ('c', c, s)

    def crossing_count(self):
        return len(self.crossings)

    # ------------------------------------------------------------------
    # dart structure

    def alpha(self, d):
        if d[0] == '+':
            return ('-', (d[1] + 1) % (2 * self.n))
        if d[0] == '-':
            return ('+', (d[1] - 1) % (2 * self.n))
        return self.edges[d]

    @staticmethod
    def sigma_inv(d):
        tag = d[0]
        if tag == 'c':
            return ('c', d[1], (d[2] - 1) % 6)
        if tag == '+':
            return ('-', d[1])
        if tag == '-':
            return ('b', d[1])
        return ('+', d[1])  # boundary port

    def phi(self, d):
        """Next dart of the face on the left of ``d``."""
        return self.sigma_inv(self.alpha(d))

    def all_darts(self):
        darts = list(self.ports())
        for i in range(2 * self.n):
            darts.append(('+', i))
            darts.append(('-', i))
        return darts

    # ------------------------------------------------------------------
    # faces

    def faces(self):
        """Interior faces with checkerboard colors, deterministic order."""
        if 'faces' in self._cache:
            return self._cache['faces']
        orbits = self._orbits()
        records = []
        for orbit in orbits:
            if self.n > 0 and orbit[0][0] == '-':
                continue  # the outer face
            strand_dirs = set()
            boundary = False
            for d in orbit:
                if d[0] in ('+', '-'):
                    boundary = True
                elif d[0] == 'b':
                    boundary = True
                    strand_dirs.add(is_source(d))
                else:
                    strand_dirs.add(is_source(d))
            if strand_dirs == {True}:
                color = 'white'
            elif strand_dirs == {False}:
                color = 'black'
            else:
                raise DiagramError("face with inconsistent strand orientations")
            records.append((orbit, color, boundary))
        if self.n == 0 and not self.crossings:
            faces = (Face(0, (), 'white', True, ()),)
        else:
            records.sort(key=lambda r: r[0][0])
            faces = tuple(Face(i, r[0], r[1], r[2], r[0][0])
                          for i, r in enumerate(records))
        self._cache['faces'] = faces
        return faces

    def _orbits(self):
        todo = set(self.all_darts())
        orbits = []
        while todo:
            start = min(todo)
            orbit = [start]
            todo.discard(start)
            d = self.phi(start)
            while d != start:
                orbit.append(d)
                todo.discard(d)
                d = self.phi(d)
            m = orbit.index(min(orbit))
            orbits.append(tuple(orbit[m:] + orbit[:m]))
        orbits.sort(key=lambda o: o[0])
        return orbits

    def face_of(self, dart):
        """The interior face whose left-boundary contains ``dart``."""
        if 'face_of' not in self._cache:
            self._cache['face_of'] = {d: f for f in self.faces() for d in f.darts}
        return self._cache['face_of'][dart]

    def face_by_key(self, key):
        for f in self.faces():
            if f.key == key:
                return f
        raise KeyError(key)

    # ------------------------------------------------------------------
    # validation

    def validate(self):
        """Check every invariant; return a list of violations (empty = ok)."""
        violations = []
        ports = list(self.ports())
        port_set = set(ports)
        for p, q in self.edges.items():
            if p not in port_set:
                violations.append("unknown port %s" % port_str(p))
                return violations
            if q not in port_set:
                violations.append("unknown port %s" % port_str(q))
                return violations
        for p in ports:
            if p not in self.edges:
                violations.append("uncovered port %s" % port_str(p))
        if violations:
            return violations
        for p in ports:
            q = self.edges[p]
            if q == p:
                violations.append("fixed point at %s" % port_str(p))
            elif self.edges.get(q) != p:
                violations.append("involution broken at %s" % port_str(p))
        if violations:
            return violations
        for p, q in self.edge_list():
            if is_source(p) == is_source(q):
                violations.append("orientation clash on edge %s %s"
                                  % (port_str(p), port_str(q)))
        if violations:
            return violations

        # planarity: per-component Euler characteristic 2, and the outer
        # orbit must be exactly the clockwise boundary arcs.
        try:
            orbits = self._orbits()
        except KeyError:
            violations.append("corrupted involution")
            return violations
        if self.n > 0:
            outer = None
            for orbit in orbits:
                if ('-', 0) in orbit:
                    outer = orbit
                    break
            expect = set(('-', i) for i in range(2 * self.n))
            if outer is None or set(outer) != expect:
                violations.append("boundary endpoints do not bound a single "
                                  "outer face in cyclic order")
                return violations
        for comp_v, comp_e, comp_f in self._components(orbits):
            if comp_v - comp_e + comp_f != 2:
                violations.append("Euler characteristic violated "
                                  "(component V=%d E=%d F=%d)"
                                  % (comp_v, comp_e, comp_f))
        if violations:
            return violations

        # checkerboard: every face has a uniform strand direction
        try:
            faces = self.faces()
        except DiagramError as exc:
            violations.append(str(exc))
            return violations
        keys = set(f.key for f in faces)
        for key, count in self.loops.items():
            if key not in keys:
                violations.append("free loop keyed to unknown face %r" % (key,))
            if count < 1:
                violations.append("free loop count %d < 1 at %r" % (count, key))
        return violations

    def _components(self, orbits):
        """(V, E, F) per connected component of the dart structure."""
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        verts = []
        if self.n > 0:
            verts.extend(('b', i) for i in range(2 * self.n))
        verts.extend(('x', c) for c in self.crossings)
        for v in verts:
            parent[v] = v
        if self.n > 0:
            for i in range(2 * self.n):
                union(('b', i), ('b', (i + 1) % (2 * self.n)))
        for p, q in self.edge_list():
            union(self._vert(p), self._vert(q))
        comp_v = {}
        for v in verts:
            comp_v.setdefault(find(v), [0, 0, 0])[0] += 1
        for p, q in self.edge_list():
            comp_v[find(self._vert(p))][1] += 1
        if self.n > 0:
            root = find(('b', 0))
            comp_v[root][1] += 2 * self.n  # boundary arcs
        for orbit in orbits:
            d = orbit[0]
            v = ('b', d[1]) if d[0] in ('b', '+', '-') else ('x', d[1])
            comp_v[find(v)][2] += 1
        return [tuple(t) for t in comp_v.values()]

    @staticmethod
    def _vert(port):
        return ('b', port[1]) if port[0] == 'b' else ('x', port[1])

    def check(self):
        violations = self.validate()
        if violations:
            raise DiagramError("; ".join(violations))
        return self

    # ------------------------------------------------------------------
    # strands

    def strands(self):
        """All strands: arcs from in-endpoints first, then closed strands.

        Each strand is a dict with ``kind`` ('arc'|'closed'), ``start``/
        ``end`` boundary indices for arcs, ``visits`` (tuple of
        (crossing, entry_slot)) and ``path`` (tuple of traversed edges as
        (src, dst))."""
        if 'strands' in self._cache:
            return self._cache['strands']
        used = set()
        out = []

        def walk(src):
            visits = []
            path = []
            cur = src
            while True:
                if cur in used:
                    raise DiagramError("trace revisits port %s" % port_str(cur))
                used.add(cur)
                dst = self.edges[cur]
                if dst in used:
                    raise DiagramError("trace revisits port %s" % port_str(dst))
                used.add(dst)
                path.append((cur, dst))
                if dst[0] == 'b':
                    return visits, path, dst
                c, s = dst[1], dst[2]
                visits.append((c, s))
                nxt = ('c', c, (s + 3) % 6)
                if nxt == src:
                    return visits, path, None
                cur = nxt

        for i in range(0, 2 * self.n, 2):
            visits, path, end = walk(('b', i))
            if end is None:
                raise DiagramError("strand from endpoint %d never exits" % i)
            out.append({'kind': 'arc', 'start': i, 'end': end[1],
                        'visits': tuple(visits), 'path': tuple(path)})
        remaining = sorted(p for p in self.ports()
                           if p not in used and p[0] == 'c' and is_source(p))
        for src in remaining:
            if src in used:
                continue
            visits, path, end = walk(src)
            if end is not None:
                raise DiagramError("closed trace leaked to the boundary")
            out.append({'kind': 'closed', 'start': None, 'end': None,
                        'visits': tuple(visits), 'path': tuple(path)})
        self._cache['strands'] = out
        return out

    def trace(self):
        """(Matching, closed loop visit-sequences, incl. free loops)."""
        arcs = {}
        loops = []
        for s in self.strands():
            if s['kind'] == 'arc':
                arcs[s['start']] = s['end']
            else:
                loops.append(tuple(c for c, _ in s['visits']))
        for key in sorted(self.loops):
            loops.extend(() for _ in range(self.loops[key]))
        return Matching.from_dict(self.n, arcs), loops

    def is_connected(self):
        """True iff strands plus the boundary circle form one component."""
        if self.loops:
            return False
        if self.n == 0:
            return not self.crossings
        reach = set()
        todo = [('b', 0)]
        seen_b = set()
        while todo:
            v = todo.pop()
            if v[0] == 'b':
                if v[1] in seen_b:
                    continue
                seen_b.add(v[1])
                todo.append(('b', (v[1] + 1) % (2 * self.n)))
                todo.append(('b', (v[1] - 1) % (2 * self.n)))
                q = self.edges[v]
                todo.append(q if q[0] == 'b' else ('x', q[1]))
            else:
                if v in reach:
                    continue
                reach.add(v)
                for s in range(6):
                    q = self.edges[('c', v[1], s)]
                    todo.append(q if q[0] == 'b' else ('x', q[1]))
        return len(reach) == len(self.crossings)

    # ------------------------------------------------------------------
    # canonical form

    def canonical_form(self):
        """(key string, {crossing: (canonical id, phase)}).

        Equal keys exactly when two diagrams are isomorphic as
        boundary-labeled maps: crossing ids may be relabeled and slots
        rotated by even offsets; boundary endpoints stay fixed.
        """
        if 'canon' in self._cache:
            return self._cache['canon']
        label = {}
        edges_out = []

        def norm(port):
            if port[0] == 'b':
                return port
            cid, phase = label[port[1]]
            return ('c', cid, (port[2] - phase) % 6)

        def bfs(seeds, next_id):
            queue = list(seeds)
            qi = 0
            while qi < len(queue):
                p = queue[qi]
                qi += 1
                q = self.edges[p]
                if q[0] == 'c' and q[1] not in label:
                    phase = q[2] - (q[2] % 2)
                    label[q[1]] = (next_id, phase % 6)
                    next_id += 1
                    for s in range(6):
                        queue.append(('c', q[1], (phase + s) % 6))
                edges_out.append((norm(p), norm(q)))
            return next_id

        nid = bfs([('b', i) for i in range(2 * self.n)], 0)
        # floating components: canonicalize each by minimizing over roots
        floating = [c for c in self.crossings if c not in label]
        float_codes = []
        while floating:
            comp = self._crossing_component(floating[0])
            best = None
            for root in sorted(comp):
                for phase in (0, 2, 4):
                    code, lab = self._float_code(root, phase)
                    if best is None or code < best[0]:
                        best = (code, lab, root, phase)
            code, lab = best[0], best[1]
            for c, v in lab.items():
                label[c] = (v[0] + nid, v[1])
            nid += len(comp)
            float_codes.append(code)
            floating = [c for c in self.crossings if c not in label]
        float_codes.sort()

        loop_keys = sorted((self._canonical_face_key(k, norm), v)
                           for k, v in self.loops.items())
        parts = ["n=%d" % self.n,
                 ";".join("%s-%s" % (port_str(p), port_str(q))
                          for p, q in sorted(tuple(sorted((p, q)))
                                             for p, q in edges_out)),
                 "|".join(float_codes),
                 ",".join("%s:%d" % (k, v) for k, v in loop_keys)]
        result = ("\x1f".join(parts), dict(label))
        self._cache['canon'] = result
        return result

    def canonical_key(self):
        return self.canonical_form()[0]

    def _canonical_face_key(self, key_dart, norm):
        face = self.face_by_key(key_dart)
        cands = []
        for d in face.darts:
            if d[0] == 'c':
                cands.append(port_str(norm(d)))
            elif d[0] == 'b':
                cands.append(port_str(d))
            else:
                cands.append("%s%d" % (d[0], d[1]))
        return min(cands)

    def _crossing_component(self, start):
        comp = {start}
        todo = [start]
        while todo:
            c = todo.pop()
            for s in range(6):
                q = self.edges[('c', c, s)]
                if q[0] == 'c' and q[1] not in comp:
                    comp.add(q[1])
                    todo.append(q[1])
        return comp

    def _float_code(self, root, phase):
        label = {root: (0, phase)}
        order = [root]
        edges_out = []

        def norm(port):
            cid, ph = label[port[1]]
            return ('c', cid, (port[2] - ph) % 6)

        qi = 0
        pending = [('c', root, (phase + s) % 6) for s in range(6)]
        while qi < len(pending):
            p = pending[qi]
            qi += 1
            q = self.edges[p]
            if q[1] not in label:
                ph = q[2] - (q[2] % 2)
                label[q[1]] = (len(order), ph % 6)
                order.append(q[1])
                pending.extend(('c', q[1], (ph + s) % 6) for s in range(6))
            edges_out.append(tuple(sorted((port_str(norm(p)), port_str(norm(q))))))
        code = ";".join("%s-%s" % e for e in sorted(set(edges_out)))
        return code, label

    # ------------------------------------------------------------------

    def with_loops(self, loops):
        return TripleDiagram(self.n, self.crossings, self.edges, loops)

    def __eq__(self, other):
        return (isinstance(other, TripleDiagram)
                and self.canonical_key() == other.canonical_key())

    def __hash__(self):
        return hash(self.canonical_key())

    def __repr__(self):
        return ("TripleDiagram(n=%d, crossings=%d, loops=%d)"
                % (self.n, len(self.crossings), sum(self.loops.values())))


def empty_diagram(n=0):
    if n:
        raise ValueError("use standard_diagram to realize matchings")
    return TripleDiagram(0, (), {})
