"""Line-oriented text formats: diagrams, matchings, regions, tilings,
move logs and move graphs.  All writers are byte-deterministic: crossing
ids are canonicalized before serialization, edge lines are sorted, and
every list is emitted in a fixed order.
"""

import hashlib

from .diagram import TripleDiagram, Matching, port_str, parse_port
from .moves import Move, MoveLog, apply_move
from .domino import Region, Tiling


class ParseError(ValueError):
    def __init__(self, name, line_no, message):
        self.name = name
        self.line_no = line_no
        self.message = message
        super().__init__("%s:%d: %s" % (name, line_no, message))


def _lines(text, name, header):
    lines = [l.rstrip("\n") for l in text.splitlines()]
    if not lines or lines[0] != header:
        raise ParseError(name, 1, "expected header %r" % header)
    return lines


def key_digest(key):
    return hashlib.sha256(key.encode()).hexdigest()[:16]


# ----------------------------------------------------------------------
# diagrams

def write_diagram(diagram):
    _, label = diagram.canonical_form()

    def cport(port):
        if port[0] == 'b':
            return port
        cid, phase = label[port[1]]
        return ('c', cid, (port[2] - phase) % 6)

    def cdart(d):
        return cport(d) if d[0] == 'c' else d

    remapped = TripleDiagram.from_edge_list(
        diagram.n, range(diagram.crossing_count()),
        [(cport(p), cport(q)) for p, q in diagram.edge_list()])
    out = ["triple-diagram v1", "n %d" % diagram.n,
           "crossings %d" % diagram.crossing_count()]
    lines = []
    for p, q in remapped.edge_list():
        lines.append("edge %s %s" % (port_str(p), port_str(q)))
    out.extend(sorted(lines))
    if diagram.loops:
        items = []
        for key, count in diagram.loops.items():
            face = diagram.face_by_key(key)
            if not face.darts:
                items.append((0, count))
            else:
                items.append((remapped.face_of(cdart(face.darts[0])).index,
                              count))
        out.append("loops " + " ".join("%d:%d" % it for it in sorted(items)))
    return "\n".join(out) + "\n"


def read_diagram(text, name="<diagram>"):
    lines = _lines(text, name, "triple-diagram v1")
    n = k = None
    edges = []
    loops = {}
    for no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        try:
            if parts[0] == "n":
                n = int(parts[1])
            elif parts[0] == "crossings":
                k = int(parts[1])
            elif parts[0] == "edge":
                edges.append((parse_port(parts[1]), parse_port(parts[2])))
            elif parts[0] == "loops":
                for item in parts[1:]:
                    fid, count = item.split(":")
                    loops[int(fid)] = int(count)
            else:
                raise ParseError(name, no, "unknown record %r" % parts[0])
        except (IndexError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(name, no, "bad record: %s" % line)
    if n is None or k is None:
        raise ParseError(name, len(lines), "missing n or crossings")
    diagram = TripleDiagram.from_edge_list(n, range(k), edges)
    if loops:
        faces = diagram.faces()
        keyed = {}
        for fid, count in loops.items():
            if fid >= len(faces):
                raise ParseError(name, 1, "loop face %d out of range" % fid)
            keyed[faces[fid].key] = count
        diagram = diagram.with_loops(keyed)
    return diagram


# ----------------------------------------------------------------------
# matchings

def write_matching(matching):
    out = ["matching v1", "n %d" % matching.n]
    for a, b in matching.pairs:
        out.append("pair %d %d" % (a, b))
    return "\n".join(out) + "\n"


def read_matching(text, name="<matching>"):
    lines = _lines(text, name, "matching v1")
    n = None
    pairs = {}
    for no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        try:
            if parts[0] == "n":
                n = int(parts[1])
            elif parts[0] == "pair":
                pairs[int(parts[1])] = int(parts[2])
            else:
                raise ParseError(name, no, "unknown record %r" % parts[0])
        except (IndexError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(name, no, "bad record: %s" % line)
    if n is None:
        raise ParseError(name, len(lines), "missing n")
    try:
        return Matching.from_dict(n, pairs)
    except ValueError as exc:
        raise ParseError(name, 1, str(exc))


# ----------------------------------------------------------------------
# regions and tilings

def write_region(region):
    out = ["region v1"]
    for x, y in sorted(region.squares):
        out.append("sq %d %d" % (x, y))
    return "\n".join(out) + "\n"


def read_region(text, name="<region>"):
    lines = _lines(text, name, "region v1")
    squares = []
    for no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        if parts[0] != "sq" or len(parts) != 3:
            raise ParseError(name, no, "expected 'sq x y'")
        squares.append((int(parts[1]), int(parts[2])))
    return Region(squares)


def write_tiling(tiling):
    out = ["tiling v1"]
    for x, y, h in sorted(tiling.dominoes):
        out.append("dom %d %d %s" % (x, y, "H" if h else "V"))
    return "\n".join(out) + "\n"


def read_tiling(text, name="<tiling>"):
    lines = _lines(text, name, "tiling v1")
    doms = []
    for no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        if parts[0] != "dom" or len(parts) != 4 or parts[3] not in "HV":
            raise ParseError(name, no, "expected 'dom x y H|V'")
        doms.append((int(parts[1]), int(parts[2]), parts[3] == "H"))
    squares = []
    for x, y, h in doms:
        squares.append((x, y))
        squares.append((x + 1, y) if h else (x, y + 1))
    try:
        return Tiling(Region(squares), doms)
    except ValueError as exc:
        raise ParseError(name, 1, str(exc))


def read_ascii_region(text):
    """'#' squares; row order top to bottom."""
    rows = [r for r in text.splitlines() if r.strip()]
    squares = []
    height = len(rows)
    for ry, row in enumerate(rows):
        for x, ch in enumerate(row):
            if ch == '#':
                squares.append((x, height - 1 - ry))
    return Region(squares)


def read_ascii_tiling(text):
    """Letter-paired dominoes: each letter names one domino's two cells."""
    rows = [r for r in text.splitlines() if r.strip()]
    height = len(rows)
    cells = {}
    for ry, row in enumerate(rows):
        for x, ch in enumerate(row):
            if ch not in ' .':
                cells.setdefault(ch, []).append((x, height - 1 - ry))
    doms = []
    squares = []
    for ch, pair in sorted(cells.items()):
        if len(pair) != 2:
            raise ValueError("letter %r does not cover two cells" % ch)
        (x1, y1), (x2, y2) = sorted(pair)
        squares.extend(pair)
        if (x2, y2) == (x1 + 1, y1):
            doms.append((x1, y1, True))
        elif (x2, y2) == (x1, y1 + 1):
            doms.append((x1, y1, False))
        else:
            raise ValueError("letter %r cells are not adjacent" % ch)
    return Tiling(Region(squares), doms)


# ----------------------------------------------------------------------
# move logs

def _move_to_line(diagram, move):
    if move.kind == '22':
        face = diagram.face_of(('c',) + tuple(move.data[0]))
        return "22 %d" % face.index
    if move.kind == '10':
        return "10 %d.%d" % move.data
    if move.kind == '01':
        ep, eq, side = move.data
        return "01 %s %s %s" % (port_str(ep), port_str(eq), side)
    if move.kind == 'drop' or move.kind == 'add':
        key = move.data[0]
        face = (diagram.faces()[0] if key == ()
                else diagram.face_by_key(key))
        return "%s %d" % (move.kind, face.index)
    raise ValueError(move.kind)


def write_movelog(initial, log):
    out = ["movelog v1", "initial %s" % key_digest(log.initial_key)]
    cur = initial
    for mv in log.moves:
        out.append(_move_to_line(cur, mv))
        cur = apply_move(cur, mv)
    return "\n".join(out) + "\n"


def read_movelog(text, initial, name="<movelog>"):
    """Parse and resolve a move log against its initial diagram."""
    lines = _lines(text, name, "movelog v1")
    if len(lines) < 2 or not lines[1].startswith("initial "):
        raise ParseError(name, 2, "missing initial key line")
    digest = lines[1].split()[1]
    if digest != key_digest(initial.canonical_key()):
        raise ParseError(name, 2, "log does not start at this diagram")
    cur = initial
    moves = []
    keys = []
    for no, line in enumerate(lines[2:], start=3):
        if not line.strip():
            continue
        parts = line.split()
        try:
            if parts[0] == "22":
                face = cur.faces()[int(parts[1])]
                d1, d2 = face.darts
                mv = Move('22', ((d1[1], d1[2]), (d2[1], d2[2]), None, None))
                from .moves import resolve_22_by_darts, move_22
                site = resolve_22_by_darts(cur, mv.data[0], mv.data[1])
                cur, mv = move_22(cur, site)
            elif parts[0] == "10":
                token = parts[1][1:] if parts[1].startswith("C") else parts[1]
                c, s = token.split(".")
                mv = Move('10', (int(c), int(s)))
                cur = apply_move(cur, mv)
            elif parts[0] == "01":
                mv = Move('01', (parse_port(parts[1]), parse_port(parts[2]),
                                 parts[3]))
                cur = apply_move(cur, mv)
            elif parts[0] in ("drop", "add"):
                face = cur.faces()[int(parts[1])]
                mv = Move(parts[0], (face.key,))
                cur = apply_move(cur, mv)
            else:
                raise ParseError(name, no, "unknown move %r" % parts[0])
        except ParseError:
            raise
        except (IndexError, ValueError) as exc:
            raise ParseError(name, no, "bad move %r: %s" % (line, exc))
        moves.append(mv)
        keys.append(cur.canonical_key())
    return MoveLog(initial.canonical_key(), moves, keys), cur


# ----------------------------------------------------------------------
# move graphs

def write_movegraph(graph):
    out = ["movegraph v1"]
    names = {key: key_digest(key) for key in graph.vertices}
    for key in sorted(names.values()):
        out.append("v %s" % key)
    edge_lines = []
    for pair, face_index in graph.edges.items():
        a, b = sorted(names[k] for k in pair)
        edge_lines.append("e %s %s %d" % (a, b, face_index))
    out.extend(sorted(set(edge_lines)))
    return "\n".join(out) + "\n"
