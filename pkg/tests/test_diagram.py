"""Core model: validation, tracing, faces, connectivity, canonical keys."""

import pytest

from tricross import (TripleDiagram, Matching, empty_diagram, standard_diagram,
                      find_22_sites, apply_22)
from tricross.diagram import is_source, port_str, parse_port

from conftest import all_matchings


def single_crossing():
    # endpoints wired straight through: B_i to slot i
    return TripleDiagram.from_edge_list(
        3, [0], [(('b', i), ('c', 0, i)) for i in range(6)])


def nested_arcs():
    return TripleDiagram.from_edge_list(
        3, [], [(('b', 0), ('b', 5)), (('b', 2), ('b', 1)),
                (('b', 4), ('b', 3))])


def test_empty_diagram_validates():
    d = empty_diagram()
    assert d.validate() == []
    m, loops = d.trace()
    assert m.n == 0 and loops == []
    assert len(d.faces()) == 1
    assert d.faces()[0].color == 'white'


def test_single_crossing_validates_and_traces():
    d = single_crossing()
    assert d.validate() == []
    m, loops = d.trace()
    # the (s+3) mod 6 rule forces opposite endpoints
    assert m.as_dict() == {0: 3, 2: 5, 4: 1}
    assert loops == []


def test_orientation_clash_detected():
    # join two source ports: B0 (even, source) and C0.1 (odd, source)
    edges = [(('b', 0), ('c', 0, 1)), (('b', 1), ('c', 0, 0)),
             (('b', 2), ('c', 0, 2)), (('b', 3), ('c', 0, 3)),
             (('b', 4), ('c', 0, 4)), (('b', 5), ('c', 0, 5))]
    d = TripleDiagram.from_edge_list(3, [0], edges)
    assert any("orientation clash" in v for v in d.validate())


def test_uncovered_port_detected():
    d = TripleDiagram(1, (), {('b', 0): ('b', 1), ('b', 1): ('b', 0)})
    assert d.validate() == []
    d2 = TripleDiagram(1, (0,), {('b', 0): ('b', 1), ('b', 1): ('b', 0)})
    assert any("uncovered" in v for v in d2.validate())


def test_single_crossing_faces_alternate():
    d = single_crossing()
    faces = d.faces()
    assert len(faces) == 6
    assert sorted(f.color for f in faces) == ['black'] * 3 + ['white'] * 3
    assert all(f.boundary for f in faces)
    # every edge borders one black and one white face
    for p, q in d.edge_list():
        c1 = d.face_of(p).color
        c2 = d.face_of(q).color
        assert {c1, c2} == {'black', 'white'}


def test_nested_arcs_faces():
    d = nested_arcs()
    assert d.validate() == []
    assert len(d.faces()) == 4


def test_face_count_matches_euler(rotation3):
    # interior faces of a connected diagram satisfy E - V + 1 with the
    # boundary collapsed to a point: faces = edges - crossings + 1
    d = standard_diagram(rotation3)
    e = len(d.edge_list())
    v = d.crossing_count()
    assert len(d.faces()) == e - v + 1


def test_trace_agreement_between_tilings_of_square():
    from tricross import Region, enumerate_tilings, tiling_to_diagram
    tilings = enumerate_tilings(Region.rectangle(2, 2))
    assert len(tilings) == 2
    m1 = tiling_to_diagram(tilings[0]).trace()[0]
    m2 = tiling_to_diagram(tilings[1]).trace()[0]
    assert m1 == m2
    assert tiling_to_diagram(tilings[0]).trace()[1] == []


def test_is_connected_cases():
    assert nested_arcs().is_connected()
    d = nested_arcs().with_loops({nested_arcs().faces()[0].key: 1})
    assert not d.is_connected()
    # a crossing-bearing closed component: three loops through one crossing
    island = TripleDiagram.from_edge_list(
        0, [5], [(('c', 5, 1), ('c', 5, 0)), (('c', 5, 3), ('c', 5, 4)),
                 (('c', 5, 5), ('c', 5, 2))])
    assert island.validate() == []
    assert not island.is_connected()


def test_canonical_key_invariant_under_relabeling():
    d1 = single_crossing()
    d2 = TripleDiagram.from_edge_list(
        3, [17], [(('b', i), ('c', 17, i)) for i in range(6)])
    assert d1.canonical_key() == d2.canonical_key()
    # and under even slot rotation
    d3 = TripleDiagram.from_edge_list(
        3, [0], [(('b', i), ('c', 0, (i + 2) % 6)) for i in range(6)])
    assert d3.validate() == []
    assert d1.canonical_key() == d3.canonical_key()


def test_canonical_key_separates_22_pair():
    # the two sides of the move template are distinct diagrams
    from tricross.reduce import pattern_template
    left, _, right = pattern_template('a', 1)
    assert left.canonical_key() != right.canonical_key()
    assert left.trace()[0] == right.trace()[0]


def test_canonical_key_empty_sentinel():
    assert empty_diagram().canonical_key() == "n=0\x1f\x1f\x1f"


def test_trace_total_bijection_exhaustive():
    for n in range(5):
        for m in all_matchings(n):
            d = standard_diagram(m)
            traced, loops = d.trace()
            assert traced == m and not loops


def test_port_string_round_trip():
    for port in [('b', 0), ('b', 11), ('c', 3, 5), ('c', 0, 0)]:
        assert parse_port(port_str(port)) == port


def test_sigma_alpha_orbits_cover_all_darts(rotation3):
    d = standard_diagram(rotation3)
    darts = set(d.all_darts())
    seen = set()
    for f in d.faces():
        seen.update(f.darts)
    outer = set(('-', i) for i in range(2 * d.n))
    assert seen | outer == darts
