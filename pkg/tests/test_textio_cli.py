"""Text formats and the command-line surface."""

import random
import subprocess
import sys
from pathlib import Path

import pytest

from tricross import (Matching, standard_diagram, Region, enumerate_tilings,
                      tiling_to_diagram, enumerate_component, inflate,
                      to_standard)
from tricross import textio
from tricross.render import render_diagram, render_tiling, RenderSpec

from conftest import all_matchings

PKG = Path(__file__).resolve().parent.parent


def run_cli(*args, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "tricross.cli", *args],
        input=stdin, capture_output=True, text=True,
        cwd=str(PKG), env={"PYTHONPATH": str(PKG / "src"), "PATH": "/usr/bin:/bin"})


def test_diagram_roundtrip_exhaustive_small():
    for n in range(5):
        for m in all_matchings(n):
            d = standard_diagram(m)
            text = textio.write_diagram(d)
            back = textio.read_diagram(text)
            assert back.canonical_key() == d.canonical_key()
            assert textio.write_diagram(back) == text


def test_diagram_roundtrip_with_loops(rotation3):
    from tricross import add_loop
    d = standard_diagram(rotation3)
    d = add_loop(d, d.faces()[3].key)
    text = textio.write_diagram(d)
    back = textio.read_diagram(text)
    assert back.canonical_key() == d.canonical_key()


def test_matching_roundtrip():
    for n in range(5):
        for m in all_matchings(n):
            assert textio.read_matching(textio.write_matching(m)) == m


def test_matching_parse_errors():
    with pytest.raises(textio.ParseError):
        textio.read_matching("matching v1\nn 2\npair 0 1\npair 2 1\n")
    with pytest.raises(textio.ParseError):
        textio.read_matching("wrong header\n")


def test_region_tiling_roundtrip():
    region = Region.rectangle(4, 2)
    assert textio.read_region(textio.write_region(region)).squares \
        == region.squares
    for t in enumerate_tilings(region):
        assert textio.read_tiling(textio.write_tiling(t)) == t


def test_ascii_inputs():
    region = textio.read_ascii_region("##\n##\n")
    assert len(region) == 4
    tiling = textio.read_ascii_tiling("ab\nab\n")
    assert len(tiling.dominoes) == 2
    with pytest.raises(ValueError):
        textio.read_ascii_tiling("aa\naa\n")


def test_movelog_roundtrip():
    rng = random.Random(31)
    m = Matching.from_dict(4, {0: 5, 2: 7, 4: 1, 6: 3})
    d0 = standard_diagram(m)
    d, _ = inflate(d0, 2, 1, 3, rng)
    final, log = to_standard(d)
    text = textio.write_movelog(d, log)
    parsed, end = textio.read_movelog(text, d)
    assert end.canonical_key() == final.canonical_key()
    assert [mv.kind for mv in parsed.moves] == [mv.kind for mv in log.moves]


def test_movegraph_format():
    m = tiling_to_diagram(
        enumerate_tilings(Region.rectangle(4, 2))[0]).trace()[0]
    g = enumerate_component(m)
    text = textio.write_movegraph(g)
    lines = text.splitlines()
    assert lines[0] == "movegraph v1"
    assert sum(1 for l in lines if l.startswith("v ")) == 5
    assert all(len(l.split()) == 4 for l in lines if l.startswith("e "))


def test_render_outputs_svg(rotation3):
    d = standard_diagram(rotation3)
    svg = render_diagram(d, RenderSpec(shade_faces=True))
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    t = enumerate_tilings(Region.rectangle(2, 2))[0]
    assert render_tiling(t).startswith("<svg")
    with pytest.raises(ValueError):
        render_diagram(d, RenderSpec(size=-1))


def test_cli_count_and_roundtrip(tmp_path):
    mfile = tmp_path / "m.txt"
    mfile.write_text(textio.write_matching(
        Matching.from_dict(3, {0: 3, 2: 5, 4: 1})))
    out = run_cli("count", "--in", str(mfile))
    assert out.returncode == 0 and out.stdout.strip() == "1"
    dfile = tmp_path / "d.txt"
    out = run_cli("standard", "--in", str(mfile), "--out", str(dfile))
    assert out.returncode == 0
    out = run_cli("trace", "--in", str(dfile))
    assert out.returncode == 0
    assert out.stdout == mfile.read_text()


def test_cli_determinism(tmp_path):
    region = tmp_path / "r.txt"
    region.write_text(textio.write_region(Region.rectangle(4, 2)))
    a = run_cli("domino", "enumerate", "--in", str(region))
    b = run_cli("domino", "enumerate", "--in", str(region))
    assert a.returncode == 0 and a.stdout == b.stdout
    assert a.stderr.strip() == "5 tilings"


def test_cli_cluster_seeded(tmp_path):
    region = tmp_path / "r.txt"
    region.write_text(textio.write_region(Region.rectangle(4, 2)))
    til = run_cli("domino", "enumerate", "--in", str(region))
    first = "\n".join(til.stdout.splitlines()[:5]) + "\n"
    tfile = tmp_path / "t.txt"
    tfile.write_text(first)
    dfile = tmp_path / "dd.txt"
    assert run_cli("domino", "dual", "--in", str(tfile),
                   "--out", str(dfile)).returncode == 0
    r1 = run_cli("cluster", "--in", str(dfile), "--walk", "10",
                 "--seed", "3")
    r2 = run_cli("cluster", "--in", str(dfile), "--walk", "10",
                 "--seed", "3")
    assert r1.returncode == 0 and r1.stdout == r2.stdout
    assert "all_laurent=True" in r1.stdout


def test_cli_reduce_and_minimal(tmp_path):
    mfile = tmp_path / "m.txt"
    mfile.write_text(textio.write_matching(
        Matching.from_dict(3, {0: 3, 2: 5, 4: 1})))
    dfile = tmp_path / "d.txt"
    run_cli("standard", "--in", str(mfile), "--out", str(dfile))
    out = run_cli("minimal", "--in", str(dfile))
    assert out.stdout.splitlines()[0] == "minimal"
    sfile = tmp_path / "s.txt"
    lfile = tmp_path / "log.txt"
    out = run_cli("reduce", "--in", str(dfile), "--out", str(sfile),
                  "--log", str(lfile))
    assert out.returncode == 0
    assert lfile.read_text().splitlines()[0] == "movelog v1"


def test_cli_error_is_structured(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("matching v1\nn 2\npair 0 0\n")
    out = run_cli("count", "--in", str(bad))
    assert out.returncode == 2
    assert out.stderr.startswith("error: ")
