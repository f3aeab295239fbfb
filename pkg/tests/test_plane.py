"""Plane constructions checked against independent pair-coverage oracles,
plus serialization round-trips."""

import itertools
import json
from collections import Counter

import pytest

from collinea.algebra import field_make
from collinea.errors import NotAPlane, ParseError
from collinea.plane import (
    AffinePlane,
    ProjectivePlane,
    affine_plane,
    delete_line,
    dual_plane,
    load_plane,
    parallel_classes,
    projective_plane,
    save_plane,
    validate,
)

ORDERS = [2, 3, 4, 5, 7, 8, 9]


def _pair_counts(lines):
    c = Counter()
    for ln in lines:
        for pair in itertools.combinations(sorted(ln), 2):
            c[pair] += 1
    return c


@pytest.mark.parametrize("q", ORDERS)
def test_affine_construction(q):
    pl = affine_plane(field_make(q))
    assert pl.n_points == q * q
    assert len(pl.lines) == q * q + q
    assert all(len(ln) == q for ln in pl.lines)
    assert len(pl.parallel_classes) == q + 1
    # oracle: every point pair on exactly one line
    counts = _pair_counts(pl.lines)
    assert len(counts) == q * q * (q * q - 1) // 2
    assert set(counts.values()) == {1}
    for cls in pl.parallel_classes:
        pts = sorted(p for j in cls for p in pl.lines[j])
        assert pts == list(range(q * q))
    assert validate(pl).ok


@pytest.mark.parametrize("q", ORDERS)
def test_projective_construction(q):
    pp = projective_plane(field_make(q))
    assert pp.n_points == q * q + q + 1
    assert len(pp.lines) == q * q + q + 1
    assert all(len(ln) == q + 1 for ln in pp.lines)
    counts = _pair_counts(pp.lines)
    n = pp.n_points
    assert len(counts) == n * (n - 1) // 2
    assert set(counts.values()) == {1}
    for i, j in itertools.combinations(range(len(pp.lines)), 2):
        assert len(set(pp.lines[i]) & set(pp.lines[j])) == 1
    for p in range(n):
        assert len(pp.lines_through(p)) == q + 1
    assert validate(pp).ok


def test_small_plane_sizes():
    assert len(projective_plane(field_make(2)).lines) == 7  # Fano
    assert len(projective_plane(field_make(3)).lines) == 13
    assert len(projective_plane(field_make(5)).lines) == 31
    assert len(affine_plane(field_make(3)).lines) == 12
    assert len(affine_plane(field_make(9)).lines) == 90


@pytest.mark.parametrize("q", [3, 5, 7])
def test_delete_infinity_line_recovers_affine(q):
    """Dropping the z=0 line (index 0 by the coefficient enumeration) leaves
    exactly the affine plane, point for point."""
    f = field_make(q)
    pp = projective_plane(f)
    assert set(pp.lines[0]) == set(range(q * q, q * q + q + 1))
    af = delete_line(pp, 0)
    ag = affine_plane(f)
    assert validate(af).ok
    # the surviving points (x, y, 1) already sit at index x*q + y, so the
    # identification is the identity map
    assert {frozenset(ln) for ln in af.lines} == {frozenset(ln) for ln in ag.lines}
    to_sets = lambda pl: {
        frozenset(frozenset(pl.lines[j]) for j in cls) for cls in pl.parallel_classes
    }
    assert to_sets(af) == to_sets(ag)


def test_delete_any_line_gives_affine():
    pp = projective_plane(field_make(3))
    for i in range(len(pp.lines)):
        af = delete_line(pp, i)
        assert len(af.lines) == 12
        assert validate(af).ok
    with pytest.raises(IndexError):
        delete_line(pp, 13)


def test_delete_line_keeps_labels():
    pp = projective_plane(field_make(3))
    pp2 = ProjectivePlane(3, pp.lines, {0: "at-infinity", 5: "kept"}, "demo")
    af = delete_line(pp2, 0)
    assert "at-infinity" in af.provenance
    assert "kept" in af.labels.values()


@pytest.mark.parametrize("q", [3, 5, 9])
def test_parallel_classes_reproduce_slope_grouping(q):
    pl = affine_plane(field_make(q))
    assert parallel_classes(pl.lines, q) == pl.parallel_classes


def test_parallel_classes_rejects_broken_input():
    pl = affine_plane(field_make(3))
    with pytest.raises(NotAPlane):
        parallel_classes(pl.lines[:-1], 3)
    doubled = list(pl.lines)
    doubled[1] = doubled[0]
    with pytest.raises(NotAPlane):
        parallel_classes(doubled, 3)


def test_validate_flags_flipped_incidence():
    pp = projective_plane(field_make(2))
    lines = [list(ln) for ln in pp.lines]
    lines[0][0] = (lines[0][0] + 1) % 7  # corrupt one incidence
    bad = ProjectivePlane(2, tuple(tuple(sorted(ln)) for ln in lines))
    rep = validate(bad)
    assert not rep.ok
    assert any("0 lines" in msg for msg in rep.failures)


def test_save_load_round_trip():
    ag = affine_plane(field_make(5))
    assert load_plane(save_plane(ag)) == ag
    pp = projective_plane(field_make(3))
    assert load_plane(save_plane(pp)) == pp
    tagged = AffinePlane(
        ag.order, ag.lines, ag.parallel_classes, {2: "special"}, "from construction"
    )
    back = load_plane(save_plane(tagged))
    assert back.labels == {2: "special"}
    assert back.provenance == "from construction"


def test_load_rejects_truncated_file():
    blob = save_plane(affine_plane(field_make(3)))
    with pytest.raises(ParseError):
        load_plane(blob[: len(blob) // 2])


def test_load_rejects_duplicate_line():
    obj = json.loads(save_plane(affine_plane(field_make(3))))
    obj["lines"][1] = obj["lines"][0]
    del obj["parallel_classes"]
    with pytest.raises(NotAPlane):
        load_plane(json.dumps(obj))


def test_load_rejects_schema_problems():
    with pytest.raises(ParseError):
        load_plane(b"\xff\xfe")
    with pytest.raises(ParseError):
        load_plane(json.dumps([1, 2, 3]))
    with pytest.raises(ParseError):
        load_plane(json.dumps({"type": "moebius", "order": 3, "points": 9, "lines": []}))
    obj = json.loads(save_plane(affine_plane(field_make(3))))
    del obj["order"]
    with pytest.raises(ParseError):
        load_plane(json.dumps(obj))
    obj = json.loads(save_plane(affine_plane(field_make(3))))
    obj["points"] = 10
    with pytest.raises(NotAPlane):
        load_plane(json.dumps(obj))


def test_dual_plane_involution():
    pp = projective_plane(field_make(3))
    dd = dual_plane(pp)
    assert validate(dd).ok
    assert dual_plane(dd).lines == pp.lines
