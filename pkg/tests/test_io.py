import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plane_spanner.errors import CoordinateSpaceExhausted, GeneralPositionViolation, InputError
from plane_spanner.geometry import MAX_COORD
from plane_spanner.io import (
    GraphFile,
    InstanceFile,
    build,
    gen,
    parse_graph,
    parse_instance,
    perturb,
    worked_example,
)


def test_gen_single_point():
    inst = gen(1, 7)
    assert len(inst.points) == 1


def test_gen_is_deterministic():
    assert gen(50, 3, 1000).dumps() == gen(50, 3, 1000).dumps()
    assert gen(50, 3, 1000).dumps() != gen(50, 4, 1000).dumps()


@pytest.mark.parametrize("n,max_coord", [(29, MAX_COORD), (29, 40), (200, 250), (11, 10)])
def test_gen_general_position(n, max_coord):
    pts = gen(n, 5, max_coord).points
    assert len({x for x, _ in pts}) == n and len({y for _, y in pts}) == n
    assert all(0 <= c <= max_coord for p in pts for c in p)
    gen(n, 5, max_coord).pointset()


def test_gen_exhausted():
    with pytest.raises(CoordinateSpaceExhausted):
        gen(12, 0, 10)


@pytest.mark.parametrize("n,max_coord", [(0, 10), (3, MAX_COORD + 1), (3, -1)])
def test_gen_bad_arguments(n, max_coord):
    with pytest.raises(InputError):
        gen(n, 0, max_coord)


def test_worked_example_loads():
    inst = worked_example()
    assert len(inst.points) == 29
    inst.pointset()


def test_instance_round_trip():
    text = gen(20, 1).dumps()
    assert parse_instance(text).dumps() == text
    assert json.loads(text)["version"] == 1


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(-MAX_COORD, MAX_COORD), st.integers(-MAX_COORD, MAX_COORD)), max_size=20))
def test_instance_round_trip_property(pts):
    inst = InstanceFile(tuple(pts))
    assert parse_instance(inst.dumps()) == inst
    # non-canonical whitespace normalises to the same bytes
    loose = json.dumps({"points": [list(p) for p in pts], "version": 1}, indent=3)
    assert parse_instance(loose).dumps() == inst.dumps()


@pytest.mark.parametrize("text", [
    "not json",
    "[]",
    '{"version": 2, "points": []}',
    '{"version": 1}',
    '{"version": 1, "points": [[1.5, 2]]}',
    '{"version": 1, "points": [[1, 2, 3]]}',
    '{"version": 1, "points": [[true, 2]]}',
])
def test_bad_instance_files(text):
    with pytest.raises(InputError):
        parse_instance(text)


def test_graph_round_trip(example):
    g = build(worked_example(), "h4")
    assert parse_graph(g.dumps()) == g
    assert parse_graph(g.dumps()).dumps() == g.dumps()


@pytest.mark.parametrize("kw", [
    dict(edges=((1, 0),)),
    dict(edges=((0, 1), (0, 1))),
    dict(edges=((0, 2), (0, 1))),
    dict(edges=((0, 5),)),
    dict(cutoffs=((9, 0),)),
    dict(stage="h5"),
])
def test_graph_file_rejects_non_canonical(kw):
    args = dict(n=3, stage="h4", edges=((0, 1),))
    args.update(kw)
    with pytest.raises(InputError):
        GraphFile(**args)


def test_build_stages_on_example(example):
    inst = worked_example()
    t = build(inst, "delaunay")
    y = build(inst, "y4")
    assert len(y.edges) == len(t.edges) - 3
    h4 = build(inst, "h4")
    assert (1, 8) in h4.shortcuts
    assert h4.cutoffs == ((14, 13),)
    assert set(h4.edges) == example.H4.edges
    assert build(inst, "h8").shortcuts == ()


@pytest.mark.parametrize("stage", ["delaunay", "y4", "h8", "h6", "h4"])
def test_build_two_points(stage):
    g = build(InstanceFile(((0, 0), (4, 9))), stage)
    assert g.edges + g.shortcuts == ((0, 1),)


def test_build_reports_stage_of_failure():
    P = InstanceFile(((0, 3), (3, 10), (10, 7), (7, 0)))
    with pytest.raises(InputError) as err:
        build(P, "h4")
    assert err.value.stage == "delaunay"


def test_perturb_repairs_ties():
    inst = InstanceFile(((0, 0), (0, 5), (3, 5), (3, 3)))
    with pytest.raises(GeneralPositionViolation):
        inst.pointset()
    fixed = perturb(inst, 1)
    fixed.pointset()
    assert perturb(inst, 1) == fixed
    # strict order between distinct coordinates survives
    for (a, b), (c, d) in zip(inst.points, fixed.points):
        for (e, f), (g, h) in zip(inst.points, fixed.points):
            if a < e:
                assert c < g
            if b < f:
                assert d < h


def test_perturb_out_of_range():
    with pytest.raises(CoordinateSpaceExhausted):
        perturb(InstanceFile(((MAX_COORD, 0), (MAX_COORD, 1))), 0)
