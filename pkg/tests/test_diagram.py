import pytest

from gamma4.diagram import (
    MalformedCode,
    NonKnot,
    NonPlanar,
    checkerboard,
    extract_faces,
    parse_pd,
)
from helpers import table

TREFOIL = "X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]"
FIGURE8 = "X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]"


def test_trefoil_parses_and_has_writhe_three():
    d = parse_pd(TREFOIL, "3_1")
    assert len(d.crossings) == 3
    assert abs(d.writhe()) == 3
    assert d.mirror().writhe() == -d.writhe()


def test_figure_eight_writhe_zero():
    assert parse_pd(FIGURE8).writhe() == 0


def test_pd_wrapper_and_whitespace_accepted():
    d = parse_pd("PD[X[1, 5, 2, 4], X[3,1,4,6], X[5,3,6,2]]")
    assert d.crossings == parse_pd(TREFOIL).crossings


def test_empty_code_is_unknot():
    d = parse_pd("")
    assert d.is_unknot and d.name == "0_1"
    assert len(extract_faces(d)) == 2


def test_malformed_text_rejected():
    with pytest.raises(MalformedCode):
        parse_pd("X[1,5,2,4],Y[3,1,4,6]")


def test_label_count_rejected():
    with pytest.raises(NonKnot):
        parse_pd("X[1,5,2,4],X[3,1,4,6],X[5,3,6,7]")


def test_two_component_link_rejected():
    hopf = "X[4,1,3,2],X[2,3,1,4]"
    with pytest.raises(NonKnot):
        parse_pd(hopf)


def test_mirror_is_an_involution():
    for row in list(table().values())[:40]:
        d = parse_pd(row.pd_code, row.record.name)
        assert d.mirror().mirror() == d


def test_relabeling_follows_the_knot():
    d = parse_pd(TREFOIL)
    n = d.edge_count
    for a, _, c, _ in d.crossings:
        assert c == a % n + 1


@pytest.mark.parametrize("name", ["10_1", "10_100", "10_161"])
def test_euler_characteristic_of_faces(name):
    d = parse_pd(table()[name].pd_code)
    faces = extract_faces(d)
    assert len(d.crossings) - d.edge_count + len(faces) == 2
    assert sum(len(f.corners) for f in faces) == 4 * len(d.crossings)


def test_corrupted_rotation_is_nonplanar():
    # swapping the over-strand labels of one crossing breaks planarity here
    d = parse_pd(table()["10_1"].pd_code)
    a, b, c, e = d.crossings[0]
    bad = type(d)(d.name, ((a, e, c, b),) + d.crossings[1:])
    with pytest.raises(NonPlanar):
        extract_faces(bad)


def test_colorings_partition_faces():
    d = parse_pd(FIGURE8)
    c0, c1 = checkerboard(d)
    assert set(c0.white_regions).isdisjoint(c1.white_regions)
    assert len(c0.white_regions) + len(c1.white_regions) == len(c0.faces)
    assert c0.eta[0] == 1


def test_alternating_diagrams_have_constant_weights():
    for row in table().values():
        if not row.record.alternating:
            continue
        for c in checkerboard(parse_pd(row.pd_code)):
            assert len(set(c.eta)) == 1, row.record.name
