import pytest
from hypothesis import given, settings, strategies as st

from oracles import all_paths, path_counts_by_adjacency
from quiverlab.corpus import spherical_quiver
from quiverlab.quiver import (Quiver, QuiverError, degree_profile, enumerate_paths, find_blocks,
                              is_biregular, validate_block)


def cycle(n):
    return Quiver.from_arrows([("a%d" % k, str(k), str(k % n + 1)) for k in range(1, n + 1)])


def test_invalid_quivers_rejected():
    with pytest.raises(QuiverError):
        Quiver(("1", "1"), ())
    with pytest.raises(QuiverError):
        Quiver(("1",), (("a", "1", "2"),))
    with pytest.raises(QuiverError):
        Quiver(("1",), (("a", "1", "1"), ("a", "1", "1")))


def test_connectivity_is_reported():
    q = Quiver(("1", "2", "3"), (("a", "1", "2"),))
    assert not q.is_connected()
    assert q.components() == [["1", "2"], ["3"]]


def test_profile_of_single_loop():
    p = degree_profile(Quiver.from_arrows([("x", "1", "1")]))["1"]
    assert (p.in_degree, p.out_degree, p.regularity) == (1, 1, "one_regular")


def test_four_cycle_is_one_regular_everywhere():
    assert {p.regularity for p in degree_profile(cycle(4)).values()} == {"one_regular"}
    assert is_biregular(cycle(4)).ok


def test_spherical_profile():
    prof = degree_profile(spherical_quiver())
    regs = sorted(p.regularity for p in prof.values())
    assert regs.count("one_regular") == 4 and regs.count("two_regular") == 2
    assert is_biregular(spherical_quiver()).ok


def test_out_degree_three_is_reported():
    q = Quiver.from_arrows([("a", "1", "2"), ("b", "1", "2"), ("c", "1", "2")])
    res = is_biregular(q)
    assert not res.ok and res.offenders == ["1", "2"]


def test_paths_of_a_loop():
    q = Quiver.from_arrows([("x", "1", "1")])
    assert [str(p) for p in enumerate_paths(q, 2)] == ["e_1", "x", "x.x"]


def test_paths_two_cycle_filtered():
    q = Quiver.from_arrows([("a", "1", "2"), ("b", "2", "1")])
    assert [str(p) for p in enumerate_paths(q, 2, "1", "1")] == ["e_1", "a.b"]


def test_paths_three_cycle_filtered():
    assert [str(p) for p in enumerate_paths(cycle(3), 3, "1", "1")] == ["e_1", "a1.a2.a3"]


def test_negative_length_rejected():
    with pytest.raises(ValueError):
        enumerate_paths(cycle(2), -1)


def test_v1_block_in_ambient_quiver():
    # i is 1-regular on a 2-cycle with x, and x is 2-regular through a loop
    q = Quiver.from_arrows([("g", "x", "i"), ("a", "i", "x"), ("l", "x", "x")])
    res = find_blocks(q)
    v1 = res.of_kind("V1")
    assert len(v1) == 1 and v1[0].black == {"i"}
    assert not res.uncovered


def test_spherical_blocks_cover_all_one_vertices():
    q = spherical_quiver()
    v2 = find_blocks(q).of_kind("V2")
    ones = {v for v, p in degree_profile(q).items() if p.regularity == "one_regular"}
    assert all(validate_block(q, b) == [] for b in v2)
    # every tie is reported; some two disjoint blocks cover the four 1-vertices
    assert any(a.black | b.black == ones for a in v2 for b in v2 if not a.black & b.black)
    assert {v for b in v2 for v in b.black} == ones


def test_standalone_four_cycle_has_no_valid_v2():
    res = find_blocks(cycle(4))
    assert res.of_kind("V2") == []
    assert sorted(res.uncovered) == ["1", "2", "3", "4"]
    # closed assignments exist but their outlets are never glued
    assert {b.kind for b in res.unglued} == {"V2"}
    assert len(res.unglued) == 2


def test_blocks_of_kinds_one_two_three():
    q = Quiver.from_arrows([("l", "w", "w"), ("m", "w", "w"), ("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")])
    kinds = [b.kind for b in find_blocks(q)]
    assert kinds.count("I") == 2 and kinds.count("III") == 1
    q2 = Quiver.from_arrows([("l", "b", "b"), ("o", "b", "w"), ("i", "w", "b"), ("p", "w", "c"), ("q", "c", "w")])
    b2 = find_blocks(q2).of_kind("II")
    assert len(b2) == 1 and "virtual_loop" in b2[0].flags


def test_coinciding_outlets_flagged():
    # V2 whose two white outlets are the same vertex w; w is 2-regular
    q = Quiver.from_arrows([("a", "w", "b1"), ("b", "b1", "w"), ("c", "w", "b2"), ("d", "b2", "w")])
    v2 = find_blocks(q).of_kind("V2")
    assert v2 and all("coinciding_outlets" in b.flags for b in v2)


@st.composite
def small_quivers(draw, max_v=5, max_a=9):
    n = draw(st.integers(1, max_v))
    m = draw(st.integers(0, max_a))
    arrows = [("e%d" % k, str(draw(st.integers(1, n))), str(draw(st.integers(1, n)))) for k in range(m)]
    return Quiver(tuple(str(k) for k in range(1, n + 1)), tuple(arrows))


@settings(max_examples=80, deadline=None)
@given(small_quivers(), st.integers(0, 4))
def test_path_count_matches_adjacency_powers(q, m):
    assert len(enumerate_paths(q, m)) == sum(path_counts_by_adjacency(q, m))
    assert sorted(str(p) for p in enumerate_paths(q, m) if p.arrows) == \
        sorted(".".join(p[2]) for p in all_paths(q, m) if p[2])


@settings(max_examples=80, deadline=None)
@given(small_quivers())
def test_degree_sums(q):
    prof = degree_profile(q)
    assert sum(p.in_degree for p in prof.values()) == len(q.arrows)
    assert sum(p.out_degree for p in prof.values()) == len(q.arrows)


@settings(max_examples=80, deadline=None)
@given(small_quivers())
def test_found_blocks_revalidate(q):
    res = find_blocks(q)
    for b in list(res) + list(res.unglued):
        assert validate_block(q, b) == []
