import random
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from oracles import quotient_dimensions
from quiverlab.algebra import (Inadmissible, NonMinimalPresentationWarning, NotFiniteDimensional,
                               Presentation, PresentationError, Relation, cartan_matrix, compute_basis,
                               idempotent_algebra, minimality_check, precedes_I, relation,
                               socle_and_radical, symmetry_diagnostics)
from quiverlab.corpus import corpus_entries
from quiverlab.fields import PrimeField
from quiverlab.homology import period_of_simple
from quiverlab.quiver import Quiver

LOOP = Quiver.from_arrows([("x", "1", "1")])
TWO = Quiver.from_arrows([("a", "1", "2"), ("b", "2", "1")])
PRESENTATIONS = [e.value for e in corpus_entries() if hasattr(e.value, "relations")]


def pres(q, rels, bound, truncate=False):
    return Presentation(q, tuple(relation(q, r, "r%d" % k) for k, r in enumerate(rels)), bound, truncate)


def test_relation_validation():
    with pytest.raises(PresentationError):
        relation(TWO, [(1, "a.b"), (1, "b.a")])
    with pytest.raises(PresentationError):
        relation(TWO, "a")
    with pytest.raises(PresentationError):
        Relation(((0, TWO.path(("a", "b"))),))


def test_bound_below_two_rejected():
    with pytest.raises(Inadmissible):
        Presentation(LOOP, (), 1)


def test_loop_square_zero():
    B = compute_basis(pres(LOOP, ["x.x"], 2))
    assert [B.label(i) for i in range(B.dim)] == ["e_1", "x"]
    assert cartan_matrix(B).as_lists() == [[2]]


def test_two_cycle_basis_and_cartan():
    B = compute_basis(pres(TWO, ["a.b.a", "b.a.b"], 3))
    assert B.dim == 6
    assert sorted(B.label(i) for i in range(6)) == sorted(["e_1", "e_2", "a", "b", "a.b", "b.a"])
    assert cartan_matrix(B).as_lists() == [[2, 1], [1, 2]]


def test_quaternion_dimension(entry):
    assert compute_basis(entry("quaternion_local")).dim == 8


def test_certify_mode_detects_unbounded_algebra():
    with pytest.raises(NotFiniteDimensional):
        compute_basis(pres(LOOP, [], 3))
    # the same data with an explicit truncation is finite
    assert compute_basis(pres(LOOP, [], 3, truncate=True)).dim == 3


def test_inadmissible_relation():
    q = Quiver.from_arrows([("x", "1", "1"), ("y", "1", "1")])
    # x.y - y.x together with x.x - x.y.y etc. never kills a length-one path; force one instead
    p = pres(q, [[(1, "x.x"), (-1, "y.y")], [(1, "x.y"), (1, "y.x")]], 3, truncate=True)
    assert compute_basis(p).dim > 0
    with pytest.raises(PresentationError):
        relation(q, [(1, "x"), (1, "y")])


def test_precedes():
    q = Quiver.from_arrows([("a", "1", "2"), ("b", "2", "3"), ("c", "1", "4"), ("d", "4", "3"), ("e", "4", "4")])
    p = pres(q, [[(1, "a.b"), (-1, "c.d")]], 3, truncate=True)
    assert precedes_I(p, q.path(("a", "b")))
    assert not precedes_I(p, q.path(("c", "e")))


def test_precedes_warns_on_redundant_generators(entry):
    p = entry("quaternion_local")
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        assert precedes_I(p, p.quiver.path(("x", "x")))
    assert any(issubclass(x.category, NonMinimalPresentationWarning) for x in w)


def test_minimality_verdicts(entry):
    v = dict(minimality_check(pres(LOOP, ["x.x", "x.x.x"], 3)))
    assert v == {"r0": "minimal", "r1": "redundant"}
    assert set(dict(minimality_check(pres(TWO, ["a.b.a", "b.a.b"], 3))).values()) == {"minimal"}
    quat = dict(minimality_check(entry("quaternion_local")))
    assert quat == {"r1": "minimal", "r2": "minimal", "r3": "redundant", "r4": "redundant"}


def test_socles(entry):
    L = compute_basis(pres(LOOP, ["x.x"], 2))
    assert [L.format(x) for x in socle_and_radical(L).right_socle["1"]] == ["x"]
    B = compute_basis(pres(TWO, ["a.b.a", "b.a.b"], 3))
    s = socle_and_radical(B)
    assert [B.format(x) for x in s.right_socle["1"]] == ["a.b"]
    assert [B.format(x) for x in s.right_socle["2"]] == ["b.a"]
    Q = compute_basis(entry("quaternion_local"))
    soc = socle_and_radical(Q).right_socle["1"]
    assert len(soc) == 1 and all(len(Q.elements[k]) == 3 for k in soc[0])


def test_symmetry_diagnostics():
    assert symmetry_diagnostics(compute_basis(pres(TWO, ["a.b.a", "b.a.b"], 3))).passed
    assert symmetry_diagnostics(compute_basis(pres(LOOP, ["x.x.x"], 3))).passed
    a2 = Quiver.from_arrows([("a", "1", "2")])
    rep = symmetry_diagnostics(compute_basis(Presentation(a2, (), 2, truncate=True)))
    assert "socle_matches_top" in rep.failed()


def test_idempotent_algebra(entry):
    p = entry("three_cycle_len4")
    B = compute_basis(p)
    A = idempotent_algebra(p, B, ["1", "2"])
    assert A.dim == 6
    assert A.gabriel == {("1", "2"): 1, ("2", "1"): 1}
    assert A.product("a", "b.c", "a") == {}
    assert idempotent_algebra(p, B, p.quiver.vertices).dim == B.dim
    L = pres(LOOP, ["x.x"], 2)
    assert idempotent_algebra(L, compute_basis(L), ["1"]).dim == 2


def test_prime_field_basis_matches_rational(entry):
    p = entry("quaternion_local")
    assert compute_basis(p, PrimeField(5)).dim == 8


@pytest.mark.parametrize("p", PRESENTATIONS, ids=lambda p: "%d-vertices" % len(p.quiver.vertices))
def test_cartan_matches_dense_oracle(p):
    B = compute_basis(p)
    C = cartan_matrix(B)
    dims = quotient_dimensions(p)
    for a in p.quiver.vertices:
        for b in p.quiver.vertices:
            assert C[a, b] == dims[(a, b)]
        assert sum(C[a, b] for b in p.quiver.vertices) == C.row(a).size


@pytest.mark.parametrize("p", PRESENTATIONS, ids=lambda p: "%d-vertices" % len(p.quiver.vertices))
def test_relations_reduce_to_zero_and_unit(p):
    B = compute_basis(p)
    for r in p.relations:
        tot = {}
        for c, path in r.terms:
            for k, v in B.normal_form(path).items():
                tot[k] = tot.get(k, 0) + c * v
        assert all(v == 0 for v in tot.values())
    one = B.unit()
    for i in range(B.dim):
        assert B.mul(one, {i: 1}) == {i: 1} == B.mul({i: 1}, one)


@pytest.mark.parametrize("p", PRESENTATIONS, ids=lambda p: "%d-vertices" % len(p.quiver.vertices))
def test_associativity_random_triples(p):
    B = compute_basis(p)
    rng = random.Random(1)
    for _ in range(1000):
        i, j, k = (rng.randrange(B.dim) for _ in range(3))
        lhs = B.mul(B.mul({i: 1}, {j: 1}), {k: 1})
        rhs = B.mul({i: 1}, B.mul({j: 1}, {k: 1}))
        assert lhs == rhs


def test_symmetric_entries_have_symmetric_cartan():
    for e in corpus_entries():
        if "symmetric" in e.tags:
            B = compute_basis(e.value)
            assert symmetry_diagnostics(B).passed
            assert cartan_matrix(B).is_symmetric()


def test_cartan_block_shape_at_period_four_one_vertex():
    # rows (i, j, x) for x -> i -> j with S_i of period four
    for e in corpus_entries():
        if "symmetric" not in e.tags:
            continue
        p = e.value
        B = compute_basis(p)
        C = cartan_matrix(B)
        q = p.quiver
        for i in q.vertices:
            if len(q.in_arrows(i)) != 1 or len(q.out_arrows(i)) != 1 or period_of_simple(B, i, 4) != 4:
                continue
            x, j = q.in_arrows(i)[0].source, q.out_arrows(i)[0].target
            assert C[i, j] == C[i, x] and C[j, i] == C[x, i]
            assert C[j, j] == C[j, x] == C[x, j] == C[x, x]


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 4), st.integers(2, 5))
def test_truncated_cycles_match_oracle(n, m):
    q = Quiver.from_arrows([("a%d" % k, str(k), str(k % n + 1)) for k in range(1, n + 1)])
    p = Presentation(q, (), m, truncate=True)
    B = compute_basis(p)
    assert B.dim == n * m
    dims = quotient_dimensions(p)
    assert all(cartan_matrix(B)[a, b] == d for (a, b), d in dims.items())
