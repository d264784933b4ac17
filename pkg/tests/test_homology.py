import pytest

from oracles import brute_isomorphic
from quiverlab.algebra import cartan_matrix, compute_basis
from quiverlab.corpus import corpus_entries
from quiverlab.fields import PrimeField
from quiverlab.homology import (InconclusiveIsomorphism, ZeroModuleError, hom_space, is_isomorphic,
                                isomorphism_verdict, kernel, period4_diagnostics, period_of_simple,
                                projective_cover, projective_module, simple_module, syzygy, syzygy_chain)

PRESENTATIONS = [(e.name, e.value) for e in corpus_entries() if hasattr(e.value, "relations")]


def basis_of(entry, name, field=None):
    return compute_basis(entry(name)) if field is None else compute_basis(entry(name), field)


def test_projective_and_simple_dimensions(entry):
    B = basis_of(entry, "loop_x2")
    assert projective_module(B, "1").dim == 2 and simple_module(B, "1").dim == 1
    B = basis_of(entry, "two_cycle_len3")
    assert projective_module(B, "1").dimension_vector().entries == (2, 1)
    assert projective_module(basis_of(entry, "quaternion_local"), "1").dim == 8


def test_cover_of_simple_and_of_radical(entry):
    B = basis_of(entry, "two_cycle_len3")
    cov = projective_cover(simple_module(B, "1"))
    assert cov.multiplicities == {"1": 1, "2": 0}
    rad = syzygy(simple_module(B, "1"))
    cov = projective_cover(rad)
    assert cov.multiplicities == {"1": 0, "2": 1}
    assert cov.surjection.commutes() and cov.surjection.is_surjective()


def test_projective_is_its_own_cover(entry):
    B = basis_of(entry, "quaternion_local")
    P = projective_module(B, "1")
    cov = projective_cover(P)
    assert cov.projective.dim == P.dim
    assert kernel(cov.surjection).dim == 0


def test_zero_module_has_no_cover(entry):
    B = basis_of(entry, "loop_x2")
    with pytest.raises(ZeroModuleError):
        projective_cover(syzygy(projective_module(B, "1")))


def test_loop_syzygy_returns_simple(entry):
    B = basis_of(entry, "loop_x2")
    S = simple_module(B, "1")
    assert is_isomorphic(syzygy(S), S)
    assert period_of_simple(B, "1", 3) == 1


def test_two_cycle_second_syzygy_is_the_other_simple(entry):
    B = basis_of(entry, "two_cycle_len3")
    ch = syzygy_chain(B, "1", 6)
    assert [str(m.dimension_vector()) for m in ch.modules] == ["(1,0)", "(1,1)", "(0,1)", "(1,1)", "(1,0)"]
    assert is_isomorphic(ch.modules[2], simple_module(B, "2"))
    assert not is_isomorphic(ch.modules[2], simple_module(B, "1"))
    assert ch.period == 4


def test_quaternion_fourth_syzygy(entry):
    B = basis_of(entry, "quaternion_local")
    ch = syzygy_chain(B, "1", 6)
    assert ch.period == 4
    assert ch.dims() == [1, 7, 9, 7, 1]


def test_three_cycle_period_six(entry):
    assert period_of_simple(basis_of(entry, "three_cycle_len4"), "1", 8) == 6
    assert period_of_simple(basis_of(entry, "three_cycle_len4"), "1", 4) is None


def test_kmax_must_be_positive(entry):
    with pytest.raises(ValueError):
        syzygy_chain(basis_of(entry, "loop_x2"), "1", 0)


def test_isomorphism_basics(entry):
    B = basis_of(entry, "two_cycle_len3")
    S1, S2 = simple_module(B, "1"), simple_module(B, "2")
    assert is_isomorphic(S1, S1)
    assert not is_isomorphic(S1, S2)
    assert isomorphism_verdict(S1, S2) == "not_isomorphic"


def test_inconclusive_is_reported_distinctly(entry):
    B = basis_of(entry, "quaternion_local")
    S = simple_module(B, "1")
    assert isomorphism_verdict(S, S, bound=1, max_trials=0) == "inconclusive"


def test_is_isomorphic_raises_when_inconclusive(entry):
    S = simple_module(basis_of(entry, "quaternion_local"), "1")
    with pytest.raises(InconclusiveIsomorphism):
        is_isomorphic(S, S, bound=1, max_trials=0)


@pytest.mark.parametrize("name", ["two_cycle_len3", "loop_x2"])
@pytest.mark.parametrize("p", [2, 3])
def test_isomorphism_agrees_with_exhaustive_search(entry, name, p):
    B = basis_of(entry, name, PrimeField(p))
    mods = []
    for v in B.quiver.vertices:
        ch = syzygy_chain(B, v, 4)
        mods.extend(ch.modules)
        mods.append(projective_module(B, v))
    mods = [m for m in mods if all(d <= 2 for d in m.dims.values())]
    for M in mods:
        for N in mods:
            assert (isomorphism_verdict(M, N) == "isomorphic") == brute_isomorphic(M, N, p)


@pytest.mark.parametrize("name,pres", PRESENTATIONS, ids=[n for n, _ in PRESENTATIONS])
def test_syzygy_dimension_formula(name, pres):
    B = compute_basis(pres)
    C = cartan_matrix(B)
    for v in pres.quiver.vertices:
        ch = syzygy_chain(B, v, 3)
        for M, N in zip(ch.modules, ch.modules[1:]):
            assert M.relation_violations() == []
            cov = N.cover
            expect = [sum(cov.multiplicities[w] * C[w, u] for w in pres.quiver.vertices) - M.dims[u]
                      for u in pres.quiver.vertices]
            assert list(N.dimension_vector().entries) == expect
            assert cov.surjection.commutes() and cov.surjection.is_surjective()


def test_hom_space_of_projective(entry):
    B = basis_of(entry, "two_cycle_len3")
    # Hom(P_1, M) is M e_1
    P = projective_module(B, "1")
    assert len(hom_space(P, P)) == cartan_matrix(B)["1", "1"]


def test_period4_diagnostics_quaternion(entry):
    r = period4_diagnostics(basis_of(entry, "quaternion_local"), "1")
    assert r.period == 4
    assert r.p_plus == r.p_minus and r.p_plus.entries == (16,)
    assert r.margin == 8
    assert r.left_identity and r.right_identity
    assert set(r.valid_choices) == {("x", "y"), ("y", "x")}


def test_period4_diagnostics_two_cycle(entry):
    B = basis_of(entry, "two_cycle_len3")
    for v in ("1", "2"):
        r = period4_diagnostics(B, v)
        assert r.balanced and r.left_identity and r.right_identity and r.margin == 0


def test_period4_requires_period_four(entry):
    B = basis_of(entry, "three_cycle_len4")
    with pytest.raises(ValueError):
        period4_diagnostics(B, "1")
    r = period4_diagnostics(B, "1", override=True, kmax=8)
    assert r.findings


def test_prime_field_periods(entry):
    assert period_of_simple(basis_of(entry, "quaternion_local", PrimeField(3)), "1", 5) == 4
