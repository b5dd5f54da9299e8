"""The trivial slice model, interchange laws and canonical-form morphisms."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import mat, q
from dvblab.dvb import (
    DVBElement,
    DVBMorphism,
    FiberMismatch,
    ShapeMismatch,
    TrivialDVB,
    check_interchange,
    dvb_from_json,
    dvb_to_json,
    morphism_compose,
    random_morphism,
)
from dvblab.sampling import make_rng

dims = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))


def E(a, b, c):
    return DVBElement(q(*a), q(*b), q(*c))


def one_dims():
    return TrivialDVB.of_dims(1, 1, 1)


def test_combine_A_example():
    D = one_dims()
    assert D.combine_A(2, E([1], [3], [5]), E([1], [1], [1])) == E([1], [7], [11])


def test_combine_B_example():
    D = one_dims()
    assert D.combine_B(3, E([1], [2], [0]), E([0], [2], [4])) == E([3], [2], [4])


def test_combine_identities(rng):
    D = TrivialDVB.of_dims(2, 3, 1)
    d1 = D.random_element(rng)
    assert D.combine_A(1, d1, D.zero_A(d1.a)) == d1
    assert D.combine_B(1, d1, D.zero_B(d1.b)) == d1
    d2 = D.random_over(rng, a=d1.a)
    assert D.combine_A(0, d1, d2) == d2
    d3 = D.random_over(rng, b=d1.b)
    assert D.combine_B(0, d1, d3) == d3


def test_combine_rejects_other_fibres():
    D = one_dims()
    with pytest.raises(FiberMismatch):
        D.combine_A(1, E([1], [0], [0]), E([2], [0], [0]))
    with pytest.raises(FiberMismatch):
        D.combine_B(1, E([0], [1], [0]), E([0], [2], [0]))


def test_core_embedding():
    D = one_dims()
    assert D.core_embed(q(0)) == E([0], [0], [0])
    assert D.core_embed(q(5)) == E([0], [0], [5])


def test_shape_checked():
    D = one_dims()
    with pytest.raises(ShapeMismatch):
        D.check(E([1, 2], [0], [0]))


def test_interchange_holds():
    rep = check_interchange(TrivialDVB.of_dims(2, 2, 3), 100, seed=3)
    assert rep.passed and len(rep.laws) == 8
    assert all(t.trials == 100 for t in rep.laws.values())
    assert check_interchange(TrivialDVB.of_dims(0, 0, 0), 10, seed=3).passed


class SignFlipped(TrivialDVB):
    """Mutation: the vertical combination over A subtracts instead of adding."""

    def combine_A(self, r, d1, d2):
        d = super().combine_A(r, d1, d2)
        return DVBElement(d.a, tuple(-x for x in d.b), tuple(-x for x in d.c))


def test_interchange_catches_corrupted_addition():
    base = TrivialDVB.of_dims(1, 1, 1)
    D = SignFlipped(base.A, base.B, base.C)
    rep = check_interchange(D, 20, seed=1)
    assert not rep.passed
    assert rep.first_failure() is not None and rep.first_failure().counterexample is not None


def test_morphism_identity_and_example():
    D = one_dims()
    d = E([1], [1], [1])
    assert DVBMorphism.identity(D).apply(d) == d
    phi = DVBMorphism(D, D, mat([[1]]), mat([[2]]), mat([[3]]), mat([[4]]))
    assert phi.apply(d) == E([1], [2], [7])


def test_morphism_composition_example():
    D = one_dims()
    second = DVBMorphism(D, D, mat([[1]]), mat([[2]]), mat([[3]]), mat([[4]]))
    first = DVBMorphism(D, D, mat([[1]]), mat([[1]]), mat([[1]]), mat([[0]]))
    comp = morphism_compose(second, first)
    assert comp.omega == mat([[4]])
    ident = DVBMorphism.identity(D)
    assert morphism_compose(second, ident).components() == second.components()


def test_json_round_trip():
    D = TrivialDVB.of_dims(2, 0, 3)
    assert dvb_from_json(dvb_to_json(D)).dims == (2, 0, 3)
    with pytest.raises(ValueError):
        dvb_from_json({"A": -1, "B": 0, "C": 0})


@settings(max_examples=40, deadline=None)
@given(dims, dims, st.integers(0, 2**32))
def test_composition_agrees_with_application(d1, d2, seed):
    rng = make_rng(seed)
    S, T = TrivialDVB.of_dims(*d1), TrivialDVB.of_dims(*d2)
    phi, psi = random_morphism(rng, S, T), random_morphism(rng, T, S)
    d = S.random_element(rng)
    assert morphism_compose(psi, phi).apply(d) == psi.apply(phi.apply(d))


@settings(max_examples=40, deadline=None)
@given(dims, st.integers(0, 2**32))
def test_morphisms_respect_both_structures(d1, seed):
    rng = make_rng(seed)
    S = TrivialDVB.of_dims(*d1)
    phi = random_morphism(rng, S, S)
    x = S.random_element(rng)
    y = S.random_over(rng, a=x.a)
    z = S.random_over(rng, b=x.b)
    assert phi.apply(S.combine_A(3, x, y)) == S.combine_A(3, phi.apply(x), phi.apply(y))
    assert phi.apply(S.combine_B(-2, x, z)) == S.combine_B(-2, phi.apply(x), phi.apply(z))


@settings(max_examples=30, deadline=None)
@given(dims, st.integers(0, 2**32))
def test_interchange_property(d, seed):
    assert check_interchange(TrivialDVB.of_dims(*d), 10, seed=seed).passed
