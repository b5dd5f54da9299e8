"""Doubling, combining, the generators-and-relations oracle and the two natural isomorphisms."""

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import mat, q
from dvblab.ansatz import double_linear_oracle, morphism_space_oracle
from dvblab.dvb import DVBElement, DVBMorphism, TrivialDVB, check_interchange, random_morphism
from dvblab.equivalence import (
    DoubledDVB,
    DoubledElement,
    Trivialization,
    check_class_relations,
    check_combining_well_defined,
    check_functor_laws,
    check_nat_pi,
    check_nat_t,
    combining,
    combining_on_morphism,
    combining_oracle,
    compare_with_oracle,
    doubling_on_morphism,
    nat_pi,
    nat_t,
)
from dvblab.exactla import Space, is_invertible
from dvblab.sampling import make_rng
from dvblab.seq import DVBSeq, SeqMorphism, random_seq, random_seq_morphism, split_seq

dims = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))


def E(a, b, c):
    return DVBElement(q(*a), q(*b), q(*c))


def one_seq():
    one = Space(1)
    return DVBSeq(one, one, one, mat([[1], [0]]), mat([[0, 1]]))


def test_doubled_membership():
    D = DoubledDVB(one_seq())
    assert D.is_member(DoubledElement(q(0, 6), q(2), q(3)))
    assert not D.is_member(DoubledElement(q(1, 5), q(2), q(3)))
    assert D.core_embed(q(1)) == DoubledElement(q(1, 0), q(0), q(0))


def test_split_membership():
    s = split_seq((2, 1, 1))
    D = DoubledDVB(s)
    a, b = q(2, 3), q(5)
    assert D.is_member(D.lift(a, b, q(0)))


def test_doubled_interchange():
    assert check_interchange(DoubledDVB(random_seq((2, 2, 1), make_rng(5))), 50, seed=5).passed


def test_trivialization_round_trip(rng):
    D = DoubledDVB(random_seq((2, 1, 2), rng))
    T = Trivialization(D)
    for _ in range(100):
        d = D.random_element(rng)
        assert T.backward(T.forward(d)) == d
        x = T.trivial.random_element(rng)
        assert T.forward(T.backward(x)) == x


def test_combining_dimension_and_classes():
    D = TrivialDVB.of_dims(2, 3, 1)
    assert combining(D).seq.Omega.dim == 7
    one = TrivialDVB.of_dims(1, 1, 1)
    assert combining(one).class_of(E([2], [3], [5])) == q(6, 5)


def test_class_relations(rng):
    assert check_class_relations(combining(TrivialDVB.of_dims(2, 2, 2)), rng)
    assert check_class_relations(combining(DoubledDVB(random_seq((1, 2, 2), rng))), rng)


def test_oracle_agrees():
    D = TrivialDVB.of_dims(2, 3, 1)
    orc = combining_oracle(D)
    assert orc.seq.Omega.dim == 7
    assert orc.class_of(E([0, 0], [0, 0, 0], [0])) == (0,) * 7
    assert compare_with_oracle(D, make_rng(0)).passed


def test_double_linear_oracle_example():
    rep = double_linear_oracle(TrivialDVB.of_dims(2, 3, 1))
    assert rep.ansatz_dim == 7 and rep.passed


def test_nat_t_examples():
    t = nat_t(TrivialDVB.of_dims(1, 1, 1))
    assert t(E([2], [3], [5])) == DoubledElement(q(6, 5), q(2), q(3))
    assert t(E([0], [0], [0])) == DoubledElement(q(0, 0), q(0), q(0))


def test_nat_pi_split_is_permutation():
    pi = nat_pi(split_seq((2, 2, 1)))
    rows = pi.matrix.matrix
    assert all(sorted(r) == [0] * (len(r) - 1) + [1] for r in rows)
    assert all(sorted(c) == [0] * (len(c) - 1) + [1] for c in zip(*rows))


def test_nat_pi_formula(rng):
    s = random_seq((2, 2, 2), rng)
    assert check_nat_pi(s, rng, random_seq_morphism(rng, s, s), trials=100).passed


def test_combining_on_morphism_example():
    D = TrivialDVB.of_dims(1, 1, 1)
    phi = DVBMorphism(D, D, mat([[1]]), mat([[2]]), mat([[3]]), mat([[4]]))
    m = combining_on_morphism(phi)
    assert m.varpi(q(1, 1)) == q(2, 7)
    assert m.check().passed
    assert combining_on_morphism(DVBMorphism.identity(D)) == SeqMorphism.identity(combining(D).seq)


def test_morphism_space_oracle():
    S, T = TrivialDVB.of_dims(1, 2, 1), TrivialDVB.of_dims(2, 1, 1)
    rep = morphism_space_oracle(S, T)
    assert rep.passed and rep.ansatz_dim == rep.canonical_dim


@settings(max_examples=25, deadline=None)
@given(dims, dims, st.integers(0, 2**32))
def test_naturality_and_functors(d1, d2, seed):
    rng = make_rng(seed)
    S, T = TrivialDVB.of_dims(*d1), TrivialDVB.of_dims(*d2)
    phi, psi = random_morphism(rng, S, T), random_morphism(rng, T, S)
    assert check_nat_t(S, rng, phi).passed
    assert check_combining_well_defined(phi, rng)
    s, t = random_seq(d1, rng), random_seq(d2, rng)
    m1, m2 = random_seq_morphism(rng, s, t), random_seq_morphism(rng, t, s)
    assert check_nat_pi(s, rng, m1).passed
    assert all(check_functor_laws(phi, psi, m1, m2, rng).values())


@settings(max_examples=25, deadline=None)
@given(dims, st.integers(0, 2**32))
def test_doubled_canonical_form_is_iso_for_invertible(d, seed):
    rng = make_rng(seed)
    s = random_seq(d, rng)
    m = random_seq_morphism(rng, s, s, invertible=True)
    assert is_invertible(m.varpi)
    assert doubling_on_morphism(m).canonical().is_iso()


@settings(max_examples=20, deadline=None)
@given(dims)
def test_dimension_law_property(d):
    assert combining(TrivialDVB.of_dims(*d)).seq.Omega.dim == d[0] * d[1] + d[2]
