"""Short exact sequences, random generation and sequence morphisms."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import mat
from dvblab.exactla import LinMap, Space
from dvblab.sampling import make_rng
from dvblab.seq import (
    DVBSeq,
    NotExact,
    SeqMorphism,
    check_exact,
    random_seq,
    random_seq_morphism,
    random_star_seq,
    seq_from_json,
    split_seq,
)

dims = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))


def test_split_sequence_is_exact():
    assert check_exact(mat([[1], [0]]), mat([[0, 1]])).exact


def test_composite_nonzero_is_caught():
    rep = check_exact(mat([[1], [0]]), mat([[1, 0]]))
    assert not rep.exact and not rep.composite_zero
    with pytest.raises(NotExact):
        DVBSeq(Space(1), Space(1), Space(1), mat([[1], [0]]), mat([[1, 0]]))


def test_untwisted_generator_is_split():
    assert random_seq((2, 1, 2), make_rng(0), twist=False) == split_seq((2, 1, 2))


def test_generator_is_deterministic():
    assert random_seq((2, 2, 1), make_rng(7)) == random_seq((2, 2, 1), make_rng(7))
    assert random_star_seq((1, 2, 2), make_rng(7)) == random_star_seq((1, 2, 2), make_rng(7))


def test_seeded_generator_is_exact():
    s = random_seq((2, 2, 1), make_rng(7))
    assert s.seq.report().exact and s.Omega.dim == 5


def test_identity_morphism_passes():
    s = random_seq((2, 1, 2), make_rng(1))
    assert SeqMorphism.identity(s).check().passed


def test_scaled_varpi_fails():
    s = random_seq((1, 2, 1), make_rng(2))
    ident = SeqMorphism.identity(s)
    m = SeqMorphism(s, s, ident.varpi.scale(2), ident.fA, ident.fB, ident.fC)
    assert not m.check().passed


def test_json_round_trip_and_validation():
    s = random_seq((2, 3, 1), make_rng(3))
    data = s.to_json()
    assert data["Omega"] == 7
    assert seq_from_json(data) == s
    with pytest.raises(ValueError):
        seq_from_json(dict(data, Omega=8))
    with pytest.raises(ValueError):
        seq_from_json({"A": 1})
    bad = dict(data)
    bad["p"] = [row[:] for row in data["p"]]
    bad["p"][0] = ["0"] * len(bad["p"][0])
    with pytest.raises(NotExact):
        seq_from_json(bad)


@settings(max_examples=40, deadline=None)
@given(dims, st.integers(0, 2**32))
def test_random_sequences_are_exact(d, seed):
    s = random_seq(d, make_rng(seed))
    assert s.seq.report().exact
    assert s.Omega.dim == d[0] * d[1] + d[2]
    u = random_star_seq(d, make_rng(seed))
    assert u.seq.report().exact and u.Pi.dim == d[0] * d[1] + d[2]


@settings(max_examples=40, deadline=None)
@given(dims, dims, st.integers(0, 2**32))
def test_random_morphisms_commute_and_compose(d1, d2, seed):
    rng = make_rng(seed)
    s, t = random_seq(d1, rng), random_seq(d2, rng)
    m1 = random_seq_morphism(rng, s, t)
    m2 = random_seq_morphism(rng, t, s)
    assert m1.check().passed and m2.check().passed
    assert m2.compose_after(m1).check().passed
    assert m1.compose_after(SeqMorphism.identity(s)) == m1


def test_section_and_retraction():
    s = random_seq((2, 2, 2), make_rng(4))
    sec, ret = s.seq.section(), s.seq.retraction()
    assert s.p @ sec == LinMap.identity(s.p.codomain)
    assert ret @ s.e == LinMap.identity(s.C)
    assert (ret @ sec).is_zero()
