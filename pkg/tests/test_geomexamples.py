"""Tangent and cotangent doubles, the jet and Atiyah fibres, and the square of dualities."""

import pytest

from dvblab import exactla as la
from dvblab.dvb import check_interchange
from dvblab.exactla import LinMap
from dvblab.geomexamples import (
    GeomContext,
    atiyah_anchor_is_projection,
    atiyah_fiber,
    cotangent_double,
    cotangent_double_of_dual,
    cotangent_iso,
    cotangent_pairing,
    jet_fiber,
    jet_linear_structure,
    r_map_identity,
    square_report,
    tangent_double,
    tangent_double_dual_side,
)
from dvblab.sampling import make_rng

GRID = [(t, e) for t in range(4) for e in range(4)]


def test_tangent_doubles():
    ctx = GeomContext.of_dims(1, 1)
    assert tangent_double(ctx).dims == (1, 1, 1)
    ctx = GeomContext.of_dims(2, 3)
    assert tangent_double(ctx).dims == (2, 3, 3)
    assert tangent_double_dual_side(ctx).dims == (2, 3, 3)
    for D in (tangent_double(ctx), tangent_double_dual_side(ctx)):
        assert check_interchange(D, 30, seed=2).passed


def test_cotangent_doubles():
    ctx = GeomContext.of_dims(2, 3)
    assert cotangent_double(ctx).dims == (3, 3, 2)
    assert cotangent_double_of_dual(ctx).dims == (3, 3, 2)
    assert cotangent_pairing(ctx).fiber_pairing().is_nondegenerate()
    assert r_map_identity(ctx, make_rng(0))
    for D in (cotangent_double(ctx), cotangent_double_of_dual(ctx)):
        assert check_interchange(D, 30, seed=2).passed


def test_jet_example():
    rep = jet_fiber(GeomContext.of_dims(2, 3))
    assert rep.dim == 9 and rep.passed
    assert jet_linear_structure(GeomContext.of_dims(2, 3), make_rng(1))


def test_jet_without_horizontal_directions():
    rep = jet_fiber(GeomContext.of_dims(0, 3))
    assert rep.dim == 3 and rep.passed
    assert rep.seq.j.shape == (3, 3)


def test_atiyah_example():
    rep = atiyah_fiber(GeomContext.of_dims(2, 3))
    assert rep.dim == 11 and rep.passed
    assert atiyah_anchor_is_projection(rep)


def test_atiyah_zero_bundle():
    rep = atiyah_fiber(GeomContext.of_dims(2, 0))
    assert rep.dim == 2 and rep.passed


def test_direct_model_isos():
    ctx = GeomContext.of_dims(2, 2)
    jet = jet_fiber(ctx)
    assert jet.iso.matrix == LinMap.identity(jet.direct.Pi).matrix
    # X(T*E*) carries its kernel as E (x) E*; the direct model reads it as E* (x) E
    at = atiyah_fiber(ctx)
    expected = la.direct_sum_maps(la.swap_map(ctx.E, ctx.E.dual()), LinMap.identity(ctx.T))
    assert at.iso.matrix == expected.matrix


@pytest.mark.parametrize("dT,dE", GRID)
def test_fibre_dimensions(dT, dE):
    ctx = GeomContext.of_dims(dT, dE)
    jet, at = jet_fiber(ctx), atiyah_fiber(ctx)
    assert jet.dim == dT * dE + dE and jet.passed
    assert at.dim == dE * dE + dT and at.passed


def test_square_scalar():
    rep = square_report(GeomContext.of_dims(1, 1))
    assert rep.passed and len(rep.edges) == 4
    assert [e.pairing_rank for e in rep.edges[1:]] == [2, 2, 2]
    assert rep.signs == {"edge4": (1, 1), "edge3": (-1, 1)}


@pytest.mark.parametrize("dims", [(2, 2), (2, 3)])
def test_square_passes(dims):
    rep = square_report(GeomContext.of_dims(*dims))
    assert rep.passed and all(not e.vacuous for e in rep.edges)


@pytest.mark.parametrize("dims", [(1, 0), (0, 1), (0, 0)])
def test_square_degenerate(dims):
    assert square_report(GeomContext.of_dims(*dims)).passed


def test_cotangent_iso_is_identity():
    rep = cotangent_iso(GeomContext.of_dims(2, 2))
    assert rep.passed
    phi = rep.morphism
    assert phi.omega.is_zero()
    assert phi.fA == LinMap.identity(phi.source.A) and phi.fC == LinMap.identity(phi.source.C)
