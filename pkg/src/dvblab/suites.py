"""
The theorem suites driven by ``dvblab verify``.

Each check is a trial function ``(rng, k) -> (passed, instance)`` run on
random instances with every dimension at most ``max_dim``.
"""

from __future__ import annotations

from .ansatz import double_linear_oracle, morphism_space_oracle
from .dualization import (
    FIRST,
    SECOND,
    DegenerateSide,
    abstract_matches,
    adual_compare,
    check_side_dual,
    check_triality,
    cstar_duality,
    double_dual_matches,
    line_dual_compare,
    mirror_matches,
    pair_cd_xd,
    pairing_cd_xd,
    side_dual_compare,
    transpose,
    u_dual,
    xspace,
)
from .dualization.udual import dimension_law
from .dualization.xspace import evaluate
from .dvb import TrivialDVB, check_interchange, dvb_from_json, dvb_to_json, random_morphism
from .equivalence import (
    DoubledDVB,
    check_combining_well_defined,
    check_functor_laws,
    check_nat_pi,
    check_nat_t,
    combining,
    compare_with_oracle,
)
from .exactla import Space, dot, map_from_json
from .geomexamples import (
    GeomContext,
    atiyah_anchor_is_projection,
    atiyah_fiber,
    cotangent_double,
    cotangent_double_of_dual,
    jet_fiber,
    jet_linear_structure,
    r_map_identity,
    square_report,
    tangent_double,
    tangent_double_dual_side,
)
from .report import Report, run_check, star_seq_to_json
from .sampling import random_dims, random_vector
from .seq import DVBStarSeq, NotExact, random_seq, random_seq_morphism, random_star_seq, seq_from_json

SUITE_NAMES = ("interchange", "equivalence", "duality", "triality", "examples")

ANCHORS = {
    "interchange-trivial": "interchange laws of a double vector bundle",
    "interchange-doubled": "interchange laws on the doubling of a DVB sequence",
    "dimension-law": "dimension of the combined space is dim A x dim B + dim C",
    "nat-t": "equivalence of DVBs and DVB sequences: unit isomorphism t",
    "nat-pi": "equivalence of DVBs and DVB sequences: counit isomorphism pi",
    "functor-laws": "doubling and combining are functors",
    "combining-morphisms": "combining on morphisms is well defined",
    "combining-oracle": "combined space as the dual of the double-linear functions",
    "double-linear-oracle": "double-linear functions are theta (x) plus chi",
    "morphism-completeness": "every DVB morphism has the canonical (fA, fB, fC, omega) form",
    "xspace-pairing": "standard pairing of the combined space with the double-linear functions",
    "side-duals": "duals of a DVB over a side bundle",
    "u-dual": "dual of a DVB* sequence with respect to a side bundle",
    "u-dual-abstract": "side dual through the trace-free decomposition of gl(U)",
    "line-dual": "dual with respect to the trivial line is the ordinary dual",
    "a-duality": "associated sequences of D and its side dual are in A*-duality",
    "cstar-duality": "the two side duals are mutually dual over C*",
    "triality": "three steps of duals recover the transposition",
    "double-transpose": "transposing twice is the identity",
    "jet-fiber": "jet fibre equals the double-linear functions on TE*",
    "atiyah-fiber": "Atiyah fibre equals the double-linear functions on T*E*",
    "square": "dualities between DE, JE, DE* and JE*",
    "cotangent-doubles": "tangent and cotangent doubles of E and E*",
}


def _seed_of(rng) -> int:
    return int(rng.integers(0, 2**62))


def _dims(rng, count, max_dim, low=0):
    return random_dims(rng, count, low, max_dim)


# --------------------------------------------------------------------------
# interchange


def t_interchange_trivial(max_dim, samples):
    def trial(rng, k):
        D = TrivialDVB.of_dims(*_dims(rng, 3, max_dim))
        rep = check_interchange(D, samples, _seed_of(rng))
        bad = rep.first_failure()
        return rep.passed, {"dvb": dvb_to_json(D), "law": bad}
    return trial


def t_interchange_doubled(max_dim, samples):
    def trial(rng, k):
        s = random_seq(_dims(rng, 3, max_dim), rng)
        rep = check_interchange(DoubledDVB(s), samples, _seed_of(rng))
        return rep.passed, {"seq": s.to_json(), "law": rep.first_failure()}
    return trial


def t_dimension_law(max_dim):
    def trial(rng, k):
        dA, dB, dC = _dims(rng, 3, max_dim)
        comb = combining(TrivialDVB.of_dims(dA, dB, dC))
        return comb.seq.Omega.dim == dA * dB + dC, {"dims": [dA, dB, dC]}
    return trial


# --------------------------------------------------------------------------
# equivalence


def t_nat_t(max_dim):
    def trial(rng, k):
        D = TrivialDVB.of_dims(*_dims(rng, 3, max_dim))
        D2 = TrivialDVB.of_dims(*_dims(rng, 3, max_dim))
        phi = random_morphism(rng, D, D2)
        return check_nat_t(D, rng, phi).passed, {"dvb": dvb_to_json(D), "target": dvb_to_json(D2)}
    return trial


def t_nat_pi(max_dim):
    def trial(rng, k):
        s = random_seq(_dims(rng, 3, max_dim), rng)
        s2 = random_seq(_dims(rng, 3, max_dim), rng)
        m = random_seq_morphism(rng, s, s2)
        return check_nat_pi(s, rng, m).passed, {"seq": s.to_json(), "target": s2.to_json()}
    return trial


def t_functor_laws(max_dim):
    def trial(rng, k):
        Ds = [TrivialDVB.of_dims(*_dims(rng, 3, max_dim)) for _ in range(3)]
        phi, psi = random_morphism(rng, Ds[0], Ds[1]), random_morphism(rng, Ds[1], Ds[2])
        ss = [random_seq(_dims(rng, 3, max_dim), rng) for _ in range(3)]
        m1, m2 = random_seq_morphism(rng, ss[0], ss[1]), random_seq_morphism(rng, ss[1], ss[2])
        res = check_functor_laws(phi, psi, m1, m2, rng)
        return all(res.values()), {"dvbs": [dvb_to_json(D) for D in Ds], "laws": res}
    return trial


def t_combining_morphisms(max_dim):
    def trial(rng, k):
        D, D2 = (TrivialDVB.of_dims(*_dims(rng, 3, max_dim)) for _ in range(2))
        phi = random_morphism(rng, D, D2)
        return check_combining_well_defined(phi, rng), {"dvb": dvb_to_json(D), "target": dvb_to_json(D2)}
    return trial


def t_combining_oracle(max_dim):
    def trial(rng, k):
        D = TrivialDVB.of_dims(*_dims(rng, 3, max_dim))
        return compare_with_oracle(D, rng, _seed_of(rng)).passed, {"dvb": dvb_to_json(D)}
    return trial


def t_double_linear(max_dim):
    def trial(rng, k):
        D = TrivialDVB.of_dims(*_dims(rng, 3, max_dim))
        return double_linear_oracle(D, _seed_of(rng)).passed, {"dvb": dvb_to_json(D)}
    return trial


def t_morphism_completeness(max_dim):
    def trial(rng, k):
        D, D2 = (TrivialDVB.of_dims(*_dims(rng, 3, max_dim)) for _ in range(2))
        return morphism_space_oracle(D, D2, _seed_of(rng)).passed, {"dvb": dvb_to_json(D), "target": dvb_to_json(D2)}
    return trial


# --------------------------------------------------------------------------
# duality


def xspace_pairing_ok(D: TrivialDVB, rng, trials: int = 3) -> bool:
    X = xspace(D)
    comb = combining(D)
    s = comb.seq
    n = D.A.dim * D.B.dim
    ok = pairing_cd_xd(D).is_nondegenerate()
    for _ in range(trials):
        omega = random_vector(rng, s.Omega.dim)
        sigma = random_vector(rng, X.Pi.dim)
        theta = random_vector(rng, n)
        c = random_vector(rng, D.C.dim)
        d = D.random_element(rng)
        ok &= pair_cd_xd(D, omega, X.i(theta)) == dot(s.p(omega), theta)
        ok &= pair_cd_xd(D, s.e(c), sigma) == dot(c, X.j(sigma))
        ok &= pair_cd_xd(D, comb.class_of(d), sigma) == evaluate(D, sigma, d)
    return ok


def t_xspace_pairing(max_dim):
    def trial(rng, k):
        D = TrivialDVB.of_dims(*_dims(rng, 3, max_dim))
        return xspace_pairing_ok(D, rng), {"dvb": dvb_to_json(D)}
    return trial


def t_side_duals(max_dim):
    def trial(rng, k):
        D = TrivialDVB.of_dims(*_dims(rng, 3, max_dim))
        ok = check_side_dual(D, rng).passed and mirror_matches(D, rng) and double_dual_matches(D)
        ok = ok and check_side_dual(D.flip(), rng).passed
        return ok, {"dvb": dvb_to_json(D)}
    return trial


def u_dual_ok(s: DVBStarSeq, side: str, rng) -> bool:
    dU, dV, dK = s.dims
    w, other = (dU, dV) if side == FIRST else (dV, dU)
    degenerate = w == 0 and (other != 0 or dK != 0)
    try:
        ud = u_dual(s, side)
    except DegenerateSide:
        return degenerate
    if degenerate:
        return False
    return ud.conjugate_equalities(rng) == (True, True) and ud.pairing.is_nondegenerate() and dimension_law(ud)


def t_u_dual(max_dim):
    def trial(rng, k):
        s = random_star_seq(_dims(rng, 3, max_dim), rng)
        return u_dual_ok(s, FIRST, rng) and u_dual_ok(s, SECOND, rng), {"star_seq": star_seq_to_json(s)}
    return trial


def t_u_dual_abstract(max_dim):
    def trial(rng, k):
        dims = (random_dims(rng, 1, 1, max_dim)[0],) + _dims(rng, 2, max_dim)
        s = random_star_seq(dims, rng)
        return abstract_matches(s), {"star_seq": star_seq_to_json(s)}
    return trial


def t_line_dual(max_dim):
    def trial(rng, k):
        s = random_star_seq((1,) + _dims(rng, 2, max_dim), rng)
        return line_dual_compare(s, rng).passed, {"star_seq": star_seq_to_json(s)}
    return trial


def t_a_duality(max_dim):
    def trial(rng, k):
        D = TrivialDVB.of_dims(*_dims(rng, 3, max_dim))
        ok = adual_compare(D, rng).passed and side_dual_compare(D, "B", rng).passed
        return ok, {"dvb": dvb_to_json(D)}
    return trial


def t_cstar(max_dim):
    def trial(rng, k):
        D = TrivialDVB.of_dims(*_dims(rng, 3, max_dim))
        return cstar_duality(D, rng).passed, {"dvb": dvb_to_json(D)}
    return trial


# --------------------------------------------------------------------------
# triality


def t_triality(max_dim):
    def trial(rng, k):
        s = random_star_seq(_dims(rng, 3, max_dim, low=1), rng)
        return check_triality(s, rng).passed, {"star_seq": star_seq_to_json(s)}
    return trial


def t_double_transpose(max_dim):
    def trial(rng, k):
        s = random_star_seq(_dims(rng, 3, max_dim), rng)
        return transpose(transpose(s)) == s, {"star_seq": star_seq_to_json(s)}
    return trial


# --------------------------------------------------------------------------
# geometric examples


def t_jet(max_dim):
    def trial(rng, k):
        dT, dE = _dims(rng, 2, max_dim)
        ctx = GeomContext.of_dims(dT, dE)
        rep = jet_fiber(ctx)
        ok = rep.passed and rep.dim == dT * dE + dE and jet_linear_structure(ctx, rng)
        return ok, {"dimT": dT, "dimE": dE}
    return trial


def t_atiyah(max_dim):
    def trial(rng, k):
        dT, dE = _dims(rng, 2, max_dim)
        rep = atiyah_fiber(GeomContext.of_dims(dT, dE))
        shape = rep.seq.U.label == "E*" and rep.seq.V.label == "E" and rep.seq.K.dim == dT
        ok = rep.passed and rep.dim == dE * dE + dT and atiyah_anchor_is_projection(rep) and shape
        return ok, {"dimT": dT, "dimE": dE}
    return trial


def t_square(max_dim):
    def trial(rng, k):
        dT, dE = _dims(rng, 2, max_dim)
        return square_report(GeomContext.of_dims(dT, dE), _seed_of(rng)).passed, {"dimT": dT, "dimE": dE}
    return trial


def t_cotangent(max_dim, samples):
    def trial(rng, k):
        dT, dE = _dims(rng, 2, max_dim)
        ctx = GeomContext.of_dims(dT, dE)
        ok = r_map_identity(ctx, rng)
        TsE, TsEs = cotangent_double(ctx), cotangent_double_of_dual(ctx)
        ok &= TsE.dims == (dE, dE, dT) and TsEs.dims == (dE, dE, dT)
        for D in (tangent_double(ctx), tangent_double_dual_side(ctx), TsE, TsEs):
            ok &= check_interchange(D, samples, _seed_of(rng)).passed
        return ok, {"dimT": dT, "dimE": dE}
    return trial


# --------------------------------------------------------------------------


def suite_checks(suite: str, max_dim: int, samples: int) -> list:
    """``(name, trial_fn)`` pairs for one suite."""
    table = {
        "interchange": [
            ("interchange-trivial", t_interchange_trivial(max_dim, samples)),
            ("interchange-doubled", t_interchange_doubled(max_dim, samples)),
            ("dimension-law", t_dimension_law(max_dim)),
        ],
        "equivalence": [
            ("nat-t", t_nat_t(max_dim)),
            ("nat-pi", t_nat_pi(max_dim)),
            ("functor-laws", t_functor_laws(max_dim)),
            ("combining-morphisms", t_combining_morphisms(max_dim)),
            ("combining-oracle", t_combining_oracle(max_dim)),
            ("double-linear-oracle", t_double_linear(max_dim)),
            ("morphism-completeness", t_morphism_completeness(max_dim)),
        ],
        "duality": [
            ("xspace-pairing", t_xspace_pairing(max_dim)),
            ("side-duals", t_side_duals(max_dim)),
            ("u-dual", t_u_dual(max_dim)),
            ("u-dual-abstract", t_u_dual_abstract(max_dim)),
            ("line-dual", t_line_dual(max_dim)),
            ("a-duality", t_a_duality(max_dim)),
            ("cstar-duality", t_cstar(max_dim)),
        ],
        "triality": [
            ("triality", t_triality(max_dim)),
            ("double-transpose", t_double_transpose(max_dim)),
        ],
        "examples": [
            ("jet-fiber", t_jet(max_dim)),
            ("atiyah-fiber", t_atiyah(max_dim)),
            ("square", t_square(max_dim)),
            ("cotangent-doubles", t_cotangent(max_dim, samples)),
        ],
    }
    if suite == "all":
        return [c for name in SUITE_NAMES for c in table[name]]
    if suite not in table:
        raise ValueError("unknown suite %r" % (suite,))
    return table[suite]


def run_suite(suite: str, trials: int, max_dim: int, seed: int, samples: int = 20) -> Report:
    if trials < 1 or max_dim < 1:
        raise ValueError("trials and max-dim must be at least 1")
    report = Report(suite, seed, trials, max_dim)
    for name, fn in suite_checks(suite, max_dim, samples):
        report.checks.append(run_check(name, ANCHORS[name], trials, seed, fn))
    return report


# --------------------------------------------------------------------------
# checks on a single instance file


def _star_seq_from_json(data: dict) -> DVBStarSeq:
    try:
        dU, dV, dK = data["U"], data["V"], data["K"]
        i_raw, j_raw = data["i"], data["j"]
    except (KeyError, TypeError):
        raise ValueError("star-sequence instance needs fields U, V, K, i, j") from None
    for d in (dU, dV, dK):
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise ValueError("star-sequence dims must be nonnegative integers")
    U, V, K = Space(dU, "U"), Space(dV, "V"), Space(dK, "K")
    Pi = Space(dU * dV + dK, "Π")
    return DVBStarSeq(U, V, K, map_from_json(U.tensor(V), Pi, i_raw), map_from_json(Pi, K, j_raw))


def parse_instance(data):
    """Return ``(kind, object)``; malformed data raises ``ValueError``, a non-exact sequence ``NotExact``."""
    if not isinstance(data, dict) or "kind" not in data:
        raise ValueError("instance must be a JSON object with a 'kind' field")
    kind = data["kind"]
    if kind == "dvb":
        return kind, dvb_from_json(data)
    if kind == "seq":
        return kind, seq_from_json(data)
    if kind == "star-seq":
        return kind, _star_seq_from_json(data)
    raise ValueError("unknown instance kind %r" % (kind,))


def run_instance(data, trials: int, seed: int, samples: int = 20) -> Report:
    """Run every applicable check on one instance; a non-exact sequence is itself a failure."""
    report = Report("instance", seed, trials, 0)
    try:
        kind, obj = parse_instance(data)
    except NotExact as exc:
        failure = {"instance": data, "error": str(exc)}
        rec = run_check("seq-exactness", "DVB sequences are short exact", 1, seed,
                        lambda rng, k: (False, failure))
        report.checks.append(rec)
        return report
    checks = []
    if kind == "dvb":
        D = obj
        checks = [
            ("interchange-trivial", lambda rng, k: (check_interchange(D, samples, _seed_of(rng)).passed, data)),
            ("nat-t", lambda rng, k: (check_nat_t(D, rng, random_morphism(rng, D, D)).passed, data)),
            ("combining-oracle", lambda rng, k: (compare_with_oracle(D, rng, _seed_of(rng)).passed, data)),
            ("xspace-pairing", lambda rng, k: (xspace_pairing_ok(D, rng), data)),
            ("side-duals", lambda rng, k: (check_side_dual(D, rng).passed, data)),
            ("a-duality", lambda rng, k: (adual_compare(D, rng).passed, data)),
            ("cstar-duality", lambda rng, k: (cstar_duality(D, rng).passed, data)),
        ]
    elif kind == "seq":
        s = obj
        checks = [
            ("interchange-doubled", lambda rng, k: (check_interchange(DoubledDVB(s), samples, _seed_of(rng)).passed, data)),
            ("nat-pi", lambda rng, k: (check_nat_pi(s, rng, random_seq_morphism(rng, s, s)).passed, data)),
        ]
    else:
        s = obj
        checks = [
            ("u-dual", lambda rng, k: (u_dual_ok(s, FIRST, rng) and u_dual_ok(s, SECOND, rng), data)),
            ("double-transpose", lambda rng, k: (transpose(transpose(s)) == s, data)),
        ]
        if all(s.dims):
            checks.append(("triality", lambda rng, k: (check_triality(s, rng).passed, data)))
    for name, fn in checks:
        report.checks.append(run_check(name, ANCHORS[name], trials, seed, fn))
    return report
