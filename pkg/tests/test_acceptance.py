"""
The ten acceptance criteria, each at exact arithmetic (tolerance 0).

Every test prints one ``criterion N: PASS|FAIL`` line with a short detail
before asserting, so a plain ``pytest tests/test_acceptance.py`` shows the
whole scoreboard.
"""

import itertools
import json
import subprocess
import sys
import time

import pytest

from dvblab.ansatz import double_linear_oracle
from dvblab.dualization import (
    FIRST,
    SECOND,
    abstract_matches,
    adual_compare,
    check_triality,
    cstar_duality,
    line_dual_compare,
    side_dual_compare,
    transpose,
)
from dvblab.dvb import TrivialDVB, check_interchange
from dvblab.equivalence import DoubledDVB, combining, compare_with_oracle
from dvblab.geomexamples import GeomContext, atiyah_fiber, jet_fiber, square_report
from dvblab.report import run_check
from dvblab.sampling import make_rng, random_dims
from dvblab.seq import random_seq, random_star_seq
from dvblab.suites import t_functor_laws, t_nat_pi, t_nat_t, u_dual_ok

SEED = 20240601


@pytest.fixture
def announce(capsys):
    def _announce(n, ok, detail):
        with capsys.disabled():
            print("\ncriterion %2d: %s  %s" % (n, "PASS" if ok else "FAIL", detail))
        return ok
    return _announce


def _triples(top):
    return list(itertools.product(range(top + 1), repeat=3))


def test_criterion_01_interchange(announce):
    fails = 0
    for k in range(50):
        rng = make_rng(SEED, "c1-dvb", k)
        D = TrivialDVB.of_dims(*random_dims(rng, 3, 0, 4))
        fails += not check_interchange(D, 500, seed=SEED + k).passed
    for k in range(50):
        rng = make_rng(SEED, "c1-seq", k)
        s = random_seq(random_dims(rng, 3, 0, 4), rng)
        fails += not check_interchange(DoubledDVB(s), 500, seed=SEED + k).passed
    ok = announce(1, fails == 0, "8 laws x 500 samples on 50 trivial DVBs and 50 doubled sequences, %d failing" % fails)
    assert ok


def test_criterion_02_dimension_law(announce):
    bad = [d for d in _triples(4) if combining(TrivialDVB.of_dims(*d)).seq.Omega.dim != d[0] * d[1] + d[2]]
    ok = announce(2, not bad, "all %d triples with entries <= 4, mismatches: %s" % (len(_triples(4)), bad))
    assert ok


def test_criterion_03_equivalence(announce):
    recs = [run_check(name, name, 100, SEED, fn(3))
            for name, fn in (("nat-t", t_nat_t), ("nat-pi", t_nat_pi), ("functor-laws", t_functor_laws))]
    detail = ", ".join("%s %d/%d" % (r.name, r.trials - r.failures, r.trials) for r in recs)
    ok = announce(3, all(r.passed for r in recs), detail)
    assert ok, [r.first_counterexample for r in recs if not r.passed]


def test_criterion_04_combining_oracle(announce):
    bad = [d for d in _triples(3) if not compare_with_oracle(TrivialDVB.of_dims(*d), make_rng(SEED, "c4", *d)).passed]
    ok = announce(4, not bad, "combining vs generators-and-relations oracle on all 64 triples <= 3, failing: %s" % bad)
    assert ok


def test_criterion_05_double_linear_oracle(announce):
    bad = [d for d in _triples(3) if not double_linear_oracle(TrivialDVB.of_dims(*d), SEED).passed]
    ok = announce(5, not bad, "ansatz solution space = (theta, chi) on all 64 triples <= 3, failing: %s" % bad)
    assert ok


def test_criterion_06_u_duality(announce):
    dual_fail = abstract_fail = line_fail = lines = 0
    for k in range(200):
        rng = make_rng(SEED, "c6", k)
        s = random_star_seq(random_dims(rng, 3, 0, 3), rng)
        dual_fail += not (u_dual_ok(s, FIRST, rng) and u_dual_ok(s, SECOND, rng))
        if s.U.dim:
            abstract_fail += not abstract_matches(s)
        if s.U.dim == 1:
            lines += 1
            line_fail += not line_dual_compare(s, rng).passed
    ok = dual_fail == abstract_fail == line_fail == 0 and lines > 0
    announce(6, ok, "200 sequences: u_dual failing %d, abstract failing %d, line duals %d (failing %d)"
             % (dual_fail, abstract_fail, lines, line_fail))
    assert ok


def test_criterion_07_triality(announce):
    tri_fail = dt_fail = 0
    for k in range(100):
        rng = make_rng(SEED, "c7", k)
        s = random_star_seq(random_dims(rng, 3, 1, 3), rng)
        tri_fail += not check_triality(s, rng).passed
        z = random_star_seq(random_dims(rng, 3, 0, 3), rng)
        dt_fail += transpose(transpose(s)) != s or transpose(transpose(z)) != z
    ok = tri_fail == dt_fail == 0
    announce(7, ok, "100 instances: triality failing %d, double transpose failing %d" % (tri_fail, dt_fail))
    assert ok


def test_criterion_08_side_dualities(announce):
    a_fail = b_fail = c_fail = 0
    constants = set()
    for k in range(100):
        rng = make_rng(SEED, "c8", k)
        D = TrivialDVB.of_dims(*random_dims(rng, 3, 0, 3))
        a_fail += not adual_compare(D, rng).passed
        b_fail += not side_dual_compare(D, "B", rng).passed
        rep = cstar_duality(D, rng)
        c_fail += not rep.passed
        constants.add((int(rep.lam), int(rep.mu)))
    ok = a_fail == b_fail == c_fail == 0
    announce(8, ok, "100 DVBs: A*-duality failing %d (mirror %d), C*-duality failing %d, constants %s"
             % (a_fail, b_fail, c_fail, sorted(constants)))
    assert ok


def test_criterion_09_examples(announce):
    grid_bad = []
    for dT, dE in itertools.product(range(4), repeat=2):
        ctx = GeomContext.of_dims(dT, dE)
        jet, at = jet_fiber(ctx), atiyah_fiber(ctx)
        if not (jet.passed and at.passed and jet.dim == dT * dE + dE and at.dim == dE * dE + dT):
            grid_bad.append((dT, dE))
    sq_bad = [d for d in ((1, 1), (2, 2), (2, 3))
              if not square_report(GeomContext.of_dims(*d), SEED).passed]
    ok = not grid_bad and not sq_bad
    announce(9, ok, "dim JE / DE and direct-model isos on the 4x4 grid (bad %s); square (1,1),(2,2),(2,3) bad %s"
             % (grid_bad, sq_bad))
    assert ok


def _cli(*args, **kw):
    return subprocess.run([sys.executable, "-m", "dvblab.cli", *args], capture_output=True, text=True, **kw)


def test_criterion_10_cli(announce, tmp_path):
    notes = []
    gen1 = _cli("gen", "--dims", "2,3,1", "--seed", "7")
    gen2 = _cli("gen", "--dims", "2,3,1", "--seed", "7")
    deterministic = gen1.returncode == 0 and gen1.stdout == gen2.stdout and json.loads(gen1.stdout)["Omega"] == 7
    notes.append("gen deterministic=%s" % deterministic)

    start = time.perf_counter()
    full = _cli("verify", "--suite", "all", "--trials", "100", "--max-dim", "3", "--seed", "1", "--no-time")
    elapsed = time.perf_counter() - start
    again = _cli("verify", "--suite", "triality", "--trials", "20", "--max-dim", "3", "--seed", "1", "--no-time")
    again2 = _cli("verify", "--suite", "triality", "--trials", "20", "--max-dim", "3", "--seed", "1", "--no-time")
    deterministic &= again.stdout == again2.stdout
    full_ok = full.returncode == 0 and elapsed < 60
    notes.append("verify all 100/3 exit %d in %.1fs" % (full.returncode, elapsed))

    inst = tmp_path / "s.json"
    inst.write_text(gen1.stdout)
    good = _cli("verify", "--instance", str(inst)).returncode
    data = json.loads(gen1.stdout)
    data["e"] = [["0"] * len(row) for row in data["e"]]
    inst.write_text(json.dumps(data))
    corrupted = _cli("verify", "--instance", str(inst)).returncode
    inst.write_text(gen1.stdout[:25])
    truncated = _cli("roundtrip", str(inst)).returncode
    bad_args = _cli("verify", "--trials", "0").returncode
    codes_ok = (good, corrupted, truncated, bad_args) == (0, 1, 2, 2)
    notes.append("exit codes good/corrupted/truncated/bad-args = %d/%d/%d/%d" % (good, corrupted, truncated, bad_args))

    ok = deterministic and full_ok and codes_ok
    announce(10, ok, "; ".join(notes))
    assert ok, full.stderr[-2000:]
