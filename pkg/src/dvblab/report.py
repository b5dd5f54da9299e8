"""Check records, the trial loop and JSON serialisation of instances and reports."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .exactla import format_scalar
from .sampling import make_rng


@dataclass
class CheckRecord:
    name: str
    anchor: str
    trials: int = 0
    failures: int = 0
    first_counterexample: object = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self, with_time: bool = True) -> dict:
        out = {
            "name": self.name,
            "paperAnchor": self.anchor,
            "trials": self.trials,
            "failures": self.failures,
            "firstCounterexample": self.first_counterexample,
        }
        if with_time:
            out["elapsed"] = round(self.elapsed, 4)
        return out


@dataclass
class Report:
    suite: str
    seed: int
    trials: int
    max_dim: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self, with_time: bool = True) -> dict:
        checks = sorted(self.checks, key=lambda c: c.name)
        return {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "maxDim": self.max_dim,
            "passed": self.passed,
            "checks": [c.to_json(with_time) for c in checks],
        }

    def lines(self) -> list[str]:
        out = []
        for c in sorted(self.checks, key=lambda c: c.name):
            status = "PASS" if c.passed else "FAIL"
            out.append("%s  %-28s %4d trials  %d failures  %.2fs" % (status, c.name, c.trials, c.failures, c.elapsed))
        return out


def jsonable(obj):
    """Rationals become ``"p/q"`` strings; tuples, dataclass-like objects and maps are walked."""
    if isinstance(obj, (str, bool)) or obj is None:
        return obj
    if isinstance(obj, int):
        return obj
    if hasattr(obj, "numerator") and hasattr(obj, "denominator"):
        return format_scalar(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if hasattr(obj, "__dict__"):
        return {k: jsonable(v) for k, v in vars(obj).items()}
    return repr(obj)


def star_seq_to_json(s) -> dict:
    return {"kind": "star-seq", "U": s.U.dim, "V": s.V.dim, "K": s.K.dim,
            "i": s.i.to_json(), "j": s.j.to_json()}


def dump(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=True) + "\n"


def run_check(name: str, anchor: str, trials: int, seed: int, trial_fn) -> CheckRecord:
    """Run ``trial_fn(rng, k)`` for ``k < trials`` on per-trial substreams.

    ``trial_fn`` returns ``(passed, instance)``; the first failing instance
    is kept.  An exception inside a trial counts as a failure and its
    message is recorded with the trial index.
    """
    rec = CheckRecord(name, anchor)
    start = time.perf_counter()
    for k in range(trials):
        rng = make_rng(seed, name, k)
        try:
            ok, instance = trial_fn(rng, k)
        except Exception as exc:  # a raising trial is a falsified check, not a crash
            ok, instance = False, {"error": "%s: %s" % (type(exc).__name__, exc)}
        rec.trials += 1
        if not ok:
            rec.failures += 1
            if rec.first_counterexample is None:
                rec.first_counterexample = jsonable({"trial": k, "instance": instance})
    rec.elapsed = time.perf_counter() - start
    return rec
