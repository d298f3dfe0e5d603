"""Exhaustive sweeps over finite fields with named assertion sets.

Each assertion maps a flat tuple to None (pass) or a failure description.
Sweeps can be split into shards (tuple index modulo the shard count) and
run in a process pool; merged reports keep the counterexample of smallest
index, so the result does not depend on the worker count.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

from . import kernels
from .errors import MalformedInput, PreconditionViolated
from .exactla import GF, FiniteField
from .monad import scan_beta
from .quiverrep import BlowupRep, NewQuiverRep, cm_data, enumerate_reps, find_isomorphism, is_flat
from .stability import (StabilityParam, check_condition, classify_W0, criteria_semistable, hn_filtration,
                        jh_filtration, zeta_semistable)

ASSERTIONS = ("ss-equivalence", "king-equivalence", "filtrations", "w0-classification")


def _ss_equivalence(X: BlowupRep, zeta: StabilityParam):
    a = zeta_semistable(X, zeta).status
    b = criteria_semistable(X, zeta).status
    return None if a == b else f"subspace check {a}, criteria {b}"


def _king_equivalence(X: BlowupRep, zeta):
    a = check_condition(X, "S2").holds
    b = scan_beta(X).result == "surjective_everywhere"
    return None if a == b else f"(S2) {a}, beta surjective {b}"


def filtration_defects(X: BlowupRep, zeta: StabilityParam) -> str | None:
    """HN slopes must strictly increase; when semistable, JH slopes must be constant."""
    Y = NewQuiverRep.of(X)
    if Y.total == 0:
        return None
    hn = hn_filtration(Y, zeta)
    if any(a >= b for a, b in zip(hn.slopes, hn.slopes[1:])):
        return f"HN slopes {list(map(str, hn.slopes))} not increasing"
    if len(hn.slopes) == 1:
        jh = jh_filtration(Y, zeta)
        if len(set(jh.slopes)) != 1:
            return f"JH slopes {list(map(str, jh.slopes))} not constant"
    return None


_PER_TUPLE = {
    "ss-equivalence": _ss_equivalence,
    "king-equivalence": _king_equivalence,
    "filtrations": filtration_defects,
}


def _run_shard(args):
    dims, field, zeta, assertion, max_tuples, shard = args
    check = _PER_TUPLE[assertion]
    checked = failures = 0
    first = None
    k, s = shard
    for t, X in enumerate(enumerate_reps(dims, field, flat_only=False, max_tuples=max_tuples, shard=shard)):
        if not is_flat(X):
            continue
        checked += 1
        msg = check(X, zeta)
        if msg is not None:
            failures += 1
            if first is None:
                first = (k + s * t, X, msg)
    return checked, failures, first


def _merge(parts) -> dict:
    checked = sum(p[0] for p in parts)
    failures = sum(p[1] for p in parts)
    firsts = [p[2] for p in parts if p[2] is not None]
    out = {"checked": checked, "failures": failures}
    if firsts:
        idx, X, msg = min(firsts, key=lambda f: f[0])
        out["counterexample"] = {"index": idx, "rep": X.to_json(), "reason": msg}
    return out


def _w0_classification(dims, field: FiniteField, zeta: StabilityParam, max_tuples, method: str) -> dict:
    n0, n1 = dims[0], dims[1]
    expected = classify_W0((n0, n1), zeta)
    q = field.order
    slices_ok = field == GF(2) and zeta.zeta0 < 0
    if method == "auto":
        # the plain enumeration has 2^(3 n0 n1) tuples
        fast = slices_ok and n0 * n1 > 4
    elif method == "orbit-slices":
        if not slices_ok:
            raise PreconditionViolated("orbit slices need GF2 and zeta0 < 0")
        fast = True
    elif method == "enumeration":
        fast = False
    else:
        raise MalformedInput(f"unknown sweep method {method!r}")
    failures = []
    if fast:
        result = kernels.w0_sweep(n0, n1, zeta.zeta0, zeta.zeta1)
        stable_reps = [kernels.to_rep(*s, n0, n1) for sl in result["slices"].values() for s in sl["stable"]]
        checked = sum(sl["survivors"] for sl in result["slices"].values())
        stable_tuples = result["stable_tuples"]
        method = "orbit-slices"
    else:
        checked = 0
        stable_reps = []
        for X in enumerate_reps((n0, n1, 0), field, flat_only=True, max_tuples=max_tuples):
            checked += 1
            if zeta_semistable(X, zeta).status == "Stable":
                stable_reps.append(X)
        stable_tuples = len(stable_reps)
        method = "enumeration"
    classes: list[BlowupRep] = []
    for X in stable_reps:
        if not any(find_isomorphism(X, Y) is not None for Y in classes):
            classes.append(X)
    want = expected.expected_classes(q)
    if len(classes) != want:
        failures.append(f"{len(classes)} stable classes, expected {want}")
    if expected.kind == "UniqueCm":
        C = cm_data(expected.m, field)
        bad = [Y for Y in classes if find_isomorphism(Y, C) is None]
        if bad:
            failures.append(f"stable class not isomorphic to C_{expected.m}")
    out = {"checked": checked, "failures": len(failures), "method": method, "expected": expected.to_json(),
           "stable_tuples": stable_tuples, "stable_classes": len(classes)}
    if failures:
        out["reasons"] = failures
        if classes:
            out["counterexample"] = {"rep": classes[0].to_json()}
    return out


def sweep(dims, field: FiniteField, zeta: StabilityParam | None, assertion: str,
          max_tuples: int | None = None, workers: int = 1, method: str = "auto") -> dict:
    """Run one assertion set over every flat tuple of the given dimensions."""
    if not getattr(field, "is_finite", False):
        raise MalformedInput("sweeps need a finite field")
    if assertion not in ASSERTIONS:
        raise MalformedInput(f"unknown assertion set {assertion!r}; expected one of {', '.join(ASSERTIONS)}")
    dims = tuple(dims) + (0,) * (3 - len(dims))
    if any(x < 0 for x in dims):
        raise MalformedInput("dimensions must be nonnegative")
    if sum(dims) == 0:
        return {"checked": 1, "failures": 0}
    if assertion != "king-equivalence" and zeta is None:
        raise MalformedInput(f"{assertion} needs --zeta")
    if assertion == "w0-classification":
        if dims[2] != 0:
            raise PreconditionViolated("the W = 0 classification needs r = 0")
        return _w0_classification(dims, field, zeta, max_tuples, method)
    if assertion in ("ss-equivalence", "king-equivalence") and dims[2] == 0:
        raise PreconditionViolated(f"{assertion} needs r >= 1")
    workers = max(1, workers)
    jobs = [(dims, field, zeta, assertion, max_tuples, (k, workers)) for k in range(workers)]
    if workers == 1:
        parts = [_run_shard(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_shard, jobs))
    return _merge(parts)
