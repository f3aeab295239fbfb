"""Named reproduction scenarios for the toolkit's headline results.

Each claim re-derives one published-quality statement from scratch: minimum
triple counts over small fields, the fractional form of every minimizer, the
covered-line count and certificate of the lifted graphs, the char-2 zero
construction, the seven order-9 planes, the composite-modulus table, and the
cross-checking property suite.  `run_claim(i)` returns a JSON-ready dict with
"ok", "expected", "observed" and wall time; results are deterministic apart
from the elapsed field.

Search outcomes are cached per process so overlapping claims (the q = 11
runs especially) pay for each search once; later claims seed their incumbent
from a cached exact value when one exists.
"""

import random
import time
from math import comb

from .algebra import RingSpec, field_make
from .classify import certify_minimizer, count_covered_lines, lift_graph
from .collinear import (
    FracParams,
    PermGraph,
    closed_form_minimizer,
    count_quadruples,
    count_triples,
    count_triples_plane,
    fractional_perm,
    list_triples,
    reciprocal_perm,
    recognize_fractional,
    transversal_from_bijection,
)
from .errors import CertificateFailure, DegenerateParams, UsageError
from .fixtures import (
    AFFINE_FIXTURES,
    DISTINGUISHED_CLASSES,
    EXCEPTIONAL_FIXTURE,
    fixture_names,
    load_fixture,
)
from .mols import check_orthogonal, mols_from_plane, plane_from_mols
from .plane import affine_plane, validate
from .search import (
    SearchConfig,
    min_triples_field,
    min_triples_plane,
    min_triples_zn,
)

_cache = {}


def _seeded_cfg(key_prefix, mode):
    seed = None
    hit = _cache.get(key_prefix + ("min_value",))
    if hit is not None and mode != "min_value":
        seed = hit.psi
    return SearchConfig(mode=mode, upper_bound_seed=seed)


def field_outcome(q, mode="min_value"):
    key = ("field", q, mode)
    if key not in _cache:
        f = field_make(q)
        _cache[key] = min_triples_field(f, _seeded_cfg(("field", q), mode))
    return _cache[key]


def zn_outcome(n):
    key = ("zn", n, "min_value")
    if key not in _cache:
        _cache[key] = min_triples_zn(n, SearchConfig())
    return _cache[key]


def plane_outcome(name):
    key = ("plane", name, "min_value")
    if key not in _cache:
        h, v = DISTINGUISHED_CLASSES
        _cache[key] = min_triples_plane(load_fixture(name), h, v, SearchConfig())
    return _cache[key]


def _claim(claim_id, title, expected, observed, ok):
    return {"claim": claim_id, "title": title, "ok": bool(ok),
            "expected": expected, "observed": observed}


def _claim_1():
    qs = (3, 5, 7, 9, 11)
    expected = {q: (q - 1) // 2 for q in qs}
    observed = {q: field_outcome(q).psi for q in qs}
    return _claim(1, "minimum collinear triples over GF(q) is (q-1)/2",
                  expected, observed, observed == expected)


def _claim_2():
    observed = {}
    ok = True
    for q in (5, 7, 9, 11):
        lex = list(field_outcome(q, "lex_least").witnesses[0])
        g = list(closed_form_minimizer(field_make(q)).images)
        match = lex == g
        ok = ok and match
        observed[q] = {"match": match, "lex_least": lex, "closed_form": g}
    return _claim(2, "lex-least minimizer equals the closed-form map x/(x-1)",
                  {"match": True}, observed, ok)


def _claim_3():
    observed = {}
    ok = True
    for q in (5, 7):
        f = field_make(q)
        wits = [PermGraph(f, w) for w in field_outcome(q, "enumerate_all_min").witnesses]
        recog = all(recognize_fractional(w) is not None for w in wits)
        attain = 0
        target = (q - 1) // 2
        converse = True
        for a in range(q):
            for b in range(q):
                for c in range(q):
                    try:
                        perm = fractional_perm(f, FracParams(a, b, c))
                    except DegenerateParams:
                        continue
                    attain += 1
                    if count_triples(perm) != target:
                        converse = False
        ok = ok and recog
        observed[q] = {
            "minimizers": len(wits),
            "all_recognized_fractional": recog,
            "valid_parameter_triples": attain,
            "all_parameters_attain_minimum": converse,  # reported, not asserted
        }
    return _claim(3, "every minimum witness is an extended fractional map",
                  {"all_recognized_fractional": True}, observed, ok)


def _claim_4():
    observed = {}
    ok = True
    for q in (5, 7, 9):
        f = field_make(q)
        want = (q + 1) * (q + 2) // 2 + (q - 1) // 2
        ks = {count_covered_lines(lift_graph(PermGraph(f, w)).points, f)
              for w in field_outcome(q, "enumerate_all_min").witnesses}
        good = ks == {want}
        ok = ok and good
        observed[q] = {"expected_k": want, "observed_k": sorted(ks), "ok": good}
    return _claim(4, "lifted minimizer graphs cover (q+1)(q+2)/2 + (q-1)/2 lines",
                  {"single_value": True}, observed, ok)


def _claim_5():
    observed = {}
    ok = True
    for q in (5, 7, 9, 11):
        f = field_make(q)
        wits = field_outcome(q, "enumerate_all_min").witnesses
        failures = 0
        for w in wits:
            try:
                certify_minimizer(PermGraph(f, w))
            except CertificateFailure:
                failures += 1
        ok = ok and failures == 0
        observed[q] = {"minimizers": len(wits), "certificate_failures": failures}
    return _claim(5, "conic/nucleus certificates succeed on every minimizer",
                  {"certificate_failures": 0}, observed, ok)


def _claim_6():
    observed = {}
    for q in (5, 7, 9):
        f = field_make(q)
        wits = field_outcome(q, "enumerate_all_min").witnesses
        observed[q] = {"minimizers": len(wits),
                       "max_quadruples": max(count_quadruples(PermGraph(f, w))
                                             for w in wits)}
    ok = all(v["max_quadruples"] == 0 for v in observed.values())
    return _claim(6, "no minimizer admits a collinear quadruple",
                  {"max_quadruples": 0}, observed, ok)


def _claim_7():
    observed = {}
    for q in (4, 8, 16):
        f = field_make(q)
        observed[q] = count_triples(reciprocal_perm(f))
    ok = all(v == 0 for v in observed.values())
    return _claim(7, "the reciprocal permutation has zero triples in char 2",
                  {q: 0 for q in (4, 8, 16)}, observed, ok)


def _claim_8():
    expected = {name: 5 if name == EXCEPTIONAL_FIXTURE else 4
                for name in AFFINE_FIXTURES}
    observed = {name: plane_outcome(name).psi for name in AFFINE_FIXTURES}
    return _claim(8, "order-9 plane minima: 4 everywhere, 5 for the deleted "
                     "translation line", expected, observed, observed == expected)


# Catalogued minima for composite moduli.  The reference table (OEIS A379299)
# is not reachable from this sandbox; these values were re-derived from
# scratch by tools/zn_oracle.py (exhaustive translation-reduced sweeps for
# n = 9, 10; pruned zero-witness searches for the rest).
ZN_EXPECTED = {4: 0, 6: 0, 8: 0, 9: 5, 10: 2, 12: 0}


def _claim_9():
    observed = {n: zn_outcome(n).psi for n in sorted(ZN_EXPECTED)}
    hand = count_triples(PermGraph(RingSpec(4), (0, 1, 3, 2)))
    observed["hand_checked_witness_0132_triples"] = hand
    ok = all(observed[n] == ZN_EXPECTED[n] for n in ZN_EXPECTED) and hand == 0
    return _claim(9, "composite-modulus minima match the catalogued table",
                  ZN_EXPECTED, observed, ok)


def _claim_10():
    checks = {}

    rng = random.Random(20260822)
    agree = True
    for q in (2, 3, 4, 5, 7, 8, 9, 11, 13):
        f = field_make(q)
        base = list(range(q))
        for _ in range(500):
            rng.shuffle(base)
            pg = PermGraph(f, tuple(base))
            if count_triples(pg) != len(list_triples(pg)):
                agree = False
    checks["bucketed_vs_naive_counts"] = agree

    axioms = all(validate(affine_plane(field_make(q))).ok
                 for q in (2, 3, 4, 5, 7, 8, 9))
    axioms = axioms and all(validate(load_fixture(n)).ok for n in fixture_names())
    checks["plane_axioms"] = axioms

    mols_ok = True
    for q in (3, 5, 7, 9):
        ap = affine_plane(field_make(q))
        squares = mols_from_plane(ap, q, 0)
        for i in range(len(squares)):
            for j in range(i + 1, len(squares)):
                mols_ok = mols_ok and check_orthogonal(squares[i], squares[j])
        back = plane_from_mols(squares)
        mols_ok = mols_ok and (
            {frozenset(ln) for ln in back.lines} == {frozenset(ln) for ln in ap.lines})
    checks["mols_round_trip_and_orthogonality"] = mols_ok

    positive = True
    planes = [affine_plane(field_make(q)) for q in (3, 5, 7)]
    planes += [load_fixture(n) for n in AFFINE_FIXTURES]
    for ap in planes:
        h, v = (ap.order, 0) if ap.order != 9 else DISTINGUISHED_CLASSES
        pi = list(range(ap.order))
        for _ in range(1000):
            rng.shuffle(pi)
            gp = transversal_from_bijection(ap, h, v, tuple(pi))
            if count_triples_plane(gp) < 1:
                positive = False
    checks["sampled_transversal_positivity"] = positive

    f7 = field_make(7)
    seq = min_triples_field(f7, SearchConfig())
    par = min_triples_field(f7, SearchConfig(parallel_depth=2, threads=2))
    checks["sequential_parallel_agreement_q7"] = (
        seq.psi == par.psi and seq.witnesses == par.witnesses)

    return _claim(10, "cross-checking property suite",
                  {k: True for k in checks}, checks, all(checks.values()))


CLAIMS = {i: fn for i, fn in enumerate(
    (_claim_1, _claim_2, _claim_3, _claim_4, _claim_5,
     _claim_6, _claim_7, _claim_8, _claim_9, _claim_10), start=1)}


def run_claim(claim_id):
    if claim_id not in CLAIMS:
        raise UsageError(f"claim id must be 1..{len(CLAIMS)}, got {claim_id}")
    t0 = time.perf_counter()
    out = CLAIMS[claim_id]()
    out["elapsed"] = round(time.perf_counter() - t0, 3)
    return out
