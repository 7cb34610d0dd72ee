"""Acceptance criteria, one test per criterion.

Run under pytest for a PASS/FAIL summary section, or directly with
``python tests/test_acceptance.py`` for one line per criterion.
"""

import json
import os
import random
import sys
import tempfile
import time

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from gradedrham.bounds import (  # noqa: E402
    example01,
    example_family,
    expected_trichotomy,
    filtration_report,
    matching_solutions,
    theorem2_bound,
)
from gradedrham.cli import batch, dumps, read_corpus, run  # noqa: E402
from gradedrham.derham import concentration_check, derham_slice, piece_dim, truncated_h1  # noqa: E402
from gradedrham.koszul import euler_characteristics, h1_hilbert, koszul_slice  # noqa: E402
from gradedrham.polyring import NotHomogeneousError, PolySyntaxError, Weights, check_homogeneous, parse_poly  # noqa: E402
from properties import PROPERTY_SUITES  # noqa: E402

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FULL_CORPUS = os.path.join(ROOT, "corpus", "full.jsonl")
GRID = [(n, m) for n in range(2, 6) for m in range(2, 6)]

RUNTIME_LIMIT_S = 60.0  # criterion 1
NU_RANGE = range(1, 11)  # criterion 3
CONCENTRATION_CMAX = 8  # criterion 4
CONCENTRATION_SPREAD = 6  # criterion 4: degrees -omega-6 .. -omega+6
INSTANCES = 200  # criterion 5, per suite


def test_criterion_1_koszul_series_of_the_family():
    start = time.perf_counter()
    for n, m in GRID:
        f, w = example_family(n, m)
        hf = h1_hilbert(f, (0, 4 * m), w)
        support = {2 * m + 2 * k for k in range(m - 1)}
        assert hf.nonzero() == {d: 1 for d in sorted(support)}, (n, m, hf.nonzero())
    elapsed = time.perf_counter() - start
    assert elapsed < RUNTIME_LIMIT_S, elapsed


def test_criterion_2_trichotomy():
    for n, m in GRID:
        report = example01(n, m)
        if m % 2 == 1 or n % 2 == 1:
            assert report["bound"] == 0, (n, m)
            assert report["verdict"] == "zero"
        else:
            assert report["bound"] == 1, (n, m)
            assert report["verdict"] == "at_most_one"
            assert report["contributing_nu"] == [n // 2], (n, m)
        assert report["verdict"] == expected_trichotomy(n, m)


def test_criterion_3_degree_matching_by_brute_force():
    for n, m in GRID:
        brute = [
            (nu, j)
            for nu in NU_RANGE
            for j in range(m - 1)
            if 2 * nu * m == (n - 1) * m + 2 * (j + 1)
        ]
        assert matching_solutions(n, m, max(NU_RANGE)) == brute
        solvable = bool(brute)
        assert solvable == (n % 2 == 0 and m % 2 == 0), (n, m)
        if solvable:
            assert {nu for nu, _ in brute} == {n // 2}


def test_criterion_4_concentration_at_minus_omega():
    cases = [("x1^2+x2^2", (2, 2)), ("x1^2+x2^2+x3^3", (3, 3, 2)), ("x1^2+x2^2+x3^4", (2, 2, 1))]
    for text, wt in cases:
        w = Weights(wt)
        f = parse_poly(text, w.n)
        o = w.omega
        degrees = [d for d in range(-o - CONCENTRATION_SPREAD, -o + CONCENTRATION_SPREAD + 1) if d != -o]
        report = concentration_check(f, degrees, w, c_max=CONCENTRATION_CMAX)
        assert len(report.rows) == 2 * CONCENTRATION_SPREAD
        for d, stab, verdict in report.rows:
            assert stab.stable and stab.dim == 0 and verdict == "vanishes", (text, d, stab)


def test_criterion_5_property_suites():
    counts = {}
    for name, check in PROPERTY_SUITES.items():
        for seed in range(INSTANCES):
            try:
                check(random.Random(seed))
            except AssertionError as e:
                raise AssertionError("%s failed at seed %d: %s" % (name, seed, e)) from e
            counts[name] = counts.get(name, 0) + 1
    assert all(c >= INSTANCES for c in counts.values())
    assert len(counts) == len(PROPERTY_SUITES)


def _corpus_polynomials():
    """Every (f, w) the full corpus names, the example grid expanded."""
    seen = {}
    for job in read_corpus(FULL_CORPUS):
        if job["command"] == "example01":
            f, w = example_family(job["n"], job["m"])
        else:
            try:
                w = Weights(tuple(job["weights"]))
                f = parse_poly(job["f"], w.n)
                check_homogeneous(f, w)
            except (PolySyntaxError, NotHomogeneousError):
                continue  # the corpus carries deliberate bad rows
        seen[(f, w)] = None
    return list(seen)


def test_criterion_6_complex_identities():
    slices = 0
    for f, w in _corpus_polynomials():
        deg_f = f.degree(w)
        for d in range(0, 2 * deg_f + 1):
            s = koszul_slice(f, d, w)
            assert (s.psi1 @ s.psi2).is_zero()
            assert (s.psi2 @ s.psi3).is_zero()
            if w.n <= 3:
                chains, homology = euler_characteristics(f, d, w)
                assert chains == homology, (f, d)
            slices += 1
        if w.n <= 3:
            for d in (-w.omega - 1, -w.omega, -w.omega + 1):
                for c_z, c_b in ((1, 1), (1, 2), (2, 3)):
                    if piece_dim(f, w, 2, d, c_b):
                        assert derham_slice(f, d, c_z, c_b, w).composite().is_zero()
                        slices += 1
    assert slices > 0


def test_criterion_7_bound_and_estimate_side_by_side():
    job = {"command": "bound", "weights": [2, 2], "f": "x1^2+x2^2"}
    report = run(job)
    assert dumps(report) == dumps(run(job))
    assert report["bound"] == 1
    est = report["truncated_estimate"]
    assert est["status"] == "value"
    assert report["divergent"] == (est["dim"] != report["bound"])
    # the bound against its own oracle: the closed-form Koszul series
    assert [r["degree"] for r in report["rows"]] == [4] and report["rows"][0]["h1dim"] == 1
    # the estimate against a direct truncated computation and the filtration
    f, w = example_family(2, 2)
    assert truncated_h1(f, -w.omega, est["at_cap"], est["at_cap"] + est["slack"], w).dim == est["dim"]
    assert filtration_report(f, w).total == est["dim"]
    assert theorem2_bound(f, w).bound == report["bound"]


def test_criterion_8_batch_rerun_is_byte_identical():
    with tempfile.TemporaryDirectory() as tmp:
        cache = os.path.join(tmp, "cache")
        outs = []
        for k in range(2):
            out = os.path.join(tmp, "run%d.csv" % k)
            batch(FULL_CORPUS, out, cache)
            with open(out, "rb") as fh:
                outs.append(fh.read())
        cold = os.path.join(tmp, "cold.csv")
        batch(FULL_CORPUS, cold, None, jobs=2)
        with open(cold, "rb") as fh:
            outs.append(fh.read())
    assert outs[0] == outs[1] == outs[2]
    assert outs[0].count(b"\n") == 1 + sum(1 for _ in read_corpus(FULL_CORPUS))


def main() -> int:
    failed = 0
    for name, fn in sorted(((k, v) for k, v in globals().items() if k.startswith("test_criterion_")), key=lambda kv: int(kv[0].split("_")[2])):
        start = time.perf_counter()
        try:
            fn()
            status = "PASS"
        except Exception as e:  # noqa: BLE001
            status = "FAIL (%s: %s)" % (type(e).__name__, e)
            failed += 1
        print("%-4s  %s  [%.1fs]" % (status, name, time.perf_counter() - start))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
