"""Acceptance suite: one test per criterion, each with its time budget.

Every test records a PASS/FAIL line; the lines are printed at the end of the
pytest run (see ``conftest.py``) and also when this file is run directly.
"""

import json
import subprocess
import sys
import time

import pytest

from pantscurves.engine import intersection, self_intersection
from pantscurves.lab import classes_with_si, classify_two_intersections, refinement_check, scan_triples
from pantscurves.oracle import oracle_self_intersection
from pantscurves.verify import oracle_mismatches
from pantscurves.words import canonical_class, enumerate_classes

RESULTS: dict[int, str] = {}


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def report(n: int, title: str, ok: bool, seconds: float, budget: float | None, note: str = ""):
    in_time = budget is None or seconds < budget
    status = "PASS" if ok and in_time else "FAIL"
    limit = f" (limit {budget:g} s)" if budget is not None else ""
    line = f"criterion {n:2d} {status}  {title}: {seconds:.1f} s{limit}"
    if note:
        line += f"  [{note}]"
    RESULTS[n] = line
    print(line)
    assert ok, note
    assert in_time, f"took {seconds:.1f} s, limit {budget} s"


def test_criterion_01_si_one_census():
    with Timer() as t:
        got = [c.word for c in classes_with_si(1)]
    report(1, "si=1 census", sorted(got) == ["aB", "aab", "abb"], t.seconds, 1, f"got {got}")


def test_criterion_02_si_two_census():
    expected = {"aaB", "aBB", "aaab", "aabab", "abbb", "ababb", "aabb", "abaB", "abAb"}
    with Timer() as t:
        got = [c.word for c in classes_with_si(2)]
    report(2, "si=2 census", len(got) == 9 and set(got) == expected, t.seconds, 10, f"got {got}")


def test_criterion_03_family_formulas():
    bad = []
    with Timer() as t:
        for n in range(1, 9):
            for word, want in (("a" * n + "B", n), ("a" * n + "Cb", n + 1), ("a" * n + "CC", n + 1)):
                c = canonical_class(word)
                got = (self_intersection(c), oracle_self_intersection(c))
                if got != (want, want):
                    bad.append((word, want, got))
    report(3, "family formulas n = 1..8, engine and oracle", not bad, t.seconds, 60, f"failures {bad}")


def test_criterion_04_power_laws():
    bad = []
    rows = 0
    with Timer() as t:
        roots = enumerate_classes(5, non_power_only=True)
        betas = enumerate_classes(4)
        for d in roots:
            si_d = self_intersection(d)
            for n in (2, 3):
                p = d.power(n)
                if self_intersection(p, direct=True) != si_d * n * n + n - 1:
                    bad.append(("si", d.word, n))
                rows += 1 + len(betas)
                for beta in betas:
                    if intersection(p, beta, direct=True) != n * intersection(d, beta):
                        bad.append(("i", d.word, n, beta.word))
    report(4, "power laws |d| <= 5, n in {2, 3}, |beta| <= 4", not bad, t.seconds, 300,
           f"{rows} rows; failures {bad[:10]}")


def test_criterion_05_oracle_equivalence():
    with Timer() as t:
        results = {mode: oracle_mismatches(6, oriented) for mode, oriented in (("unoriented", False), ("oriented", True))}
    bad = {mode: r[1] for mode, r in results.items() if r[1]}
    pairs = {mode: r[0] for mode, r in results.items()}
    report(5, "engine = oracle, length <= 6, both orientations", not bad, t.seconds, 600, f"pairs {pairs}; mismatches {bad}")


def test_criterion_06_parity():
    odd = []
    with Timer() as t:
        classes = enumerate_classes(7)
        for i, x in enumerate(classes):
            for y in classes[i:]:
                if intersection(x, y) % 2:
                    odd.append((x.word, y.word))
    report(6, "parity of i, length <= 7", not odd, t.seconds, None, f"odd {odd[:10]}")


def test_criterion_07_refinement():
    failures = []
    with Timer() as t:
        classes = enumerate_classes(7, non_power_only=True)
        for k in (2, 3, 4):
            for j in (1, 2):
                res = refinement_check(classes, k, j)
                if not res.passed:
                    failures.append(f"k={k} j={j}: {res.violating_pairs} pairs, e.g. {res.counterexamples[:3]}")
    report(7, "k-equivalence refines j-equivalence, length <= 7", not failures, t.seconds, 900, "; ".join(failures))


def test_criterion_08_triple_scan():
    with Timer() as t:
        scan = scan_triples(8)
    ok = scan["conjecture_holds"] and scan["reported_present"] and not scan["odd_entries"]
    note = (
        f"ratio {scan['ratio_violations'][:5]}; equality {scan['equality_violations'][:5]}; "
        f"missing {scan['missing_reported']}"
    )
    report(8, "triple scan, length <= 8", ok, t.seconds, 1200, note)


def test_criterion_09_two_intersection_classification():
    with Timer() as t:
        res = classify_two_intersections(8)
    report(9, "i(., aB) = 2 classes lie in the C^m families, length <= 8", res["passed"], t.seconds, None,
           f"non-members {res['non_members']}")


@pytest.mark.slow
def test_criterion_10_determinism():
    cmd = [sys.executable, "-m", "pantscurves", "verify-paper", "--format", "json"]
    with Timer() as t:
        first = subprocess.run(cmd, capture_output=True)
        second = subprocess.run(cmd, capture_output=True)
    same = first.stdout == second.stdout and first.returncode == second.returncode
    valid = bool(first.stdout) and json.loads(first.stdout)["command"] == "verify-paper"
    report(10, "verify-paper --format json byte-identical across runs", same and valid, t.seconds, None,
           f"exit codes {first.returncode}, {second.returncode}; {len(first.stdout)} bytes")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
