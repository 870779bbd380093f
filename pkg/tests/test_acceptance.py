"""Acceptance criteria, one test per criterion.

Each test runs the matching named suite at seed 0, prints a single
pass/fail line, and enforces the stated runtime budget where one
exists.  Everything is exact: a suite passes only with zero failing
cases.
"""

import pytest

from cliffinv.suites import run_suite

CRITERIA = [
    # (number, suite, runtime bound in seconds or None, summary)
    (1, "clifford-dims", 30.0, "dim C0 = dim C1 = 2^(n-1), ranks 1..7 over Q and F_p"),
    (2, "center-law", None, "odd rank: scalar centre; even rank: F[x]/(x^2 - delta)"),
    (3, "disc-additivity", None, "signed discriminant additive on even-rank sums"),
    (4, "components-equal", None, "the two component classes agree (rank 4, trivial disc)"),
    (5, "e2-additivity", 60.0, "e2 additive on 50 random rank-4 pairs"),
    (6, "sum-isomorphism", None, "sum map bijective homomorphism, total rank <= 6, Q and F_3"),
    (7, "metabolic-splitting", None, "hyperbolic C0 splits into two full matrix algebras"),
    (8, "hyperbolic-model", None, "exterior model is an isomorphism for r <= 3"),
    (9, "norm-roundtrip", None, "norm-form components carry the quaternion class, 20 cases"),
    (10, "pfaffian-roundtrip", None, "Albert form e2 = sum of quaternion classes, 10 cases"),
    (11, "surjectivity", 120.0, "every even subset of {2,3,5,7,11,inf} is hit by a preimage"),
    (12, "hilbert-product", None, "product formula on 1000 random symbol pairs"),
    (13, "milnor-residues", None, "reciprocity on 20 random forms; 10 extension certificates"),
    (14, "dedekind-layer", None, "Cl/2, orders, closure, reductions over Z[sqrt(-5)]"),
]


@pytest.mark.parametrize("number,suite,bound,summary", CRITERIA, ids=[c[1] for c in CRITERIA])
def test_acceptance_criterion(number, suite, bound, summary):
    report = run_suite(suite, seed=0)
    status = "PASS" if report.ok else "FAIL"
    line = (
        f"{status} criterion {number} ({suite}): {report.cases} cases, "
        f"{len(report.failures)} failures, {report.wall_time:.1f}s -- {summary}"
    )
    print(line)
    assert report.ok, f"criterion {number} failed: {report.failures[:5]}"
    if bound is not None:
        assert report.wall_time < bound, (
            f"criterion {number} exceeded its runtime budget: "
            f"{report.wall_time:.1f}s >= {bound}s"
        )
