"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""
import json
from itertools import islice

import numpy as np

import oracles
from oracles import NaiveField

from ccdim.algebra import field_from_order
from ccdim.claims import (
    EXAMPLE_GENERATOR,
    EXHAUSTIVE,
    MDS_FIELDS,
    SIMPLEX_CASES,
    random_suite,
    rs_suite,
    suite_codes,
)
from ccdim.cli import main
from ccdim.code import (
    INFINITY,
    code_from_generator,
    covering_dimension_avoidance,
    covering_dimension_subcode,
    support_weight_distribution,
)
from ccdim.construct import (
    BlockSpec,
    binary_parity_dual,
    block_points,
    code_from_points,
    dual_hamming,
    feasible_blocks,
    is_minimal_block,
    is_r_block,
    points_through,
)
from ccdim.formulas import d4_positivity, dual_hamming_swd, klove_An, mds_chain_identity, mds_weight_distribution
from ccdim.matroid import MatroidView, critical_exponent, critical_theorem_all, shortened_polynomial
from ccdim.search import ConjectureClass, run_search

_reports = {}


def three_ways(C):
    return (
        covering_dimension_subcode(C).value,
        covering_dimension_avoidance(C).value,
        critical_exponent(MatroidView.of(C)),
    )


def rows(C):
    return [list(map(int, r)) for r in C.G.tolist()]


def decode_id(cid):
    """Generator (as nested lists) of a search code id over a prime field."""
    head, cols = cid.split(":")
    q, k = map(int, head[1:].split("k"))
    G = [[] for _ in range(k)]
    for c in map(int, cols.split(",")):
        digits = [(c // q**(k - 1 - i)) % q for i in range(k)]
        for i in range(k):
            G[i].append(digits[i])
    return q, G


def exhaustive_reports():
    if "q" not in _reports:
        _reports["q"] = [run_search(p) for p in EXHAUSTIVE]
    return _reports["q"]


def naive_block(F, k, r, pts):
    """(is block, every point has a tangent) by brute force over vector subspaces of dim k-r."""
    pts = set(pts)
    tangent = set()
    for U in oracles.vector_subspaces(F, k, k - r):
        hit = {oracles.normalize(F, v) for v in U if any(v)} & pts
        if not hit:
            return False, False
        if len(hit) == 1:
            tangent |= hit
    return True, tangent == pts


def test_criterion_01_worked_example(criterion):
    with criterion(1, "worked [11,5] ternary example", limit=5):
        C = code_from_generator(field_from_order(3), EXAMPLE_GENERATOR)
        full = tuple(support_weight_distribution(C, r)[11] for r in range(1, 6))
        assert full == (0, 330, 825, 110, 1)
        assert set(three_ways(C)) == {2}
        assert C.dual_distance == 5
    F = NaiveField(3)
    assert oracles.dual_distance(F, EXAMPLE_GENERATOR) == 5
    assert oracles.weight_distribution(F, EXAMPLE_GENERATOR)[11] == 0


def test_criterion_02_covering_dimension_methods(criterion):
    with criterion(2, "500 random codes, three covering-dimension methods agree", limit=180):
        codes = list(random_suite(0, 500))
        mismatches = [rows(C) for C in codes if len(set(three_ways(C))) != 1]
        assert len(codes) >= 500
        assert {C.q for C in codes} == {2, 3, 4, 5}
        assert max(C.n for C in codes) <= 10 and max(C.k for C in codes) <= 5
        assert mismatches == []
    small = [C for C in codes if C.q**C.k <= 27][:40]
    for C in small:
        assert covering_dimension_subcode(C).value == oracles.gamma(NaiveField(C.q), rows(C))


def test_criterion_03_critical_theorem(criterion):
    with criterion(3, "tuple counts equal shortened characteristic polynomial, all X, m=1..3", limit=300):
        codes = list(random_suite(1, 50, n_max=8, k_max=4))
        checked = sum(critical_theorem_all(C, m) for C in codes for m in (1, 2, 3))
        assert checked == 3 * sum(2**C.n for C in codes)
    tiny = [C for C in codes if C.q**C.k <= 9 and C.n <= 5][:4]
    assert tiny
    for C in tiny:
        F = NaiveField(C.q)
        for X in [range(C.n), range(C.n - 1), [0]]:
            for m in (1, 2):
                assert oracles.tuple_count(F, rows(C), X, m) == shortened_polynomial(C, X)(C.q**m)


def test_criterion_04_mds(criterion):
    with criterion(4, "MDS weight distribution, chain identity, A_n = 0 consequences"):
        seen = set()
        for q, n, k, C in rs_suite():
            A = C.weight_distribution()
            formula = mds_weight_distribution(n, k, q)
            assert A[0] == 1 and all(A[w] == 0 for w in range(1, n - k + 1))
            assert {w: int(A[w]) for w in formula} == formula
            if n >= 2:
                assert mds_chain_identity(n, k, q)
            if A[n] == 0:
                assert k % 2 == 0
                assert set(three_ways(C)) == {2}
            seen.add(q)
        assert seen == set(MDS_FIELDS)
    for q, n, k, C in rs_suite():
        if q**k <= 125:
            assert list(C.weight_distribution()) == oracles.weight_distribution(NaiveField(q), rows(C))


def test_criterion_05_simplex(criterion):
    with criterion(5, "simplex support weight distribution and covering dimension k"):
        for q, k in SIMPLEX_CASES:
            C = dual_hamming(q, k)
            for r in range(1, k + 1):
                i, count = dual_hamming_swd(q, k, r)
                assert support_weight_distribution(C, r).nonzero() == {i: count}
            assert set(three_ways(C)) == {k}
    for q, k in [(2, 3), (3, 2)]:
        G = rows(dual_hamming(q, k))
        for r in range(1, k + 1):
            i, count = dual_hamming_swd(q, k, r)
            A = oracles.support_weight_distribution(NaiveField(q), G, r)
            assert A[i] == count and sum(A) == count


def test_criterion_06_klove(criterion):
    with criterion(6, "full-support subcode closed form and dual distance 4 positivity"):
        checked = 0
        for C in suite_codes(0):
            if C.k == C.n or C.has_zero_column:
                continue
            for r in range(max(1, C.k + 2 - C.dual_distance), C.k + 1):
                assert support_weight_distribution(C, r)[C.n] == klove_An(C.n, C.k, C.q, r)
                checked += 1
        assert checked > 0
        cases = 0
        for k in range(3, 9):
            for q in (2, 3, 4, 5):
                for n in range(k + 1, 21):
                    value, form = d4_positivity(n, k, q)
                    assert value > 0 and form.total == value
                    cases += 1
        assert cases == sum(20 - k for k in range(3, 9)) * 4
    for C in islice(suite_codes(0), 0, 40):
        if C.k == C.n or C.has_zero_column or C.q**C.k > 64 or C.q**C.n > 4096:
            continue
        F = NaiveField(C.q)
        dp = oracles.dual_distance(F, rows(C))
        for r in range(max(1, C.k + 2 - dp), min(C.k, 2) + 1):
            assert oracles.support_weight_distribution(F, rows(C), r)[C.n] == klove_An(C.n, C.k, C.q, r)


def test_criterion_07_exhaustive(criterion):
    with criterion(7, "exhaustive q=2 (k<=4, n<=8) and q=3 (k<=3, n<=8) searches", limit=600):
        _reports.pop("q", None)
        reports = exhaustive_reports()
        for R in reports:
            assert R.complete and not R.violations
            assert R.summary[ConjectureClass.VIOLATION.value] == 0
            for v in R.verdicts:
                if v.conjecture_class is ConjectureClass.NOT_APPLICABLE:
                    continue
                kung = v.k - v.d_perp + 3
                assert v.gamma <= kung
                if v.conjecture_class is ConjectureClass.HOLDS_STRICT:
                    assert v.gamma <= kung - 1
                else:
                    assert v.gamma == kung
    rng = np.random.default_rng(7)
    for R in reports:
        sample = rng.choice(len(R.verdicts), size=25, replace=False)
        for i in sample:
            v = R.verdicts[int(i)]
            q, G = decode_id(v.code_id)
            if q**v.k > 27:
                continue
            F = NaiveField(q)
            assert oracles.gamma(F, G) == v.gamma
            if v.k < v.n:
                assert oracles.dual_distance(F, G) == v.d_perp


def test_criterion_08_exception_biconditionals(criterion):
    with criterion(8, "d_perp=3 gives gamma=k iff simplex; binary [n,n-1] gamma=2 iff n odd"):
        strata = 0
        for R in exhaustive_reports():
            for v in R.verdicts:
                if v.d_perp != 3 or v.gamma == INFINITY:
                    continue
                cols = v.code_id.split(":")[1].split(",")
                simplex = len(set(cols)) == len(cols) == (v.q**v.k - 1) // (v.q - 1)
                assert (v.gamma == v.k) == simplex
                strata += 1
        assert strata > 0
        for n in range(2, 12):
            C = binary_parity_dual(n)
            g = covering_dimension_subcode(C).value
            assert g == covering_dimension_avoidance(C).value
            assert (g == 2) == (n % 2 == 1)
    for n in range(2, 7):
        assert (oracles.gamma(NaiveField(2), rows(binary_parity_dual(n))) == 2) == (n % 2 == 1)


def test_criterion_09_blocks(criterion):
    with criterion(9, "blocking-set construction for q in {2,3}, k<=5, m<=3", limit=600):
        cases = list(feasible_blocks((2, 3), 5, 3))
        assert (2, 3, 2) in cases
        for q, k, m in cases:
            spec = BlockSpec(q, k, m)
            P = block_points(spec)
            assert is_r_block(P, k - m).holds
            for j in spec.T:
                assert len(points_through(P, j)) == q ** (k - m)
            if m <= q ** (k - m - 1):
                assert is_minimal_block(P, k - m).holds
            if m == 2:
                C = code_from_points(P)
                g = covering_dimension_subcode(C).value
                assert C.dual_distance == 3
                assert g == covering_dimension_avoidance(C).value == k - 1
        neg = is_minimal_block(block_points(BlockSpec(2, 3, 2)), 1)
        assert neg.is_block and not neg.minimal
    for q, k, m in cases:
        if q**k > 27:
            continue
        P = block_points(BlockSpec(q, k, m))
        pts = [tuple(map(int, p)) for p in P.points.tolist()]
        is_block, minimal = naive_block(NaiveField(q), k, k - m, pts)
        assert is_block
        assert minimal == is_minimal_block(P, k - m).minimal


def test_criterion_10_determinism(criterion, tmp_path, capsys):
    with criterion(10, "search reports byte-identical for 1 and 2 workers", limit=600):
        for p in EXHAUSTIVE:
            args = ["search", str(p.q), "--k-max", str(p.k_max), "--n-max", str(p.n_max), "--simple"]
            one, two = tmp_path / f"one{p.q}.json", tmp_path / f"two{p.q}.json"
            assert main(args + ["--report", str(one)]) == 0
            assert main(args + ["--workers", "2", "--report", str(two)]) == 0
            assert one.read_bytes() == two.read_bytes()
            assert json.loads(one.read_text())["summary"]["total"] > 0
        capsys.readouterr()
