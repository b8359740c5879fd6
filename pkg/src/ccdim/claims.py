"""Checks behind ``ccdim verify-paper``.

Each claim is a function of a seed that raises AssertionError (or
CrossCheckError) on failure and returns a short summary on success.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .algebra import field_from_order
from .caps import get_caps
from .code import (
    INFINITY,
    LinearCode,
    code_from_generator,
    covering_dimension_avoidance,
    covering_dimension_subcode,
    random_code,
    support_weight_distribution,
)
from .construct import (
    BlockSpec,
    binary_parity_dual,
    block_parts,
    block_points,
    code_from_points,
    dual_hamming,
    feasible_blocks,
    is_minimal_block,
    is_r_block,
    points_through,
    reed_solomon,
)
from .formulas import d4_positivity, dual_hamming_swd, klove_An, mds_chain_identity, mds_weight_distribution
from .matroid import MatroidView, critical_exponent, critical_theorem_all
from .search import ConjectureClass, SearchParams, run_search

EXAMPLE_GENERATOR = [
    [1, 0, 0, 0, 0, 1, 2, 2, 2, 1, 0],
    [0, 1, 0, 0, 0, 0, 1, 2, 2, 2, 1],
    [0, 0, 1, 0, 0, 2, 1, 2, 0, 1, 2],
    [0, 0, 0, 1, 0, 1, 1, 0, 1, 1, 1],
    [0, 0, 0, 0, 1, 2, 2, 2, 1, 0, 1],
]
EXAMPLE_FULL_SUPPORT = (0, 330, 825, 110, 1)

SIMPLEX_CASES = [(2, 3), (2, 4), (3, 2), (3, 3)]
MDS_FIELDS = [3, 4, 5, 7]
EXHAUSTIVE = [SearchParams(2, k_max=4, n_max=8), SearchParams(3, k_max=3, n_max=8)]


def example_code() -> LinearCode:
    return code_from_generator(field_from_order(3), EXAMPLE_GENERATOR)


def rs_suite():
    for q in MDS_FIELDS:
        for n in range(1, q + 2):
            for k in range(1, min(n, 4) + 1):
                yield q, n, k, reed_solomon(q, n, k)


def random_suite(seed: int, count: int, qs=(2, 3, 4, 5), n_max: int = 10, k_max: int = 5):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        q = int(rng.choice(qs))
        n = int(rng.integers(1, n_max + 1))
        k = int(rng.integers(1, min(n, k_max) + 1))
        yield random_code(field_from_order(q), n, k, rng)


def _gamma_value(C: LinearCode):
    """Covering dimension, asserting agreement of the methods that fit under the caps."""
    g1 = covering_dimension_subcode(C).value
    g2 = covering_dimension_avoidance(C).value
    assert g1 == g2, (C.G.tolist(), g1, g2)
    if 2**C.n <= get_caps().subsets:
        g3 = critical_exponent(MatroidView.of(C))
        assert g1 == g3, (C.G.tolist(), g1, g3)
    return g1


def claim_example(seed: int) -> str:
    C = example_code()
    full = tuple(support_weight_distribution(C, r)[C.n] for r in range(1, 6))
    assert full == EXAMPLE_FULL_SUPPORT, full
    assert _gamma_value(C) == 2
    assert C.dual_distance == 5
    return f"A_n^(1..5) = {full}, gamma = 2, d_perp = 5"


def claim_oracles(seed: int) -> str:
    codes = list(random_suite(seed, 500))
    infinite = sum(_gamma_value(C) == INFINITY for C in codes)
    return f"{len(codes)} codes agree on three methods ({infinite} with gamma = inf)"


def claim_critical(seed: int) -> str:
    checked = 0
    for C in random_suite(seed + 1, 50, n_max=8, k_max=4):
        for m in (1, 2, 3):
            checked += critical_theorem_all(C, m)
    return f"{checked} (code, X, m) counts match"


def claim_mds(seed: int) -> str:
    count = 0
    for q, n, k, C in rs_suite():
        formula = mds_weight_distribution(n, k, q)
        A = C.weight_distribution()
        assert A[0] == 1 and all(A[w] == 0 for w in range(1, n - k + 1)), (q, n, k, A)
        assert {w: A[w] for w in formula} == formula, (q, n, k, A, formula)
        assert n < 2 or mds_chain_identity(n, k, q), (q, n, k)
        if A[n] == 0:
            assert k % 2 == 0, (q, n, k)
            assert _gamma_value(C) == 2, (q, n, k)
        count += 1
    return f"{count} RS / extended RS codes"


def claim_simplex(seed: int) -> str:
    for q, k in SIMPLEX_CASES:
        C = dual_hamming(q, k)
        for r in range(1, k + 1):
            i, count = dual_hamming_swd(q, k, r)
            assert support_weight_distribution(C, r).nonzero() == {i: count}, (q, k, r)
        assert _gamma_value(C) == k, (q, k)
    return f"{len(SIMPLEX_CASES)} simplex codes"


def suite_codes(seed: int):
    yield example_code()
    for *_, C in rs_suite():
        yield C
    for q, k in SIMPLEX_CASES:
        yield dual_hamming(q, k)
    for n in range(2, 9):
        yield binary_parity_dual(n)
    for q, k, m in feasible_blocks((2, 3), 5, 3):
        yield code_from_points(block_points(BlockSpec(q, k, m)))
    yield from random_suite(seed + 2, 100, n_max=10, k_max=5)


def claim_klove(seed: int) -> str:
    checked = 0
    for C in suite_codes(seed):
        if C.k == C.n or C.has_zero_column:
            continue
        dp = C.dual_distance
        for r in range(max(1, C.k + 2 - dp), C.k + 1):
            assert support_weight_distribution(C, r)[C.n] == klove_An(C.n, C.k, C.q, r), (C.G.tolist(), r)
            checked += 1
    positive = 0
    for k in range(3, 9):
        for q in (2, 3, 4, 5):
            for n in range(k + 1, 21):
                value, form = d4_positivity(n, k, q)
                assert value > 0 and form.total == value
                positive += 1
    return f"{checked} closed-form values, {positive} positivity cases"


@lru_cache(maxsize=None)
def _exhaustive(workers: int = 1):
    return tuple(run_search(p, workers=workers) for p in EXHAUSTIVE)


def _check_report(R) -> None:
    assert R.complete
    assert not R.violations
    s = R.summary
    assert s[ConjectureClass.VIOLATION.value] == 0
    assert sum(s[c.value] for c in ConjectureClass) == s["total"] == len(R.verdicts)
    for v in R.verdicts:
        if v.conjecture_class is ConjectureClass.NOT_APPLICABLE:
            continue
        bound = v.k - v.d_perp + 3
        assert v.gamma <= bound, v
        if v.conjecture_class is ConjectureClass.HOLDS_STRICT:
            assert v.gamma <= bound - 1, v
        else:
            assert v.gamma == bound, v


def claim_exhaustive(seed: int) -> str:
    reports = _exhaustive()
    for R in reports:
        _check_report(R)
    return "; ".join(f"q={R.params.q}: {R.summary['total']} codes, {len(R.exceptions)} exceptions" for R in reports)


def claim_exceptions(seed: int) -> str:
    strata = 0
    for R in _exhaustive():
        for v in R.verdicts:
            if v.d_perp == 3 and v.gamma != INFINITY:
                assert (v.gamma == v.k) == (v.conjecture_class is ConjectureClass.EXCEPTION_DUAL_HAMMING), v
                strata += 1
    for n in range(2, 12):
        C = binary_parity_dual(n)
        assert (_gamma_value(C) == 2) == (n % 2 == 1), n
    return f"{strata} codes with d_perp = 3; binary parity n = 2..11"


def claim_blocks(seed: int) -> str:
    cases = 0
    for q, k, m in feasible_blocks((2, 3), 5, 3):
        spec = BlockSpec(q, k, m)
        P = block_points(spec)
        r = k - m
        assert is_r_block(P, r).holds, (q, k, m)
        for j in spec.T:
            assert len(points_through(P, j)) == q ** (k - m), (q, k, m, j)
        minimal = is_minimal_block(P, r)
        if m <= q ** (k - m - 1):
            assert minimal.holds, (q, k, m)
        if m == 2:
            C = code_from_points(P)
            assert C.dual_distance == 3 and _gamma_value(C) == k - 1, (q, k, m)
        cases += 1
    neg = is_minimal_block(block_points(BlockSpec(2, 3, 2)), 1)
    assert neg.is_block and not neg.minimal
    assert set(block_parts(BlockSpec(2, 3, 2))) == {"X", "Y", "Z"}
    return f"{cases} feasible (q, k, m); (2, 3, 2) non-minimal"


def claim_determinism(seed: int) -> str:
    one = [R.to_json() for R in _exhaustive(workers=1)]
    many = [R.to_json() for R in _exhaustive(workers=2)]
    assert one == many
    return f"{sum(len(s) for s in one)} bytes identical"


@dataclass(frozen=True)
class Claim:
    name: str
    description: str
    run: Callable[[int], str]


CLAIMS = [
    Claim("example", "worked [11,5] ternary example", claim_example),
    Claim("oracles", "three covering-dimension methods agree", claim_oracles),
    Claim("critical", "tuple counts equal the characteristic polynomial", claim_critical),
    Claim("mds", "MDS weight distribution and A_n = 0 consequences", claim_mds),
    Claim("simplex", "simplex support weight distribution", claim_simplex),
    Claim("klove", "full-support subcode counts and dual distance 4 positivity", claim_klove),
    Claim("exhaustive", "exhaustive bound verification on small codes", claim_exhaustive),
    Claim("exceptions", "exception families are exactly the equality cases", claim_exceptions),
    Claim("blocks", "blocking-set construction", claim_blocks),
    Claim("determinism", "search reports independent of worker count", claim_determinism),
]


@dataclass(frozen=True)
class ClaimResult:
    name: str
    passed: bool
    seconds: float
    detail: str


def run_claim(claim: Claim, seed: int = 0) -> ClaimResult:
    t0 = time.perf_counter()
    try:
        detail = claim.run(seed)
        ok = True
    except Exception as exc:
        detail, ok = f"{type(exc).__name__}: {exc}"[:300], False
    return ClaimResult(claim.name, ok, time.perf_counter() - t0, detail)
