"""Exhaustive verification of the covering-dimension bounds on small codes.

Codes are enumerated as n-subsets (or multisets) of the points of
PG(k-1, q) whose span is the whole space.  Equivalent codes may be visited
more than once; every verdict is an invariant of the code, so repeats only
cost time.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from enum import Enum
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Iterator

import numpy as np

from . import __version__
from .algebra import MatrixGF, encode_vectors, field_from_order, normalize_vectors, projective_points, rank
from .caps import get_caps
from .code import INFINITY, LinearCode, covering_dimension
from .errors import CapExceeded, CrossCheckError

log = logging.getLogger(__name__)


class ConjectureClass(str, Enum):
    HOLDS_STRICT = "HOLDS_STRICT"
    EXCEPTION_DUAL_HAMMING = "EXCEPTION_DUAL_HAMMING"
    EXCEPTION_BINARY_PARITY = "EXCEPTION_BINARY_PARITY"
    VIOLATION = "VIOLATION"
    NOT_APPLICABLE = "NOT_APPLICABLE"


UNRESOLVED = "unresolved-regime"
RESOLVED = "resolved"


def code_id(C: LinearCode) -> str:
    """Sorted multiset of normalized column encodings, prefixed by q and k."""
    cols = sorted(encode_vectors(normalize_vectors(C.field, C.columns), C.q).tolist())
    return f"q{C.q}k{C.k}:" + ",".join(map(str, cols))


def _id_key(cid: str) -> tuple:
    head, cols = cid.split(":")
    q, k = head[1:].split("k")
    return int(q), int(k), cols.count(",") + 1, tuple(int(c) for c in cols.split(","))


@dataclass(frozen=True)
class CodeVerdict:
    code_id: str
    q: int
    n: int
    k: int
    gamma: int | float
    d_perp: int | None
    kung_slack: int | None
    conjecture_class: ConjectureClass
    regime: str | None

    def to_json(self) -> dict:
        return {
            "id": self.code_id,
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "gamma": "inf" if self.gamma == INFINITY else self.gamma,
            "d_perp": self.d_perp,
            "kung_slack": self.kung_slack,
            "class": self.conjecture_class.value,
            "regime": self.regime,
        }

    @classmethod
    def from_json(cls, d: dict) -> "CodeVerdict":
        return cls(
            d["id"], d["q"], d["n"], d["k"],
            INFINITY if d["gamma"] == "inf" else d["gamma"],
            d["d_perp"], d["kung_slack"], ConjectureClass(d["class"]), d["regime"],
        )


def _is_power_of_two(q: int) -> bool:
    return q & (q - 1) == 0


def is_dual_hamming(C: LinearCode) -> bool:
    """Columns are pairwise non-proportional and as many as the points of PG(k-1, q)."""
    if C.n != (C.q**C.k - 1) // (C.q - 1) or C.has_zero_column:
        return False
    cols = encode_vectors(normalize_vectors(C.field, C.columns), C.q)
    return np.unique(cols).size == C.n


def classify(C: LinearCode, gamma: int | float | None = None) -> CodeVerdict:
    """Place C relative to Kung's bound and the sharpened bound.

    Kung's bound and the exact value of gamma on the two exceptional
    families are theorems; a failure raises :class:`CrossCheckError`.
    """
    if gamma is None:
        gamma = covering_dimension(C).value
    n, k, q = C.n, C.k, C.q
    cid = code_id(C)
    d_perp = None if k == n else C.dual_distance
    if gamma == INFINITY or d_perp is None or d_perp < 3:
        return CodeVerdict(cid, q, n, k, gamma, d_perp, None, ConjectureClass.NOT_APPLICABLE, None)
    kung = k - d_perp + 3
    if gamma > kung:
        raise CrossCheckError(f"{cid}: gamma={gamma} exceeds Kung's bound {kung}")
    regime = UNRESOLVED if q >= 4 and _is_power_of_two(q) and d_perp > 4 else RESOLVED
    if is_dual_hamming(C):
        cls = ConjectureClass.EXCEPTION_DUAL_HAMMING
    elif q == 2 and k == n - 1 and d_perp == n and n % 2 == 1:
        cls = ConjectureClass.EXCEPTION_BINARY_PARITY
    elif gamma <= kung - 1:
        cls = ConjectureClass.HOLDS_STRICT
    else:
        cls = ConjectureClass.VIOLATION
    if cls in (ConjectureClass.EXCEPTION_DUAL_HAMMING, ConjectureClass.EXCEPTION_BINARY_PARITY) and gamma != kung:
        raise CrossCheckError(f"{cid}: exceptional code has gamma={gamma}, expected {kung}")
    return CodeVerdict(cid, q, n, k, gamma, d_perp, kung - gamma, cls, regime)


# -- enumeration ------------------------------------------------------------

def _column_sets(npts: int, n: int, simple_only: bool, lead: int | None = None) -> Iterator[tuple[int, ...]]:
    if lead is None:
        pick = combinations if simple_only else combinations_with_replacement
        yield from pick(range(npts), n)
        return
    start = lead + 1 if simple_only else lead
    pick = combinations if simple_only else combinations_with_replacement
    for rest in pick(range(start, npts), n - 1):
        yield (lead,) + rest


def count_column_sets(npts: int, n: int, simple_only: bool) -> int:
    return comb(npts, n) if simple_only else comb(npts + n - 1, n)


def enumerate_codes(q: int, n: int, k: int, simple_only: bool = True, lead: int | None = None) -> Iterator[LinearCode]:
    """Codes whose columns are n points of PG(k-1, q) spanning GF(q)^k, in lexicographic order.

    ``simple_only`` takes distinct points (so d(C^perp) >= 3); otherwise
    points may repeat.  ``lead`` restricts to sets whose first point has
    that index, which is how a search is split into work units.
    """
    f = field_from_order(q)
    pts = projective_points(f, k)
    total = count_column_sets(len(pts), n, simple_only)
    cap = get_caps().subspaces
    if total > cap:
        raise CapExceeded(f"{total} candidate codes exceed cap {cap}")
    for S in _column_sets(len(pts), n, simple_only, lead):
        G = pts[list(S)].T
        if rank(MatrixGF(f, G)) == k:
            yield LinearCode(f, MatrixGF(f, G))


# -- search -----------------------------------------------------------------

@dataclass(frozen=True)
class SearchParams:
    q: int
    k_max: int
    n_max: int
    simple_only: bool = True
    k_min: int = 1
    n_min: int = 1

    def units(self) -> list[tuple[int, int, int]]:
        """Work units (k, n, lead point index) in canonical order."""
        out = []
        for k in range(self.k_min, self.k_max + 1):
            npts = (self.q**k - 1) // (self.q - 1)
            for n in range(max(k, self.n_min), self.n_max + 1):
                if self.simple_only and n > npts:
                    break
                for lead in range(npts):
                    if self.simple_only and npts - lead < n:
                        break
                    out.append((k, n, lead))
        return out


def _run_unit(args) -> tuple[list[dict], list[dict]]:
    q, k, n, lead, simple = args
    rows, bad = [], []
    for C in enumerate_codes(q, n, k, simple, lead):
        v = classify(C)
        rows.append(v.to_json())
        if v.conjecture_class is ConjectureClass.VIOLATION:
            bad.append({**v.to_json(), "generator": C.G.tolist()})
    return rows, bad


_SUMMARY_KEYS = [c.value for c in ConjectureClass]


@dataclass
class SearchReport:
    params: SearchParams
    verdicts: list[CodeVerdict] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)
    timing: float = 0.0
    cursor: int | None = None  # index of the first unfinished work unit, if interrupted

    @property
    def summary(self) -> dict[str, int]:
        counts = dict.fromkeys(_SUMMARY_KEYS, 0)
        for v in self.verdicts:
            counts[v.conjecture_class.value] += 1
        counts["total"] = len(self.verdicts)
        counts[UNRESOLVED] = sum(v.regime == UNRESOLVED for v in self.verdicts)
        return counts

    @property
    def exceptions(self) -> list[CodeVerdict]:
        return [
            v for v in self.verdicts
            if v.conjecture_class in (ConjectureClass.EXCEPTION_DUAL_HAMMING, ConjectureClass.EXCEPTION_BINARY_PARITY)
        ]

    @property
    def complete(self) -> bool:
        return self.cursor is None

    def to_dict(self) -> dict:
        d = {
            "params": asdict(self.params),
            "verdicts": [v.to_json() for v in self.verdicts],
            "summary": self.summary,
            "violations": self.violations,
            "version": __version__,
        }
        if self.cursor is not None:
            d["cursor"] = self.cursor
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "SearchReport":
        d = json.loads(text)
        return cls(
            SearchParams(**d["params"]),
            [CodeVerdict.from_json(v) for v in d["verdicts"]],
            d["violations"],
            cursor=d.get("cursor"),
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = ["id", "q", "n", "k", "gamma", "d_perp", "kung_slack", "class", "regime"]
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for v in self.verdicts:
            w.writerow(v.to_json())
        return buf.getvalue()


def run_search(params: SearchParams, workers: int = 1, resume: SearchReport | None = None) -> SearchReport:
    """Classify every enumerated code; the report is independent of ``workers``.

    On KeyboardInterrupt the finished prefix of work units is returned with
    ``cursor`` set; pass that report back as ``resume`` to continue.
    """
    t0 = time.perf_counter()
    units = params.units()
    start = 0
    rows: list[dict] = []
    bad: list[dict] = []
    if resume is not None:
        if resume.params != params:
            raise ValueError("resume report was produced with different parameters")
        start = len(units) if resume.cursor is None else resume.cursor
        rows = [v.to_json() for v in resume.verdicts]
        bad = list(resume.violations)
    jobs = [(params.q, k, n, lead, params.simple_only) for k, n, lead in units[start:]]
    done = start
    try:
        if workers <= 1:
            results = map(_run_unit, jobs)
            for r, b in results:
                rows.extend(r)
                bad.extend(b)
                done += 1
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for r, b in pool.map(_run_unit, jobs, chunksize=max(1, len(jobs) // (8 * workers))):
                    rows.extend(r)
                    bad.extend(b)
                    done += 1
    except KeyboardInterrupt:
        log.warning("search interrupted after %d of %d work units", done, len(units))
    rows.sort(key=lambda d: _id_key(d["id"]))
    bad.sort(key=lambda d: _id_key(d["id"]))
    report = SearchReport(
        params,
        [CodeVerdict.from_json(d) for d in rows],
        bad,
        timing=time.perf_counter() - t0,
        cursor=None if done == len(units) else done,
    )
    log.info("classified %d codes in %.1fs", len(rows), report.timing)
    return report
