"""The matroid induced by a code's generator columns.

Rank of a coordinate set X is the rank of the columns of ``G`` indexed by
X.  The characteristic polynomial is computed by a depth-first sweep over
all subsets that carries an echelon basis down the recursion, so each
subset costs one column reduction instead of a full rank computation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .algebra import FieldSpec, MatrixGF, normalize_vectors, rank
from .caps import get_caps
from .code import (
    INFINITY,
    CodeError,
    LinearCode,
    _shortened_generator,
    code_from_generator,
)
from .errors import CapExceeded, CrossCheckError


def _reducer(f: FieldSpec):
    """Return ``reduce(v, basis) -> (v', pivot)`` over ``f`` for list vectors."""
    if f.m == 1:
        p = f.p

        def axpy(v, c, row):
            return [(a - c * b) % p for a, b in zip(v, row)]

        def scale(v, c):
            return [(a * c) % p for a in v]

    else:
        add, mul, neg = f.add, f.mul, f.neg

        def axpy(v, c, row):
            nc = neg(c)
            return [add(a, mul(nc, b)) for a, b in zip(v, row)]

        def scale(v, c):
            return [mul(a, c) for a in v]

    inv = f.inv

    def reduce(v, basis):
        for piv, row in basis:
            c = v[piv]
            if c:
                v = axpy(v, c, row)
        for i, a in enumerate(v):
            if a:
                return scale(v, inv(a)), i
        return v, -1

    return reduce


@dataclass(frozen=True)
class CharPoly:
    """Integer polynomial; ``coefficients[i]`` multiplies lambda**i."""

    coefficients: tuple[int, ...]

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    @property
    def degree(self) -> int:
        for i in range(len(self.coefficients) - 1, -1, -1):
            if self.coefficients[i]:
                return i
        return -1

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __str__(self):
        terms = []
        for i in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            mag = abs(c)
            body = f"{mag}{mono}" if (mag != 1 or not mono) else mono
            terms.append(("- " if c < 0 else "+ ") + body)
        if not terms:
            return "0"
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


@dataclass(frozen=True, eq=False)
class MatroidView:
    """Column matroid of a matrix over a field; build it with :meth:`of`."""

    field: FieldSpec
    columns: np.ndarray  # n x k, one column vector per ground-set element
    code: LinearCode | None = None

    @classmethod
    def of(cls, C: LinearCode) -> "MatroidView":
        return cls(C.field, C.columns, C)

    @classmethod
    def from_matrix(cls, field: FieldSpec, G) -> "MatroidView":
        G = np.asarray(G, dtype=np.int64)
        return cls(field, G.T.reshape(G.shape[1], G.shape[0]))

    @property
    def n(self) -> int:
        return self.columns.shape[0]

    @property
    def ambient(self) -> int:
        return self.columns.shape[1]

    @property
    def ground(self) -> range:
        return range(self.n)

    def rank_of(self, X: Iterable[int]) -> int:
        X = sorted(set(X))
        if not X:
            return 0
        return rank(MatrixGF(self.field, self.columns[X]))

    def full_rank(self) -> int:
        return self.rank_of(self.ground)

    def loops(self) -> list[int]:
        return [i for i in self.ground if not self.columns[i].any()]

    def has_loop(self) -> bool:
        return bool(self.loops())

    def _basis_of(self, X: Iterable[int]) -> list[tuple[int, list[int]]]:
        reduce = _reducer(self.field)
        basis: list[tuple[int, list[int]]] = []
        for i in X:
            v, piv = reduce(self.columns[i].tolist(), basis)
            if piv >= 0:
                basis.append((piv, v))
        return basis

    def closure(self, X: Iterable[int]) -> frozenset[int]:
        reduce = _reducer(self.field)
        basis = self._basis_of(X)
        return frozenset(
            i for i in self.ground if reduce(self.columns[i].tolist(), basis)[1] < 0
        )


def _charpoly_sweep(
    f: FieldSpec, cols: Sequence[list[int]], base: list[tuple[int, list[int]]]
) -> CharPoly:
    """sum over X of (-1)^|X| lambda^(rho(E) - rho(X)), rho relative to ``base``."""
    n = len(cols)
    cap = get_caps().subsets
    if 2**n > cap:
        raise CapExceeded(f"2^{n} subsets exceed cap {cap}")
    reduce = _reducer(f)
    r0 = len(base)
    signed = [0] * (len(cols[0]) + 1 if cols else 1)

    def sweep(i, basis, sign):
        if i == n:
            signed[len(basis) - r0] += sign
            return
        sweep(i + 1, basis, sign)
        v, piv = reduce(cols[i], basis)
        if piv >= 0:
            sweep(i + 1, basis + [(piv, v)], -sign)
        else:
            sweep(i + 1, basis, -sign)

    sweep(0, list(base), 1)
    full = len(_extend(reduce, base, cols)) - r0
    coeffs = [0] * (full + 1)
    for rk, s in enumerate(signed):
        if s:
            coeffs[full - rk] += s
    return CharPoly(tuple(coeffs))


def _extend(reduce, base, cols):
    basis = list(base)
    for c in cols:
        v, piv = reduce(c, basis)
        if piv >= 0:
            basis.append((piv, v))
    return basis


def characteristic_polynomial(Mv: MatroidView) -> CharPoly:
    return _charpoly_sweep(Mv.field, [c.tolist() for c in Mv.columns], [])


def contraction_polynomial(Mv: MatroidView, F: Iterable[int]) -> CharPoly:
    """p(M/F) on E - F, using rank_{M/F}(X) = rank(X u F) - rank(F)."""
    F = set(F)
    base = Mv._basis_of(sorted(F))
    cols = [Mv.columns[i].tolist() for i in Mv.ground if i not in F]
    return _charpoly_sweep(Mv.field, cols, base)


def critical_exponent(Mv: MatroidView) -> int | float:
    """Smallest j >= 1 with p(M; q^j) > 0, or infinity if M has a loop."""
    if Mv.has_loop():
        return INFINITY
    p = characteristic_polynomial(Mv)
    q = Mv.field.q
    for j in range(1, max(p.degree, 0) + 2):
        if p(q**j) > 0:
            return j
    raise CrossCheckError(f"no positive value of {p} at q^j for j <= rank")


@dataclass(frozen=True)
class GirthResult:
    girth: int
    circuit: frozenset[int]


def circuits_and_girth(Mv: MatroidView) -> GirthResult:
    """Girth as the minimum weight of the dual code, with a smallest circuit."""
    C = Mv.code or code_from_generator(Mv.field, Mv.columns.T, strict=False)
    if C.k == C.n:
        raise CodeError("matroid is free (dual code is zero); no circuits")
    D = C.dual_code
    best, best_word = C.n + 1, None
    for cw in D.codeword_chunks():
        w = (cw != 0).sum(axis=1)
        w[w == 0] = C.n + 1
        i = int(np.argmin(w))
        if w[i] < best:
            best, best_word = int(w[i]), cw[i]
    circuit = frozenset(int(i) for i in np.flatnonzero(best_word))
    X = sorted(circuit)
    if Mv.rank_of(X) != len(X) - 1 or any(Mv.rank_of(X[:j] + X[j + 1 :]) != len(X) - 1 for j in range(len(X))):
        raise CrossCheckError(f"support {X} of a minimum dual word is not a circuit")
    return GirthResult(best, circuit)


def tuple_union_counts(C: LinearCode, m: int) -> np.ndarray:
    """``out[mask]`` = number of ordered m-tuples of codewords whose supports union to ``mask``.

    Exhaustive over all (q^k)^m tuples, grouped by support pattern.
    """
    if m < 1:
        raise ValueError("m must be positive")
    cap = get_caps().subsets
    if 2**C.n > cap:
        raise CapExceeded(f"2^{C.n} support patterns exceed cap {cap}")
    hist = np.bincount(C.support_masks, minlength=1 << C.n).astype(np.int64)
    keys = np.flatnonzero(hist)
    dist = hist.copy()
    for _ in range(m - 1):
        cur = np.flatnonzero(dist)
        ors = (cur[:, None] | keys[None, :]).ravel()
        wts = (dist[cur][:, None] * hist[keys][None, :]).ravel()
        dist = np.zeros(1 << C.n, dtype=np.int64)
        np.add.at(dist, ors, wts)
    return dist


def shortened_polynomial(C: LinearCode, X: Iterable[int]) -> CharPoly:
    """p(M_{C/(E-X)}) on ground set X via an explicit shortened generator."""
    X = sorted(set(X))
    rest = [i for i in range(C.n) if i not in X]
    G = _shortened_generator(C, rest)  # columns already restricted to X
    return characteristic_polynomial(MatroidView.from_matrix(C.field, G.reshape(G.shape[0], len(X))))


def critical_theorem_count(C: LinearCode, X: Iterable[int], m: int) -> int:
    """Ordered m-tuples of codewords with support union exactly X.

    The exhaustive count is checked against p(M_{C/(E-X)}; q^m); a mismatch
    raises :class:`CrossCheckError`.
    """
    X = frozenset(X)
    if not X <= set(range(C.n)):
        raise ValueError("X must be a subset of the coordinates")
    mask = sum(1 << i for i in X)
    brute = int(tuple_union_counts(C, m)[mask])
    poly = shortened_polynomial(C, X)(C.q**m)
    if brute != poly:
        raise CrossCheckError(f"X={sorted(X)}, m={m}: counted {brute}, polynomial gives {poly}")
    return brute


def critical_theorem_all(C: LinearCode, m: int) -> int:
    """Run the check of :func:`critical_theorem_count` for every X; returns the number of X checked."""
    counts = tuple_union_counts(C, m)
    for mask in range(1 << C.n):
        X = [i for i in range(C.n) if mask >> i & 1]
        poly = shortened_polynomial(C, X)(C.q**m)
        if int(counts[mask]) != poly:
            raise CrossCheckError(f"X={X}, m={m}: counted {int(counts[mask])}, polynomial gives {poly}")
    return 1 << C.n


def flats(Mv: MatroidView) -> Iterator[frozenset[int]]:
    """All flats, each once, in order of rank then sorted elements."""
    if Mv.n > 16:
        raise CapExceeded("flat enumeration is limited to n <= 16")
    start = Mv.closure(())
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for F in frontier:
            for e in Mv.ground:
                if e not in F:
                    G = Mv.closure(F | {e})
                    if G not in seen:
                        seen.add(G)
                        nxt.append(G)
        frontier = nxt
    yield from sorted(seen, key=lambda F: (Mv.rank_of(F), len(F), sorted(F)))


def is_simple(Mv: MatroidView) -> bool:
    if Mv.has_loop():
        return False
    pts = {tuple(v) for v in normalize_vectors(Mv.field, Mv.columns).tolist()}
    return len(pts) == Mv.n


@dataclass(frozen=True)
class TangentialVerdict:
    simple: bool
    vanishes: bool  # p(M; q^r) == 0
    contractions_positive: bool
    failing_flat: frozenset[int] | None = None

    @property
    def holds(self) -> bool:
        return self.simple and self.vanishes and self.contractions_positive


def tangential_block_check(Mv: MatroidView, r: int) -> TangentialVerdict:
    """Matroid conditions: simple, p(M; q^r) = 0, p(M/F; q^r) > 0 for proper nonempty flats F."""
    qr = Mv.field.q**r
    simple = is_simple(Mv)
    vanishes = characteristic_polynomial(Mv)(qr) == 0
    E = frozenset(Mv.ground)
    for F in flats(Mv):
        if F and F != E and contraction_polynomial(Mv, F)(qr) <= 0:
            return TangentialVerdict(simple, vanishes, False, F)
    return TangentialVerdict(simple, vanishes, True)


def charpoly_deletion_contraction(Mv: MatroidView) -> CharPoly:
    """p(M) by deletion-contraction on the rank function (slow; for cross-checks).

    p(M) = p(M\\e) - p(M/e) for e neither loop nor coloop; p = 0 with a loop;
    a coloop contributes a factor (lambda - 1).
    """

    def rec(cols: list[list[int]], base: list[tuple[int, list[int]]]) -> list[int]:
        reduce = _reducer(Mv.field)
        if not cols:
            return [1]
        v, piv = reduce(cols[0], base)
        if piv < 0:
            return [0]
        rest = cols[1:]
        full_with = len(_extend(reduce, base, cols))
        full_without = len(_extend(reduce, base, rest))
        contracted = rec(rest, base + [(piv, v)])
        if full_with > full_without:  # coloop
            return _polymul(contracted, [-1, 1])
        deleted = rec(rest, base)
        return _polysub(deleted, contracted)

    coeffs = rec([c.tolist() for c in Mv.columns], [])
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return CharPoly(tuple(coeffs))


def _polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _polysub(a, b):
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return [x - y for x, y in zip(a, b)]
