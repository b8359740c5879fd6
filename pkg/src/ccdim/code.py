"""Linear codes, their subcodes, and the covering dimension.

Coordinates are 0-based throughout: a code of length n lives on
``range(n)``.  Supports are handled as Python/numpy integer bitmasks with
bit ``i`` standing for coordinate ``i``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from .algebra import (
    FieldSpec,
    MatrixGF,
    decode_vectors,
    encode_vectors,
    kernel_basis,
    normalize_vectors,
    projective_points,
    rank,
    rref,
    row_space,
)
from .caps import CapExceeded, get_caps
from .formulas import gaussian_binomial

INFINITY = math.inf

# rows of message-space vectors handled per numpy batch
_CHUNK = 1 << 16


class CodeError(ValueError):
    """Invalid code construction or an operation undefined for the code."""


def _as_array(field: FieldSpec, G) -> np.ndarray:
    if isinstance(G, MatrixGF):
        return G.entries
    return MatrixGF(field, G).entries


@dataclass(frozen=True, eq=False)
class LinearCode:
    """An [n, k] code given by a full-rank k x n generator matrix.

    Equality compares the codes as sets (canonical RREF of ``G``), not the
    particular generator matrices.
    """

    field: FieldSpec
    G: MatrixGF

    @property
    def n(self) -> int:
        return self.G.cols

    @property
    def k(self) -> int:
        return self.G.rows

    @property
    def q(self) -> int:
        return self.field.q

    @cached_property
    def canonical(self) -> MatrixGF:
        return rref(self.G)[0]

    def __eq__(self, other):
        return (
            isinstance(other, LinearCode)
            and other.field is self.field
            and other.canonical == self.canonical
        )

    def __hash__(self):
        return hash(self.canonical)

    def __repr__(self):
        return f"LinearCode([{self.n},{self.k}] over {self.field!r})"

    @property
    def columns(self) -> np.ndarray:
        """Columns of ``G`` as rows of an n x k array."""
        return self.G.entries.T

    @cached_property
    def has_zero_column(self) -> bool:
        return bool((self.G.entries == 0).all(axis=0).any())

    def codeword_chunks(self) -> Iterator[np.ndarray]:
        """All q^k codewords in message order, in batches."""
        q, k = self.q, self.k
        total = q**k
        cap = get_caps().codewords
        if total > cap:
            raise CapExceeded(f"{q}^{k} codewords exceed cap {cap}")
        G = self.G.entries
        for start in range(0, total, _CHUNK):
            msgs = decode_vectors(np.arange(start, min(total, start + _CHUNK)), q, k)
            yield self.field.matmul(msgs, G)

    @cached_property
    def support_words(self) -> np.ndarray:
        """Support of every codeword as ``ceil(n/64)`` uint64 words, indexed by message code."""
        return np.concatenate([_pack(cw != 0) for cw in self.codeword_chunks()])

    @cached_property
    def support_masks(self) -> np.ndarray:
        """Support bitmask of every codeword as one int64 (requires n <= 62)."""
        if self.n > 62:
            raise CapExceeded("single-word support masks need n <= 62")
        return self.support_words[:, 0].astype(np.int64)

    @cached_property
    def full_words(self) -> np.ndarray:
        bits = np.ones(self.n, dtype=bool)
        return _pack(bits[None, :])[0]

    def weight_distribution(self) -> list[int]:
        """``A_w`` for w = 0..n (A_0 = 1)."""
        w = np.bitwise_count(self.support_words).sum(axis=1)
        return np.bincount(w, minlength=self.n + 1).tolist()

    @cached_property
    def min_weight(self) -> int:
        return min_weight(self)

    @cached_property
    def dual_code(self) -> "LinearCode":
        return dual(self)

    @cached_property
    def dual_distance(self) -> int:
        """d(C^perp); raises CodeError when k = n."""
        return dual_distance(self)


def _pack(bits: np.ndarray) -> np.ndarray:
    """Pack boolean rows into uint64 words, bit i of the row at word i // 64."""
    words = (bits.shape[1] + 63) // 64
    out = np.zeros((bits.shape[0], words), dtype=np.uint64)
    for w in range(words):
        part = bits[:, 64 * w : 64 * (w + 1)].astype(np.uint64)
        weights = np.uint64(1) << np.arange(part.shape[1], dtype=np.uint64)
        out[:, w] = (part * weights).sum(axis=1, dtype=np.uint64)
    return out


def code_from_generator(field: FieldSpec, G, strict: bool = True) -> LinearCode:
    """Build a code from a generator matrix.

    With ``strict`` a rank-deficient matrix is rejected; otherwise it is
    replaced by a basis of its row space.
    """
    a = _as_array(field, G)
    if a.size == 0:
        raise CodeError("empty generator matrix")
    M = MatrixGF(field, a)
    basis = row_space(M)
    if basis.rows == 0:
        raise CodeError("generator matrix spans the zero code")
    if basis.rows < M.rows:
        if strict:
            raise CodeError(f"generator rows are dependent (rank {basis.rows} < {M.rows})")
        M = basis
    return LinearCode(field, M)


def support(v) -> frozenset[int]:
    return frozenset(int(i) for i in np.nonzero(np.asarray(v))[0])


def weight(vs) -> int:
    """Weight of a vector, or of a set of vectors given as rows."""
    vs = np.atleast_2d(np.asarray(vs))
    return int((vs != 0).any(axis=0).sum())


def dual(C: LinearCode) -> LinearCode:
    if C.k == C.n:
        raise CodeError("dual of an [n, n] code is the zero code")
    return LinearCode(C.field, kernel_basis(C.G))


def min_weight(C: LinearCode) -> int:
    best = C.n + 1
    for cw in C.codeword_chunks():
        w = (cw != 0).sum(axis=1)
        w = w[w > 0]
        if w.size:
            best = min(best, int(w.min()))
    return best


def _smallest_dependent_columns(C: LinearCode) -> int:
    cols = C.columns
    if C.has_zero_column:
        return 1
    normed = encode_vectors(normalize_vectors(C.field, cols), C.q)
    if np.unique(normed).size < C.n:
        return 2
    for t in range(3, C.k + 2):
        for S in combinations(range(C.n), t):
            if rref(MatrixGF(C.field, cols[list(S)]))[1] < t:
                return t
    raise AssertionError("any k + 1 columns are dependent")


def dual_distance(C: LinearCode) -> int:
    """Minimum weight of the dual code, i.e. the size of a smallest dependent column set.

    Enumerates the dual when it is small, otherwise searches column subsets
    by increasing size.
    """
    if C.k == C.n:
        raise CodeError("dual of an [n, n] code is the zero code")
    if C.q ** (C.n - C.k) <= 1 << 16:
        return min_weight(C.dual_code)
    return _smallest_dependent_columns(C)


def _shortened_generator(C: LinearCode, X: Iterable[int]) -> np.ndarray:
    """Generator rows (possibly none) of the code shortened on X."""
    X = sorted(set(X))
    f = C.field
    keep = [i for i in range(C.n) if i not in X]
    G = C.G.entries
    K = kernel_basis(MatrixGF(f, G[:, X].T)).entries
    if K.shape[0] == 0:
        return np.zeros((0, len(keep)), dtype=np.int64)
    return f.matmul(K, G)[:, keep]


def shorten(C: LinearCode, X: Iterable[int]) -> LinearCode:
    """Codewords vanishing on X, with the coordinates X deleted."""
    X = set(X)
    if not X <= set(range(C.n)):
        raise CodeError("shortening set is not a subset of the coordinates")
    G = _shortened_generator(C, X)
    if G.shape[0] == 0 or G.shape[1] == 0:
        raise CodeError("shortening leaves the zero code")
    return LinearCode(C.field, MatrixGF(C.field, G))


def puncture(C: LinearCode, X: Iterable[int]) -> LinearCode:
    """Delete the coordinates X from every codeword."""
    X = set(X)
    if not X <= set(range(C.n)):
        raise CodeError("puncturing set is not a subset of the coordinates")
    keep = [i for i in range(C.n) if i not in X]
    if not keep:
        raise CodeError("cannot puncture every coordinate")
    return code_from_generator(C.field, C.G.entries[:, keep], strict=False)


# -- subspaces of GF(q)^k in canonical RREF order ---------------------------

def _pivot_pattern(q: int, k: int, pivots: tuple[int, ...]):
    r = len(pivots)
    base = np.array([q ** (k - 1 - p) for p in pivots], dtype=np.int64)
    free = [(i, c) for i, p in enumerate(pivots) for c in range(p + 1, k) if c not in pivots]
    W = np.zeros((len(free), r), dtype=np.int64)
    for e, (i, c) in enumerate(free):
        W[e, i] = q ** (k - 1 - c)
    return base, W


def _check_subspace_cap(q: int, k: int, r: int) -> int:
    total = gaussian_binomial(k, r, q)
    cap = get_caps().subspaces
    if total > cap:
        raise CapExceeded(f"[{k} choose {r}]_{q} = {total} subspaces exceed cap {cap}")
    return total


def subspace_blocks(q: int, k: int, r: int, chunk: int = _CHUNK) -> Iterator[np.ndarray]:
    """Every r-dimensional subspace of GF(q)^k exactly once, in batches.

    Each batch is a ``(B, r)`` array; row ``j`` holds the encoded rows of
    one subspace's RREF basis.  Order: pivot sets lexicographically, then
    free entries (row-major) in lexicographic order.
    """
    if not 0 <= r <= k:
        raise ValueError("need 0 <= r <= k")
    _check_subspace_cap(q, k, r)
    if r == 0:
        yield np.zeros((1, 0), dtype=np.int64)
        return
    for pivots in combinations(range(k), r):
        base, W = _pivot_pattern(q, k, pivots)
        f = W.shape[0]
        count = q**f
        for start in range(0, count, chunk):
            A = decode_vectors(np.arange(start, min(count, start + chunk)), q, f) if f else np.zeros((1, 0), dtype=np.int64)
            yield base[None, :] + A @ W


@lru_cache(maxsize=64)
def _cached_subspaces(q: int, k: int, r: int) -> np.ndarray:
    arr = np.concatenate(list(subspace_blocks(q, k, r)))
    arr.setflags(write=False)
    return arr


def _subspace_stream(q: int, k: int, r: int) -> Iterator[np.ndarray]:
    # small families are reused across the many codes of a search
    if _check_subspace_cap(q, k, r) <= 1 << 18:
        yield _cached_subspaces(q, k, r)
    else:
        yield from subspace_blocks(q, k, r)


def enumerate_subspaces(field: FieldSpec, k: int, r: int) -> Iterator[MatrixGF]:
    """Each r-dim subspace of GF(q)^k as its r x k RREF basis."""
    for block in subspace_blocks(field.q, k, r):
        for rows in decode_vectors(block, field.q, k):
            yield MatrixGF(field, rows.reshape(r, k))


def enumerate_subcodes(C: LinearCode, r: int) -> Iterator[MatrixGF]:
    """Every r-dim subspace of the message space (as RREF r x k); map through G for subcodes."""
    if not 1 <= r <= C.k:
        raise ValueError("need 1 <= r <= k")
    return enumerate_subspaces(C.field, C.k, r)


@dataclass(frozen=True)
class SupportWeightTable:
    """``counts[i]`` = number of r-dim subcodes with support weight i."""

    r: int
    counts: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.counts[i]

    def total(self) -> int:
        return sum(self.counts)

    def nonzero(self) -> dict[int, int]:
        return {i: c for i, c in enumerate(self.counts) if c}


def support_weight_distribution(C: LinearCode, r: int) -> SupportWeightTable:
    if not 1 <= r <= C.k:
        raise ValueError("need 1 <= r <= k")
    words = C.support_words
    counts = np.zeros(C.n + 1, dtype=np.int64)
    for block in _subspace_stream(C.q, C.k, r):
        union = np.bitwise_or.reduce(words[block], axis=1)
        counts += np.bincount(np.bitwise_count(union).sum(axis=1), minlength=C.n + 1)
    return SupportWeightTable(r, tuple(int(c) for c in counts))


# -- covering dimension ----------------------------------------------------

@dataclass(frozen=True)
class GammaResult:
    """Covering dimension with a witness.

    For the subcode method the witness is an r x n basis of a full-support
    subcode; for the avoidance method it is a basis of a subspace of
    GF(q)^k containing no column of G.
    """

    value: int | float
    witness: MatrixGF | None = None

    @property
    def is_infinite(self) -> bool:
        return self.value == INFINITY

    def __str__(self):
        return "inf" if self.is_infinite else str(self.value)


def covering_dimension_subcode(C: LinearCode) -> GammaResult:
    """Smallest r with a full-support r-dimensional subcode (first hit in RREF order)."""
    if C.has_zero_column:
        return GammaResult(INFINITY)
    words = C.support_words
    full = C.full_words
    for r in range(1, C.k + 1):
        for block in _subspace_stream(C.q, C.k, r):
            union = np.bitwise_or.reduce(words[block], axis=1)
            hit = np.flatnonzero((union == full).all(axis=1))
            if hit.size:
                msgs = decode_vectors(block[hit[0]], C.q, C.k).reshape(r, C.k)
                basis = C.field.matmul(msgs, C.G.entries)
                return GammaResult(r, MatrixGF(C.field, basis))
    raise AssertionError("the whole code has full support when G has no zero column")


def subspace_point_blocks(f: FieldSpec, k: int, d: int) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """For every d-dim subspace U of GF(q)^k (d >= 1), the encodings of its projective points.

    Yields ``(bases, codes)`` with ``bases`` of shape (B, d, k) holding RREF
    bases and ``codes`` of shape (B, (q^d-1)/(q-1)) holding normalized point
    encodings.  RREF rows combined with normalized coefficient vectors are
    already normalized, so no rescaling is needed.
    """
    q = f.q
    coeffs = projective_points(f, d)
    per_chunk = max(1, (1 << 20) // (coeffs.shape[0] * k))
    for block in subspace_blocks(q, k, d, chunk=per_chunk):
        bases = decode_vectors(block, q, k)
        pts = np.zeros((bases.shape[0], coeffs.shape[0], k), dtype=np.int64)
        for i in range(d):
            pts = f.vadd(pts, f.vmul(coeffs[None, :, i, None], bases[:, None, i, :]))
        yield bases, encode_vectors(pts, q)


def covering_dimension_avoidance(C: LinearCode) -> GammaResult:
    """Smallest m such that some (k-m)-dim subspace of GF(q)^k misses every column of G."""
    if C.has_zero_column:
        return GammaResult(INFINITY)
    f, q, k = C.field, C.q, C.k
    cols = encode_vectors(normalize_vectors(f, C.columns), q)
    present = np.zeros(q**k, dtype=bool)
    present[cols] = True
    for m in range(1, k):
        for bases, codes in subspace_point_blocks(f, k, k - m):
            free = np.flatnonzero(~present[codes].any(axis=1))
            if free.size:
                return GammaResult(m, MatrixGF(f, bases[free[0]]))
    # only the zero subspace is left, and it contains no nonzero column
    return GammaResult(k, MatrixGF(f, np.zeros((0, k), dtype=np.int64)))


def covering_dimension(C: LinearCode) -> GammaResult:
    return covering_dimension_subcode(C)


def random_code(field: FieldSpec, n: int, k: int, rng: np.random.Generator) -> LinearCode:
    """Uniform full-rank k x n generator (rejection sampling)."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    while True:
        G = MatrixGF(field, rng.integers(0, field.q, size=(k, n)))
        if rank(G) == k:
            return LinearCode(field, G)
