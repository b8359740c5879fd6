"""Finite fields GF(p^m) and exact linear algebra over them.

Elements are plain integers in ``[0, q)``: the value ``sum(c_i * p**i)``
stands for the polynomial ``sum(c_i * alpha**i)`` reduced modulo the
field's defining polynomial.  Vectors are encoded big-endian base ``q``
(:func:`encode_vectors`) so that numeric order equals lexicographic order.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .caps import CapExceeded, get_caps


class FieldError(ValueError):
    """Invalid field parameters or an arithmetic error such as 1/0."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# -- polynomials over GF(p), little-endian coefficient lists ---------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a / b over GF(p); b must be monic."""
    a = _poly_trim(list(a))
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1]
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _poly_trim(a)
    return a


def _monic_polys(p: int, deg: int):
    """All monic polynomials of the given degree, by increasing encoding."""
    for code in range(p**deg):
        coeffs = [(code // p**i) % p for i in range(deg)]
        yield coeffs + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(list(poly), f, p):
                return False
    return True


def minimal_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Monic irreducible of degree m whose low coefficients encode smallest."""
    for f in _monic_polys(p, m):
        if is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")  # unreachable


# -- the field -------------------------------------------------------------

_TABLE_LIMIT = 256


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The finite field GF(p^m) with integer-encoded elements.

    Construct through :func:`field_make`, which caches one instance per
    ``(p, m)``; all lookup tables are built once here and never mutated.
    """

    p: int
    m: int
    irr: tuple[int, ...]
    q: int = dc_field(init=False)

    def __post_init__(self):
        q = self.p**self.m
        object.__setattr__(self, "q", q)
        exp, log = self._build_log_tables()
        object.__setattr__(self, "exp", exp)
        object.__setattr__(self, "log", log)
        np_exp = np.array(exp + exp, dtype=np.int64)
        np_log = np.array(log, dtype=np.int64)
        object.__setattr__(self, "_np_exp", np_exp)
        object.__setattr__(self, "_np_log", np_log)
        if q <= _TABLE_LIMIT:
            elems = np.arange(q)
            add = self._vadd_slow(elems[:, None], elems[None, :])
            mul = self._vmul_log(elems[:, None], elems[None, :])
            object.__setattr__(self, "add_table", add)
            object.__setattr__(self, "mul_table", mul)
            object.__setattr__(self, "_add_rows", add.tolist())
            object.__setattr__(self, "_mul_rows", mul.tolist())
        else:
            object.__setattr__(self, "add_table", None)
            object.__setattr__(self, "mul_table", None)
        neg = [self._neg_slow(a) for a in range(q)]
        object.__setattr__(self, "_neg", neg)
        object.__setattr__(self, "neg_table", np.array(neg, dtype=np.int64))
        inv = [0] + [exp[(q - 1 - log[a]) % (q - 1)] for a in range(1, q)]
        object.__setattr__(self, "_inv", inv)
        object.__setattr__(self, "inv_table", np.array(inv, dtype=np.int64))

    def __repr__(self):
        return f"GF({self.q})" if self.m == 1 else f"GF({self.p}^{self.m})"

    def __reduce__(self):
        return (field_make, (self.p, self.m))

    # table construction --------------------------------------------------

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.m)]

    def _undigits(self, d: Iterable[int]) -> int:
        return sum(c * self.p**i for i, c in enumerate(d))

    def _mul_poly(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        rem = _poly_mod(prod, list(self.irr), self.p)
        return self._undigits(rem)

    def _build_log_tables(self):
        q = self.q
        if q == 2:
            return [1], [0, 0]
        for g in range(2, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._mul_poly(x, g)
            if len(exp) == q - 1:
                log = [0] * q
                for i, v in enumerate(exp):
                    log[v] = i
                return exp, log
        raise FieldError(f"no primitive element found for {self!r}")  # unreachable

    def _neg_slow(self, a: int) -> int:
        return self._undigits((-c) % self.p for c in self._digits(a))

    def _vadd_slow(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for i in range(self.m):
            w = self.p**i
            out += (((a // w) % self.p + (b // w) % self.p) % self.p) * w
        return out

    def _vmul_log(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a * b) % self.p
        prod = self._np_exp[self._np_log[a] + self._np_log[b]]
        return np.where((a == 0) | (b == 0), 0, prod)

    # scalar arithmetic ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self.q <= _TABLE_LIMIT:
            return self._add_rows[a][b]
        return int(self._vadd_slow(a, b))

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("inverse of zero")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise FieldError("inverse of zero")
            return 1 if e == 0 else 0
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    # vectorised arithmetic over numpy arrays -----------------------------

    def vadd(self, a, b):
        if self.add_table is not None and self.m > 1 and self.p != 2:
            return self.add_table[a, b]
        return self._vadd_slow(a, b)

    def vneg(self, a):
        return self.neg_table[a]

    def vsub(self, a, b):
        return self.vadd(a, self.neg_table[b])

    def vmul(self, a, b):
        if self.mul_table is not None and self.m > 1:
            return self.mul_table[a, b]
        return self._vmul_log(a, b)

    def matmul(self, a, b):
        """Matrix product over the field (2-D numpy integer arrays)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a @ b) % self.p
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for i in range(a.shape[1]):
            out = self.vadd(out, self.vmul(a[:, i : i + 1], b[i : i + 1, :]))
        return out

    def elements(self) -> list[int]:
        return list(range(self.q))


@lru_cache(maxsize=None)
def _field_cached(p: int, m: int) -> FieldSpec:
    irr = (0, 1) if m == 1 else minimal_irreducible(p, m)
    return FieldSpec(p, m, irr)


def field_make(p: int, m: int = 1, cap: int | None = None) -> FieldSpec:
    """Return the canonical GF(p^m).

    >>> field_make(3, 2).irr
    (1, 0, 1)
    """
    if not _is_prime(p):
        raise FieldError(f"{p} is not prime")
    if m < 1:
        raise FieldError("extension degree must be >= 1")
    cap = 4096 if cap is None else cap
    if p**m > cap:
        raise CapExceeded(f"field order {p}^{m} exceeds cap {cap}")
    return _field_cached(p, m)


def field_from_order(q: int) -> FieldSpec:
    """GF(q) for a prime power q."""
    for p in range(2, q + 1):
        if q % p == 0:
            break
    else:
        raise FieldError(f"{q} is not a prime power")
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1 or not _is_prime(p):
        raise FieldError(f"{q} is not a prime power")
    return field_make(p, m)


def enumerate_field(f: FieldSpec) -> list[int]:
    return f.elements()


@dataclass(frozen=True)
class FieldElem:
    """An element together with its field, for interactive use."""

    field: FieldSpec
    value: int

    def _wrap(self, v):
        return FieldElem(self.field, v)

    def _val(self, other):
        return other.value if isinstance(other, FieldElem) else other % self.field.q

    def __add__(self, other):
        return self._wrap(self.field.add(self.value, self._val(other)))

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.value, self._val(other)))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.value, self._val(other)))

    def __truediv__(self, other):
        return self._wrap(self.field.div(self.value, self._val(other)))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inverse(self):
        return self._wrap(self.field.inv(self.value))


_OPS = {
    "add": lambda f, a, b: f.add(a, b),
    "sub": lambda f, a, b: f.sub(a, b),
    "mul": lambda f, a, b: f.mul(a, b),
    "div": lambda f, a, b: f.div(a, b),
    "neg": lambda f, a, b: f.neg(a),
    "inv": lambda f, a, b: f.inv(a),
    "pow": lambda f, a, b: f.pow(a, b),
}


def field_arith(f: FieldSpec, a: int, b: int | None, op: str) -> int:
    """Dispatch one arithmetic operation by name; ``b`` is the exponent for pow."""
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown op {op!r}") from None
    for x in (a,) if b is None or op == "pow" else (a, b):
        if not 0 <= x < f.q:
            raise FieldError(f"{x} is not an element of {f!r}")
    return fn(f, a, b)


# -- matrices --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MatrixGF:
    """Dense matrix over a finite field; entries are a read-only int array."""

    field: FieldSpec
    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=np.int64, copy=True)
        if a.ndim == 1:
            a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
        if a.ndim != 2:
            raise ValueError("matrix entries must be 2-dimensional")
        if a.size and (a.min() < 0 or a.max() >= self.field.q):
            raise FieldError(f"matrix entries out of range for {self.field!r}")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __eq__(self, other):
        return (
            isinstance(other, MatrixGF)
            and other.field is self.field
            and other.entries.shape == self.entries.shape
            and bool(np.array_equal(other.entries, self.entries))
        )

    def __hash__(self):
        return hash((self.field.q, self.entries.shape, self.entries.tobytes()))

    def __matmul__(self, other: "MatrixGF") -> "MatrixGF":
        return MatrixGF(self.field, self.field.matmul(self.entries, other.entries))

    @property
    def T(self) -> "MatrixGF":
        return MatrixGF(self.field, self.entries.T)

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()

    def __repr__(self):
        return f"MatrixGF({self.field!r}, {self.tolist()})"


def _rref_array(f: FieldSpec, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    a = np.array(a, dtype=np.int64, copy=True)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r] = f.vmul(a[r], f.inv(piv))
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = f.vsub(a[i], f.vmul(a[r], int(a[i, c])))
        pivots.append(c)
        r += 1
    return a, pivots


def rref(M: MatrixGF) -> tuple[MatrixGF, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns.

    Zero rows stay at the bottom, so ``R`` has the shape of ``M``.
    """
    a, piv = _rref_array(M.field, M.entries)
    return MatrixGF(M.field, a), len(piv), piv


def rank(M: MatrixGF) -> int:
    return rref(M)[1]


def kernel_basis(M: MatrixGF) -> MatrixGF:
    """Basis (as rows) of the right null space ``{x : M x = 0}``."""
    f = M.field
    a, piv = _rref_array(f, M.entries)
    cols = M.cols
    free = [c for c in range(cols) if c not in piv]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for j, fc in enumerate(free):
        out[j, fc] = 1
        for i, pc in enumerate(piv):
            out[j, pc] = f.neg(int(a[i, fc]))
    return MatrixGF(f, out.reshape(len(free), cols))


def row_space(M: MatrixGF) -> MatrixGF:
    """Canonical basis of the row space: the nonzero rows of the RREF."""
    a, piv = _rref_array(M.field, M.entries)
    return MatrixGF(M.field, a[: len(piv)].reshape(len(piv), M.cols))


def same_row_space(a: MatrixGF, b: MatrixGF) -> bool:
    return row_space(a) == row_space(b)


def in_row_space(M: MatrixGF, v: Sequence[int]) -> bool:
    stacked = MatrixGF(M.field, np.vstack([M.entries.reshape(-1, len(v)), np.asarray(v)]))
    return rank(stacked) == rank(M)


# -- vector encodings ------------------------------------------------------

def encode_vectors(vs, q: int) -> np.ndarray:
    """Big-endian base-q integer code of each row of ``vs``."""
    vs = np.asarray(vs, dtype=np.int64)
    k = vs.shape[-1]
    w = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return vs @ w


def decode_vectors(codes, q: int, k: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    w = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return (codes[..., None] // w) % q


def normalize_vectors(f: FieldSpec, vs) -> np.ndarray:
    """Scale each nonzero row so its first nonzero entry is 1; zero rows stay zero."""
    vs = np.array(vs, dtype=np.int64, ndmin=2)
    nz = vs != 0
    first = np.argmax(nz, axis=1)
    lead = vs[np.arange(vs.shape[0]), first]
    scale = f.inv_table[lead]
    return f.vmul(vs, scale[:, None])


def projective_points(f: FieldSpec, k: int) -> np.ndarray:
    """All normalized points of PG(k-1, q), sorted by encoding."""
    npts = (f.q**k - 1) // (f.q - 1)
    cap = get_caps().codewords
    if f.q**k > cap:
        raise CapExceeded(f"{f.q}^{k} vectors exceed codeword cap {cap}")
    vs = decode_vectors(np.arange(1, f.q**k), f.q, k)
    first = vs[np.arange(vs.shape[0]), np.argmax(vs != 0, axis=1)]
    pts = vs[first == 1]
    assert pts.shape[0] == npts
    return pts
