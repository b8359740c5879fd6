"""Named code families and the blocking-set construction in PG(k-1, q).

Dimension convention for blocks: an r-block is a point set met by every
*vector* subspace of GF(q)^k of dimension k - r.  With r = k - m this is
every m-dimensional subspace, i.e. the null space of every rank-(k - m)
matrix.  Under this convention a minimal r-block is exactly the column set
of a code with covering dimension r + 1.

Coordinates, T and supports are 0-based.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Sequence

import numpy as np

from .algebra import (
    FieldSpec,
    MatrixGF,
    encode_vectors,
    field_from_order,
    normalize_vectors,
    projective_points,
    rank,
)
from .code import CodeError, LinearCode, code_from_generator, subspace_point_blocks


@dataclass(frozen=True, eq=False)
class PointSet:
    """Distinct normalized points of PG(k-1, q), sorted by encoding."""

    field: FieldSpec
    k: int
    points: np.ndarray  # N x k

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.int64).reshape(-1, self.k)
        if (pts == 0).all(axis=1).any():
            raise ValueError("the zero vector is not a projective point")
        pts = normalize_vectors(self.field, pts) if pts.size else pts
        codes = encode_vectors(pts, self.field.q) if pts.size else np.zeros(0, dtype=np.int64)
        order = np.argsort(codes, kind="stable")
        codes = codes[order]
        if np.any(codes[1:] == codes[:-1]):
            raise ValueError("point set contains proportional vectors")
        pts = pts[order]
        pts.setflags(write=False)
        codes.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "codes", codes)

    def __len__(self):
        return self.points.shape[0]

    def __eq__(self, other):
        return (
            isinstance(other, PointSet)
            and other.field is self.field
            and other.k == self.k
            and np.array_equal(other.codes, self.codes)
        )

    def __hash__(self):
        return hash((self.field.q, self.k, self.codes.tobytes()))

    def __contains__(self, v) -> bool:
        v = normalize_vectors(self.field, np.asarray(v).reshape(1, self.k))
        return bool(np.isin(encode_vectors(v, self.field.q), self.codes)[0])

    def tolist(self) -> list[list[int]]:
        return self.points.tolist()


@dataclass(frozen=True)
class BlockSpec:
    """Parameters of the construction: T is an m-subset of range(k), V has m - 1 points off T."""

    q: int
    k: int
    m: int
    T: tuple[int, ...] = dc_field(default=None)
    V: tuple[tuple[int, ...], ...] = dc_field(default=None)

    def __post_init__(self):
        if not 1 <= self.m <= self.k:
            raise ValueError("need 1 <= m <= k")
        f = field_from_order(self.q)
        T = tuple(range(self.k - self.m, self.k)) if self.T is None else tuple(sorted(self.T))
        if len(set(T)) != self.m or not set(T) <= set(range(self.k)):
            raise ValueError(f"T must be an {self.m}-subset of range({self.k})")
        object.__setattr__(self, "T", T)
        off_T = [tuple(p) for p in projective_points(f, self.k).tolist() if not any(p[j] for j in T)]
        if self.V is None:
            if len(off_T) < self.m - 1:
                raise ValueError(
                    f"infeasible: only {len(off_T)} points avoid T, need {self.m - 1}"
                )
            V = tuple(off_T[: self.m - 1])
        else:
            V = tuple(tuple(normalize_vectors(f, [v])[0].tolist()) for v in self.V)
            if len(V) != self.m - 1 or len(set(V)) != len(V):
                raise ValueError(f"V must hold {self.m - 1} distinct points")
            if any(v[j] for v in V for j in T) or any(not any(v) for v in V):
                raise ValueError("points of V must be nonzero and vanish on T")
        object.__setattr__(self, "V", V)

    @property
    def field(self) -> FieldSpec:
        return field_from_order(self.q)

    @property
    def r(self) -> int:
        return self.k - self.m


def block_feasible(q: int, k: int, m: int) -> bool:
    """Enough points avoid T for V, and the block order r = k - m is at least 1."""
    return 1 <= m < k and (q ** (k - m) - 1) // (q - 1) >= m - 1


def block_parts(spec: BlockSpec) -> dict[str, PointSet]:
    """The three pieces X, Y, Z of the construction (their union is :func:`block_points`)."""
    f, k, T = spec.field, spec.k, set(spec.T)
    pts = projective_points(f, k)
    excluded = set()
    for v in spec.V:
        for j in T:
            for lam in range(1, f.q):
                w = np.array(v)
                w[j] = lam
                excluded.add(int(encode_vectors(normalize_vectors(f, [w]), f.q)[0]))
    X, Y, Z = [], [], []
    for p, code in zip(pts, encode_vectors(pts, f.q)):
        supp = {i for i in range(k) if p[i]}
        hit = supp & T
        if not hit:
            X.append(p)
        elif len(hit) == 1:
            if int(code) not in excluded:
                Y.append(p)
        elif len(supp) == 2 and supp <= T:
            Z.append(p)
    return {name: PointSet(f, k, np.array(part).reshape(-1, k)) for name, part in zip("XYZ", (X, Y, Z))}


def block_points(spec: BlockSpec) -> PointSet:
    parts = block_parts(spec)
    allpts = np.vstack([parts[n].points for n in "XYZ"])
    return PointSet(spec.field, spec.k, allpts)


def points_through(P: PointSet, j: int) -> np.ndarray:
    """Points of P whose coordinate j is nonzero."""
    return P.points[P.points[:, j] != 0]


@dataclass(frozen=True)
class BlockVerdict:
    holds: bool
    counterexample: MatrixGF | None = None  # basis of a subspace missing every point


@dataclass(frozen=True)
class MinimalVerdict:
    is_block: bool
    minimal: bool
    tangents: dict[tuple[int, ...], MatrixGF]
    untouched: tuple[tuple[int, ...], ...] = ()  # points with no tangent

    @property
    def holds(self) -> bool:
        return self.is_block and self.minimal


def _check_r(P: PointSet, r: int) -> int:
    if not 1 <= r <= P.k - 1:
        raise ValueError(f"block order r must satisfy 1 <= r <= k-1 = {P.k - 1}")
    return P.k - r


def _membership(P: PointSet) -> np.ndarray:
    table = np.zeros(P.field.q**P.k, dtype=np.int64)
    table[P.codes] = 1
    return table


def is_r_block(P: PointSet, r: int) -> BlockVerdict:
    """Every (k - r)-dim subspace of GF(q)^k contains a point of P."""
    d = _check_r(P, r)
    member = _membership(P)
    for bases, codes in subspace_point_blocks(P.field, P.k, d):
        empty = np.flatnonzero(member[codes].sum(axis=1) == 0)
        if empty.size:
            return BlockVerdict(False, MatrixGF(P.field, bases[empty[0]]))
    return BlockVerdict(True)


def is_minimal_block(P: PointSet, r: int) -> MinimalVerdict:
    """Block check plus a tangent subspace (meeting P only in x) for every point x."""
    d = _check_r(P, r)
    member = _membership(P)
    is_block = True
    tangents: dict[int, MatrixGF] = {}
    for bases, codes in subspace_point_blocks(P.field, P.k, d):
        hits = member[codes]
        count = hits.sum(axis=1)
        if (count == 0).any():
            is_block = False
            break
        for i in np.flatnonzero(count == 1):
            x = int(codes[i][hits[i] == 1][0])
            if x not in tangents:
                tangents[x] = MatrixGF(P.field, bases[i])
        if len(tangents) == len(P):
            break
    key = {int(c): tuple(p) for c, p in zip(P.codes, P.points.tolist())}
    named = {key[c]: U for c, U in sorted(tangents.items())}
    missing = tuple(key[int(c)] for c in P.codes if int(c) not in tangents)
    return MinimalVerdict(is_block, is_block and not missing, named, missing)


def code_from_points(P: PointSet) -> LinearCode:
    G = P.points.T
    if rank(MatrixGF(P.field, G)) != P.k:
        raise CodeError("points do not span GF(q)^k")
    return code_from_generator(P.field, G)


# -- families ---------------------------------------------------------------

def dual_hamming(q: int, k: int) -> LinearCode:
    """Simplex code: one column per point of PG(k-1, q), in canonical order."""
    f = field_from_order(q)
    return code_from_generator(f, projective_points(f, k).T)


def reed_solomon(q: int, n: int, k: int, check: bool = True) -> LinearCode:
    """Evaluation code of polynomials of degree < k at the first n field elements.

    ``n = q + 1`` appends the column e_k (the point at infinity).  With
    ``check`` the minimum distance n - k + 1 is verified by enumeration.
    """
    f = field_from_order(q)
    if not 1 <= k <= n <= q + 1:
        raise ValueError("need 1 <= k <= n <= q + 1")
    pts = list(range(min(n, q)))
    G = np.array([[f.pow(x, i) if x else int(i == 0) for x in pts] for i in range(k)], dtype=np.int64)
    if n == q + 1:
        inf = np.zeros((k, 1), dtype=np.int64)
        inf[k - 1, 0] = 1
        G = np.hstack([G, inf])
    C = code_from_generator(f, G)
    if check and C.min_weight != n - k + 1:
        raise CodeError(f"RS[{n},{k}] over GF({q}) is not MDS")  # would indicate a bug
    return C


def binary_parity_dual(n: int) -> LinearCode:
    """Binary [n, n-1] code with generator [I | all-ones column]."""
    if n < 2:
        raise ValueError("need n >= 2")
    G = np.hstack([np.eye(n - 1, dtype=np.int64), np.ones((n - 1, 1), dtype=np.int64)])
    return code_from_generator(field_from_order(2), G)


def lemma_pair_closure(P: PointSet, j: int) -> bool:
    """For distinct x, y in P through coordinate j, some nonzero a x + b y (killing j) lies in P."""
    f = P.field
    through = points_through(P, j)
    for x, y in combinations(through.tolist(), 2):
        z = f.vsub(f.vmul(np.array(x), f.inv(x[j])), f.vmul(np.array(y), f.inv(y[j])))
        if not z.any() or z not in P:
            return False
    return True


def feasible_blocks(qs: Sequence[int], k_max: int, m_max: int):
    """All (q, k, m) with a default-feasible construction in the given ranges."""
    for q in qs:
        for k in range(2, k_max + 1):
            for m in range(1, min(m_max, k - 1) + 1):
                if block_feasible(q, k, m):
                    yield q, k, m
