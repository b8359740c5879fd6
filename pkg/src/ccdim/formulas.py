"""Closed-form counting formulas for codes, all in exact integer arithmetic."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb


def gaussian_binomial(k: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of GF(q)^k (0 when r > k or r < 0)."""
    if r < 0 or r > k:
        return 0
    num = den = 1
    for i in range(r):
        num *= q ** (k - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def mds_weight_distribution(n: int, k: int, q: int) -> dict[int, int]:
    """Weight distribution ``{w: A_w}`` of any [n, k] MDS code over GF(q).

    Keys run over ``d..n`` with ``d = n - k + 1``; the zero word is not
    included, so ``1 + sum(values) == q**k``.
    """
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    d = n - k + 1
    out = {}
    for w in range(d, n + 1):
        s = sum((-1) ** j * comb(w - 1, j) * q ** (w - d - j) for j in range(w - d + 1))
        out[w] = comb(n, w) * (q - 1) * s
    return out


def mds_chain_identity(n: int, k: int, q: int) -> bool:
    """Check ``A_n/(q-1) == A_{n-1}/n + (-1)^(k-1) C(n-2, k-1)`` for MDS weights (n >= 2)."""
    if n < 2:
        raise ValueError("need n >= 2")
    A = mds_weight_distribution(n, k, q)
    a_n = Fraction(A[n], q - 1)
    a_n1 = Fraction(A.get(n - 1, 0), n)
    return a_n == a_n1 + (-1) ** (k - 1) * comb(n - 2, k - 1)


def dual_hamming_swd(q: int, k: int, r: int) -> tuple[int, int]:
    """The single nonzero entry ``(i, A_i^(r))`` of the simplex code's r-th distribution."""
    if not 1 <= r <= k:
        raise ValueError("need 1 <= r <= k")
    return (q**k - q ** (k - r)) // (q - 1), gaussian_binomial(k, r, q)


def klove_An(n: int, k: int, q: int, r: int) -> int:
    """Full-support r-dimensional subcodes of an [n, k] code.

    Valid only when ``r > k + 1 - d(C^perp)``; callers attached to an
    actual code are responsible for checking that window.
    """
    return sum(
        (-1) ** j * gaussian_binomial(k - j, k - r - j, q) * comb(n, j)
        for j in range(k - r + 1)
    )


@dataclass(frozen=True)
class SquareForm:
    """``A = square + constant`` with ``square = (n - centre)^2 / 2``."""

    centre: Fraction
    square: Fraction
    constant: Fraction

    @property
    def total(self) -> Fraction:
        return self.square + self.constant


def d4_positivity(n: int, k: int, q: int) -> tuple[int, SquareForm]:
    """``A_n^(k-2)`` for a code with dual distance 4, plus its completed square.

    Raises ``AssertionError`` if the expansions disagree or the value is not
    positive.
    """
    if k < 3:
        raise ValueError("dual distance 4 forces k >= 3")
    value = klove_An(n, k, q, k - 2)
    g1 = gaussian_binomial(k - 1, 1, q)
    expanded = gaussian_binomial(k, 2, q) - g1 * n + Fraction(n * (n - 1), 2)
    centre = g1 + Fraction(1, 2)
    square = (n - centre) ** 2 / 2
    middle = -(centre**2) / 2 + q**2 * gaussian_binomial(k - 1, 2, q) + g1
    constant = Fraction(
        4 * (q ** (k - 1) - q) * (q ** (k - 1) - 1) - (q**2 - 1), 8 * (q**2 - 1)
    )
    form = SquareForm(centre, square, constant)
    assert expanded == value, (expanded, value)
    assert square + middle == value, (square + middle, value)
    assert form.total == value, (form.total, value)
    assert constant > 0 and value > 0
    return value, form


def gaussian_pascal(k: int, r: int, q: int) -> bool:
    """Both q-Pascal recurrences for ``[k choose r]_q`` (k >= 1)."""
    g = gaussian_binomial
    first = g(k, r, q) == g(k - 1, r, q) + q ** (k - r) * g(k - 1, r - 1, q)
    second = g(k, r, q) == q**r * g(k - 1, r, q) + g(k - 1, r - 1, q)
    return first and second


def recursion_identity(n: int, k: int, q: int, delta: int) -> bool:
    """Split of ``A_n^(k-delta+2)`` for [n,k] into two [n,k-1] terms.

    Pure identity in the Kløve expressions; requires ``3 <= delta <= k``.
    """
    if delta < 3 or k < delta:
        raise ValueError("need 3 <= delta <= k")
    left = klove_An(n, k, q, k - delta + 2)
    right = klove_An(n, k - 1, q, k - delta + 1) + q ** (k - delta + 2) * klove_An(
        n, k - 1, q, k - delta + 2
    )
    return left == right
