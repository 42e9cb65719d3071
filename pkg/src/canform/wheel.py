"""Wheel graphs: minors of the Laplacian, the coefficients c_{m,k}, and the exact integral.

Throughout m = n - 1 where n is the (odd) number of spokes.  Zeta values
are kept symbolic in :class:`ZetaCombo`, so the reduction of the integral
to a single zeta value is an exact identity between rationals.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterator, List, Sequence, Tuple

from .algebra import MultiPoly
from .graphs import edge_var

Rim = Tuple[int, int]


class ZetaCombo:
    """Exact rational combination constant + sum_s c_s zeta(s)."""

    __slots__ = ("coeffs", "constant")

    def __init__(self, coeffs: Dict[int, Fraction] = None, constant: Fraction = Fraction(0)):
        self.coeffs = {s: Fraction(c) for s, c in (coeffs or {}).items() if c}
        self.constant = Fraction(constant)

    @classmethod
    def zeta(cls, s: int, c=1) -> "ZetaCombo":
        if s < 2:
            raise ValueError("zeta(s) diverges for s < 2")
        return cls({s: Fraction(c)})

    def __add__(self, other: "ZetaCombo") -> "ZetaCombo":
        out = dict(self.coeffs)
        for s, c in other.coeffs.items():
            out[s] = out.get(s, 0) + c
        return ZetaCombo(out, self.constant + other.constant)

    def __mul__(self, c) -> "ZetaCombo":
        c = Fraction(c)
        return ZetaCombo({s: v * c for s, v in self.coeffs.items()}, self.constant * c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ZetaCombo):
            return NotImplemented
        return self.coeffs == other.coeffs and self.constant == other.constant

    def __hash__(self):
        return hash((frozenset(self.coeffs.items()), self.constant))

    def evaluate(self, zeta) -> float:
        return float(self.constant) + sum(float(c) * zeta(s) for s, c in self.coeffs.items())

    def __str__(self) -> str:
        parts = []
        if self.constant:
            parts.append(f"{self.constant.numerator}/{self.constant.denominator}")
        for s in sorted(self.coeffs):
            c = self.coeffs[s]
            parts.append(f"{c.numerator}/{c.denominator}*zeta({s})")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"ZetaCombo({self})"


@dataclass(frozen=True)
class EvenPolynomial:
    """Polynomial in x^2: coeffs[j] multiplies x^(2j)."""

    coeffs: Tuple[Fraction, ...]

    def __mul__(self, other: "EvenPolynomial") -> "EvenPolynomial":
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return EvenPolynomial(tuple(out)).trimmed()

    def __add__(self, other: "EvenPolynomial") -> "EvenPolynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (size - len(self.coeffs))
        b = list(other.coeffs) + [0] * (size - len(other.coeffs))
        return EvenPolynomial(tuple(Fraction(x + y) for x, y in zip(a, b))).trimmed()

    def scale(self, c) -> "EvenPolynomial":
        return EvenPolynomial(tuple(Fraction(c) * x for x in self.coeffs)).trimmed()

    def trimmed(self) -> "EvenPolynomial":
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        return EvenPolynomial(tuple(c))

    @property
    def degree(self) -> int:
        return 2 * (len(self.trimmed().coeffs) - 1)

    def __call__(self, x):
        return sum(c * x ** (2 * j) for j, c in enumerate(self.coeffs))


def central_factorial_poly(k: int) -> EvenPolynomial:
    """prod_{l=1..k} (x^2 - l^2), the polynomial of degree 2k."""
    out = EvenPolynomial((Fraction(1),))
    for l in range(1, k + 1):
        out = out * EvenPolynomial((Fraction(-l * l), Fraction(1)))
    return out


# ----------------------------------------------------------------------------
# Laplacian minors


def _check_rim_pairs(n: int, pairs: Sequence[Rim]):
    for a, b in pairs:
        if b != a + 1 or not 1 <= a < n:
            raise ValueError(f"{(a, b)} is not a rim pair (i, i+1) with 1 <= i < {n}")


def interlaced(i_starts: Sequence[int], j_starts: Sequence[int]) -> bool:
    """i1 < j1 < i2 < j2 < ... (or the same with the roles of I and J exchanged)."""
    if len(i_starts) != len(j_starts):
        return False
    a, b = sorted(i_starts), sorted(j_starts)
    if a and b and b[0] < a[0]:
        a, b = b, a
    merged = [x for pair in zip(a, b) for x in pair]
    return all(x < y for x, y in zip(merged, merged[1:]))


def spoke_product(n: int) -> MultiPoly:
    """S(x): the product of the spoke variables x_{n+1} ... x_{2n}."""
    out = MultiPoly.const(1)
    for r in range(1, n + 1):
        out = out * MultiPoly.var(edge_var(n + r))
    return out


def wheel_minor(n: int, rows: Sequence[Rim], cols: Sequence[Rim]) -> MultiPoly:
    """Determinant of Lambda_{W_n} with rows E_I and columns E_J removed, in closed form.

    Nonzero only for interlaced sets, where it is -S(x) divided by the spoke
    variables at the removed positions.
    """
    _check_rim_pairs(n, rows)
    _check_rim_pairs(n, cols)
    if len(rows) != len(cols):
        raise ValueError("I and J must have the same size")
    if set(rows) & set(cols):
        raise ValueError("I and J must be disjoint")
    ii = [a for a, _ in rows]
    jj = [a for a, _ in cols]
    flat_i = [x for p in rows for x in p]
    flat_j = [x for p in cols for x in p]
    if len(set(flat_i)) != len(flat_i) or len(set(flat_j)) != len(flat_j) or not interlaced(ii, jj):
        return MultiPoly.zero()
    removed = {n + a for a in ii} | {n + a for a in jj}
    out = MultiPoly.const(-1)
    for r in range(1, n + 1):
        if n + r not in removed:
            out = out * MultiPoly.var(edge_var(n + r))
    return out


# ----------------------------------------------------------------------------
# c_{m,k}


def cmk(m: int, k: int) -> Fraction:
    """(2 / 2^k) * sum_{r=1..k} (-1)^(k-r) C(2k, k-r) r^m."""
    _check_mk(m, k)
    s = sum((-1) ** (k - r) * comb(2 * k, k - r) * r ** m for r in range(1, k + 1))
    return Fraction(2 * s, 2 ** k)


def cmk_multinomial(m: int, k: int) -> int:
    """Ordered partitions of an m-set into k nonempty blocks of even size."""
    _check_mk(m, k)
    total = 0
    for parts in _compositions(m // 2, k):
        term = factorial(m)
        for p in parts:
            term //= factorial(2 * p)
        total += term
    return total


def _compositions(total: int, k: int) -> Iterator[Tuple[int, ...]]:
    for cuts in itertools.combinations(range(1, total), k - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(k))


def _check_mk(m: int, k: int):
    if m % 2 or m < 2:
        raise ValueError("m must be an even integer >= 2")
    if not 1 <= k <= m // 2:
        raise ValueError("k must lie in 1..m/2")


@dataclass(frozen=True)
class CentralFactorialRow:
    m: int
    values: Tuple[Fraction, ...]

    def rescaled(self) -> Tuple[Fraction, ...]:
        """2^k c_{m,k} / (2k)!, the central factorial numbers."""
        return tuple(Fraction(2 ** k) * c / factorial(2 * k) for k, c in enumerate(self.values, start=1))


def central_factorial_row(m: int) -> CentralFactorialRow:
    return CentralFactorialRow(m, tuple(cmk(m, k) for k in range(1, m // 2 + 1)))


def central_identity_check(m: int) -> bool:
    """sum_k 2^k c_{m,k} / (2k)! * p_{2k-2}(x) equals x^(m-2) exactly."""
    acc = EvenPolynomial((Fraction(0),))
    for k in range(1, m // 2 + 1):
        acc = acc + central_factorial_poly(k - 1).scale(Fraction(2 ** k) * cmk(m, k) / factorial(2 * k))
    target = EvenPolynomial(tuple([Fraction(0)] * ((m - 2) // 2) + [Fraction(1)]))
    return acc.trimmed() == target


# ----------------------------------------------------------------------------
# integrand and integral


def _check_odd(n: int):
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be an odd integer >= 3")


def wheel_integrand(n: int) -> List[Tuple[int, Fraction]]:
    """Coefficients of S^(k-1)/Psi^(k+1) in the invariant form of W_n on the chart x_2n = 1."""
    _check_odd(n)
    m = n - 1
    sign = (-1) ** (m // 2)
    coeffs = [(k, sign * (2 * n - 1) * 2 ** k * cmk(m, k)) for k in range(1, m // 2 + 1)]
    if len({c > 0 for _, c in coeffs}) != 1:
        raise ArithmeticError("integrand coefficients are not sign-definite")
    return coeffs


def integrand_sign(n: int) -> int:
    _check_odd(n)
    return (-1) ** ((n - 1) // 2)


def weighted_period_zeta(n: int, k: int) -> ZetaCombo:
    """Weighted Feynman period of W_n as an exact combination of zeta values.

    C(2n-2, n-1) / ((2k-1)! (k-1)!^(n-1)) * sum_r p_{2k-2}(r) / r^(2n-3).
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    if not 1 <= k <= n - 2:
        raise ValueError("k must lie in 1..n-2")
    prefactor = Fraction(comb(2 * n - 2, n - 1), factorial(2 * k - 1) * factorial(k - 1) ** (n - 1))
    poly = central_factorial_poly(k - 1)
    out = ZetaCombo()
    for j, a in enumerate(poly.coeffs):
        if a:
            out = out + ZetaCombo.zeta(2 * n - 3 - 2 * j, a * prefactor)
    return out


def wheel_integral_terms(n: int) -> List[Tuple[int, Fraction, ZetaCombo]]:
    """(k, rational weight, weighted period) with the integral the weighted sum."""
    _check_odd(n)
    m = n - 1
    out = []
    for k in range(1, m // 2 + 1):
        w = Fraction((2 * n - 1) * 2 ** k) * cmk(m, k) * factorial(k - 1) ** n / factorial(k)
        out.append((k, w, weighted_period_zeta(n, k)))
    return out


def wheel_integral_exact(n: int) -> ZetaCombo:
    total = ZetaCombo()
    for _, w, period in wheel_integral_terms(n):
        total = total + period * w
    expected = ZetaCombo.zeta(n, n * comb(2 * n, n))
    if total != expected:
        raise ArithmeticError(f"integral of W_{n} reduced to {total}, expected {expected}")
    return total


def feynman_residue_zeta(n: int) -> ZetaCombo:
    if n < 3:
        raise ValueError("n must be at least 3")
    return ZetaCombo.zeta(2 * n - 3, comb(2 * n - 2, n - 1))
