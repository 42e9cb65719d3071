"""Exact polynomial arithmetic and matrices of polynomials.

Coefficients are Python ints or ``fractions.Fraction`` values, so every
computation here is exact.  A :class:`MultiPoly` stores its monomials as
exponent vectors packed into a single integer (16 bits per variable) which
keeps multiplication down to one integer addition per pair of terms.
"""
from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

_BITS = 16
_MASK = (1 << _BITS) - 1
_MAX_EXP = _MASK

Scalar = Union[int, Fraction]


def _natural_key(name: str):
    parts = re.split(r"(\d+)", name)
    return tuple(int(p) if p.isdigit() else p for p in parts if p != "")


_TABLES: Dict[Tuple[str, ...], Tuple[str, ...]] = {}


def _intern(names: Tuple[str, ...]) -> Tuple[str, ...]:
    return _TABLES.setdefault(names, names)


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _pack(exps: Sequence[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > _MAX_EXP:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (_BITS * i)
    return key


def _unpack(key: int, nvars: int) -> Tuple[int, ...]:
    return tuple((key >> (_BITS * i)) & _MASK for i in range(nvars))


class MultiPoly:
    """Sparse multivariate polynomial with rational coefficients.

    Instances are immutable.  Build them with :meth:`var`, :meth:`const`,
    :meth:`from_terms` or :meth:`parse` and combine them with the usual
    arithmetic operators; ints and Fractions are accepted as constants.
    Variable tables are kept in natural sort order ("x2" before "x10") and
    are merged by name when two polynomials over different tables meet.
    """

    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, variables: Tuple[str, ...] = (), terms: Optional[Dict[int, Scalar]] = None):
        self._vars = variables
        self._terms = terms if terms is not None else {}
        self._hash = None

    # construction -----------------------------------------------------

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls(_intern((name,)), {1: 1})

    @classmethod
    def const(cls, c: Scalar) -> "MultiPoly":
        c = _normalize(c)
        return cls((), {0: c} if c else {})

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls((), {})

    @classmethod
    def from_terms(cls, variables: Sequence[str], terms: Mapping[Tuple[int, ...], Scalar]) -> "MultiPoly":
        """Build from ``{exponent tuple: coefficient}`` over ``variables``."""
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        order = sorted(range(len(variables)), key=lambda i: _natural_key(variables[i]))
        table = _intern(tuple(variables[i] for i in order))
        out: Dict[int, Scalar] = {}
        for exps, c in terms.items():
            if len(exps) != len(variables):
                raise ValueError("exponent vector length does not match variable table")
            key = _pack([exps[i] for i in order])
            out[key] = out.get(key, 0) + c
        return cls(table, _clean(out))

    @classmethod
    def coerce(cls, x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, Rational):
            return cls.const(x)
        raise TypeError(f"cannot convert {type(x).__name__} to MultiPoly")

    # inspection -------------------------------------------------------

    @property
    def variables(self) -> Tuple[str, ...]:
        return self._vars

    def terms(self) -> Iterator[Tuple[Tuple[int, ...], Scalar]]:
        """Yield ``(exponent vector, coefficient)`` pairs over :attr:`variables`."""
        nv = len(self._vars)
        for key, c in self._terms.items():
            yield _unpack(key, nv), c

    def monomials(self) -> Dict[Tuple[Tuple[str, int], ...], Scalar]:
        """Table-independent view: ``{((name, exp), ...): coeff}`` with zero exponents dropped."""
        out = {}
        for exps, c in self.terms():
            out[tuple((v, e) for v, e in zip(self._vars, exps) if e)] = c
        return out

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get(0, 0)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e, _ in self.terms())

    def used_variables(self) -> Tuple[str, ...]:
        used = 0
        for key in self._terms:
            used |= key
        return tuple(v for i, v in enumerate(self._vars) if (used >> (_BITS * i)) & _MASK)

    # table alignment --------------------------------------------------

    def _reindexed(self, table: Tuple[str, ...]) -> Dict[int, Scalar]:
        if self._vars is table or self._vars == table:
            return self._terms
        pos = {v: i for i, v in enumerate(table)}
        shifts = [_BITS * pos[v] for v in self._vars]
        out = {}
        for key, c in self._terms.items():
            new = 0
            i = 0
            while key:
                e = key & _MASK
                if e:
                    new |= e << shifts[i]
                key >>= _BITS
                i += 1
            out[new] = c
        return out

    @staticmethod
    def _align(a: "MultiPoly", b: "MultiPoly"):
        if a._vars is b._vars or a._vars == b._vars:
            return a._vars, a._terms, b._terms
        if not b._vars:
            return a._vars, a._terms, b._terms
        if not a._vars:
            return b._vars, a._terms, b._terms
        table = _intern(tuple(sorted(set(a._vars) | set(b._vars), key=_natural_key)))
        return table, a._reindexed(table), b._reindexed(table)

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            if not isinstance(other, Rational):
                return NotImplemented
            if not other:
                return self
            out = dict(self._terms)
            c = out.get(0, 0) + other
            if c:
                out[0] = _normalize(c)
            else:
                out.pop(0, None)
            return MultiPoly(self._vars, out)
        table, ta, tb = MultiPoly._align(self, other)
        if len(ta) < len(tb):
            ta, tb = tb, ta
        out = dict(ta)
        for k, c in tb.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v += c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return MultiPoly(table, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self._vars, {k: -c for k, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, (MultiPoly, Rational)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Rational):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if not isinstance(other, Rational):
                return NotImplemented
            if not other:
                return MultiPoly()
            if other == 1:
                return self
            return MultiPoly(self._vars, {k: _normalize(c * other) for k, c in self._terms.items()})
        if not self._terms or not other._terms:
            return MultiPoly()
        table, ta, tb = MultiPoly._align(self, other)
        if len(ta) < len(tb):
            ta, tb = tb, ta
        out: Dict[int, Scalar] = {}
        get = out.get
        for kb, cb in tb.items():
            for ka, ca in ta.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return MultiPoly(table, _clean(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational):
            if not other:
                raise ZeroDivisionError("division of polynomial by zero")
            return self * (Fraction(1) / other)
        if isinstance(other, MultiPoly):
            return self.exact_div(other)
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = MultiPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # comparisons ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Rational):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self._vars is other._vars or self._vars == other._vars:
            return self._terms == other._terms
        return self.monomials() == other.monomials()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.monomials().items()))
        return self._hash

    # calculus and substitution ----------------------------------------

    def diff(self, name: str) -> "MultiPoly":
        if name not in self._vars:
            return MultiPoly()
        i = self._vars.index(name)
        shift = _BITS * i
        unit = 1 << shift
        out = {}
        for key, c in self._terms.items():
            e = (key >> shift) & _MASK
            if e:
                out[key - unit] = c * e
        return MultiPoly(self._vars, out)

    def subs(self, values: Mapping[str, Union[Scalar, "MultiPoly"]]) -> Union["MultiPoly", Scalar]:
        """Substitute numbers or polynomials for some variables.

        Returns a MultiPoly; use :meth:`evaluate` for a full numeric evaluation.
        """
        idx = [(i, values[v]) for i, v in enumerate(self._vars) if v in values]
        if not idx:
            return self
        keep = [v for v in self._vars if v not in values]
        keep_pos = [i for i, v in enumerate(self._vars) if v not in values]
        power_cache: Dict[Tuple[int, int], object] = {}
        acc = MultiPoly.zero()
        numeric_acc: Dict[Tuple[int, ...], Scalar] = {}
        all_numeric = all(not isinstance(val, MultiPoly) for _, val in idx)
        for key, c in self._terms.items():
            factor = c
            for i, val in idx:
                e = (key >> (_BITS * i)) & _MASK
                if e:
                    p = power_cache.get((i, e))
                    if p is None:
                        p = val ** e
                        power_cache[(i, e)] = p
                    factor = factor * p
            rest = tuple((key >> (_BITS * i)) & _MASK for i in keep_pos)
            if all_numeric:
                numeric_acc[rest] = numeric_acc.get(rest, 0) + factor
            else:
                acc = acc + MultiPoly.from_terms(keep, {rest: 1}) * factor
        if all_numeric:
            return MultiPoly.from_terms(keep, numeric_acc)
        return acc

    def evaluate(self, values: Mapping[str, Scalar]) -> Scalar:
        missing = [v for v in self.used_variables() if v not in values]
        if missing:
            raise KeyError(f"no value for variables {missing}")
        total = 0
        nv = len(self._vars)
        for key, c in self._terms.items():
            t = c
            for i in range(nv):
                e = (key >> (_BITS * i)) & _MASK
                if e:
                    t = t * values[self._vars[i]] ** e
            total += t
        return _normalize(total)

    def homogenize(self, name: str, degree: int) -> "MultiPoly":
        """Multiply each monomial by a power of ``name`` to reach total ``degree``."""
        h = MultiPoly.var(name)
        out = MultiPoly.zero()
        for mono, c in self.monomials().items():
            d = sum(e for _, e in mono)
            if d > degree:
                raise ValueError("monomial degree exceeds target degree")
            term = MultiPoly.from_terms([v for v, _ in mono], {tuple(e for _, e in mono): c})
            out = out + term * h ** (degree - d)
        return out

    # division ---------------------------------------------------------

    def exact_div(self, other: Union["MultiPoly", Scalar]) -> "MultiPoly":
        """Divide by ``other``; raises ``ArithmeticError`` if the division is not exact."""
        if isinstance(other, Rational):
            return self / other
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        if other.is_constant():
            return self / other.constant_value()
        table, num, den = MultiPoly._align(self, other)
        nv = len(table)

        def lead(terms):
            return max(terms, key=lambda k: _grlex_key(k, nv))

        rem = dict(num)
        quo: Dict[int, Scalar] = {}
        lk_d = lead(den)
        lc_d = den[lk_d]
        de = _unpack(lk_d, nv)
        while rem:
            lk = lead(rem)
            re_ = _unpack(lk, nv)
            if any(a < b for a, b in zip(re_, de)):
                raise ArithmeticError("polynomial division is not exact")
            qk = lk - lk_d
            qc = _normalize(Fraction(rem[lk]) / lc_d)
            quo[qk] = quo.get(qk, 0) + qc
            for k, c in den.items():
                kk = k + qk
                v = rem.get(kk, 0) - qc * c
                if v:
                    rem[kk] = _normalize(v)
                else:
                    rem.pop(kk, None)
        return MultiPoly(table, _clean(quo))

    # text -------------------------------------------------------------

    def sorted_terms(self) -> List[Tuple[Tuple[int, ...], Scalar]]:
        """Terms in graded lexicographic order, highest first."""
        return sorted(self.terms(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_text()!r})"

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exps, c in self.sorted_terms():
            c = _normalize(c)
            neg = c < 0
            mag = -c if neg else c
            factors = [v if e == 1 else f"{v}^{e}" for v, e in zip(self._vars, exps) if e]
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    @classmethod
    def parse(cls, text: str) -> "MultiPoly":
        """Parse the canonical text form (also accepts any order of terms and factors)."""
        s = text.replace("−", "-").replace(" ", "")
        if not s:
            raise ValueError("empty polynomial text")
        tokens = re.findall(r"[+-]?[^+-]+", s)
        if "".join(tokens) != s:
            raise ValueError(f"cannot parse polynomial {text!r}")
        acc = cls.zero()
        for tok in tokens:
            sign = 1
            if tok[0] in "+-":
                sign = -1 if tok[0] == "-" else 1
                tok = tok[1:]
            if not tok:
                raise ValueError(f"cannot parse polynomial {text!r}")
            term: Union[MultiPoly, Scalar] = sign
            for factor in tok.split("*"):
                m = re.fullmatch(r"(\d+)(?:/(\d+))?", factor)
                if m:
                    num = int(m.group(1))
                    term = term * (Fraction(num, int(m.group(2))) if m.group(2) else num)
                    continue
                m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?", factor)
                if not m:
                    raise ValueError(f"bad factor {factor!r} in {text!r}")
                term = cls.var(m.group(1)) ** int(m.group(2) or 1) * term
            acc = acc + term
        return acc


def _grlex_key(key: int, nv: int):
    exps = _unpack(key, nv)
    return (sum(exps), exps)


def _clean(terms: Dict[int, Scalar]) -> Dict[int, Scalar]:
    return {k: _normalize(c) for k, c in terms.items() if c}


def poly_vars(*names: str) -> List[MultiPoly]:
    return [MultiPoly.var(n) for n in names]


# ----------------------------------------------------------------------------
# exact helpers shared by scalar and polynomial code paths


def is_zero(x) -> bool:
    return not x


def exact_div(a, b):
    """Exact quotient in whichever ring ``a`` and ``b`` live in."""
    if isinstance(a, MultiPoly) or isinstance(b, MultiPoly):
        return MultiPoly.coerce(a).exact_div(b)
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{a} is not divisible by {b}")
        return q
    return _normalize(Fraction(a) / b)


# ----------------------------------------------------------------------------


class PolyMatrix:
    """Dense matrix whose entries are MultiPoly values or exact scalars."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries: Sequence[Sequence[object]]):
        rows = [list(r) for r in entries]
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        if any(len(r) != self.cols for r in rows):
            raise ValueError("ragged matrix")
        self._e = rows

    @classmethod
    def generic(cls, n: int, name: str = "b", cols: Optional[int] = None) -> "PolyMatrix":
        cols = n if cols is None else cols
        return cls([[MultiPoly.var(_index_name(name, i, j)) for j in range(1, cols + 1)] for i in range(1, n + 1)])

    @classmethod
    def generic_symmetric(cls, n: int, name: str = "b") -> "PolyMatrix":
        return cls([[MultiPoly.var(_index_name(name, min(i, j), max(i, j))) for j in range(1, n + 1)]
                    for i in range(1, n + 1)])

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    def tolist(self) -> List[List[object]]:
        return [list(r) for r in self._e]

    def map(self, f: Callable[[object], object]) -> "PolyMatrix":
        return PolyMatrix([[f(x) for x in r] for r in self._e])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        """Rows and columns selected by 0-based index lists; repeats are allowed."""
        return PolyMatrix([[self._e[i][j] for j in cols] for i in rows])

    def delete(self, rows: Iterable[int], cols: Iterable[int]) -> "PolyMatrix":
        dr, dc = set(rows), set(cols)
        keep_r = [i for i in range(self.rows) if i not in dr]
        keep_c = [j for j in range(self.cols) if j not in dc]
        return self.submatrix(keep_r, keep_c)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([[self._e[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(self._e[i][j] == self._e[j][i]
                                        for i in range(self.rows) for j in range(i))

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self._e, other._e) for a, b in zip(ra, rb))

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._e, other._e)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "PolyMatrix":
        return PolyMatrix([[c * x for x in r] for r in self._e])

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = 0
                for l in range(self.cols):
                    a = self._e[i][l]
                    if a:
                        b = other._e[l][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def evaluate(self, values: Mapping[str, Scalar]) -> "PolyMatrix":
        return self.map(lambda x: x.evaluate(values) if isinstance(x, MultiPoly) else x)

    def subs(self, values) -> "PolyMatrix":
        return self.map(lambda x: x.subs(values) if isinstance(x, MultiPoly) else x)

    def det(self, method: str = "cofactor"):
        return poly_det(self, method)

    def perm(self, method: str = "auto"):
        return poly_perm(self, method)

    def adjugate(self) -> "PolyMatrix":
        _require_square(self)
        n = self.rows
        if n == 1:
            return PolyMatrix([[1]])
        return PolyMatrix([[(-1) ** (i + j) * poly_det(self.delete([j], [i])) for j in range(n)]
                           for i in range(n)])

    def inverse(self) -> "PolyMatrix":
        """Exact inverse of a matrix with int/Fraction entries (Gauss-Jordan)."""
        _require_square(self)
        n = self.rows
        a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self._e)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            a[col], a[piv] = a[piv], a[col]
            p = a[col][col]
            a[col] = [x / p for x in a[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return PolyMatrix([[_normalize(x) for x in r[n:]] for r in a])

    def __str__(self) -> str:
        cells = [[str(x) for x in r] for r in self._e]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in r) + " ]" for r in cells)

    def __repr__(self) -> str:
        return f"PolyMatrix({self.rows}x{self.cols})"


def _index_name(name: str, i: int, j: int) -> str:
    return f"{name}{i}{j}" if i < 10 and j < 10 else f"{name}{i}_{j}"


def _require_square(m: PolyMatrix):
    if not m.is_square():
        raise ValueError(f"matrix must be square, got {m.rows}x{m.cols}")


def poly_det(m: PolyMatrix, method: str = "cofactor"):
    """Determinant by memoized cofactor expansion or fraction-free elimination."""
    _require_square(m)
    if method == "cofactor":
        return _det_cofactor(m._e)
    if method == "fraction_free":
        return _det_bareiss(m._e)
    raise ValueError(f"unknown determinant method {method!r}")


def _det_cofactor(e: List[List[object]]):
    n = len(e)
    if n == 0:
        return 1
    memo: Dict[int, object] = {}

    # minor(mask) is the determinant of the last popcount(mask) rows restricted to the columns in mask
    def minor(mask: int):
        if mask in memo:
            return memo[mask]
        k = n - bin(mask).count("1")
        row = e[k]
        acc = 0
        sign = 1
        for j in range(n):
            if not (mask >> j) & 1:
                continue
            a = row[j]
            if a:
                rest = mask & ~(1 << j)
                sub = minor(rest) if rest else 1
                if sub:
                    acc = acc + a * sub if sign > 0 else acc - a * sub
            sign = -sign
        memo[mask] = acc
        return acc

    return minor((1 << n) - 1)


def _det_bareiss(e: List[List[object]]):
    n = len(e)
    if n == 0:
        return 1
    if any(isinstance(x, Fraction) for r in e for x in r):
        # clear denominators row by row so every exact division stays in Z
        scales = [math.lcm(*(Fraction(x).denominator for x in r)) for r in e]
        scaled = [[int(Fraction(x) * s) for x in r] for r, s in zip(e, scales)]
        return _normalize(Fraction(_det_bareiss(scaled), math.prod(scales)))
    a = [list(r) for r in e]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not a[k][k]:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        pk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri = a[i]
            rk = a[k]
            for j in range(k + 1, n):
                ri[j] = exact_div(ri[j] * pk - aik * rk[j], prev)
        prev = pk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation given as a sequence of distinct comparable items."""
    p = list(perm)
    sign = 1
    seen = [False] * len(p)
    order = sorted(range(len(p)), key=lambda i: p[i])
    # order[i] is where the i-th smallest sits; count cycles of this permutation
    for i in range(len(p)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def poly_perm(m: PolyMatrix, method: str = "auto"):
    """Permanent; naive permutation sum for n <= 4 and Ryser's formula above."""
    _require_square(m)
    n = m.rows
    if method == "auto":
        method = "naive" if n <= 4 else "ryser"
    if method == "naive":
        return _perm_naive(m._e)
    if method == "ryser":
        return _perm_ryser(m._e)
    raise ValueError(f"unknown permanent method {method!r}")


def _perm_naive(e):
    n = len(e)
    total = 0
    for sigma in itertools.permutations(range(n)):
        t = 1
        for i in range(n):
            t = t * e[i][sigma[i]]
            if not t:
                break
        if t:
            total = total + t
    return total


def _perm_ryser(e):
    n = len(e)
    if n == 0:
        return 1
    # Gray-code walk over column subsets; row_sums[i] tracks sum_{j in S} e[i][j]
    row_sums = [0] * n
    total = 0
    members = 0
    for g in range(1, 1 << n):
        j = (g & -g).bit_length() - 1
        gray = g ^ (g >> 1)
        if (gray >> j) & 1:
            members += 1
            for i in range(n):
                row_sums[i] = row_sums[i] + e[i][j]
        else:
            members -= 1
            for i in range(n):
                row_sums[i] = row_sums[i] - e[i][j]
        prod = 1
        for s in row_sums:
            prod = prod * s
            if not prod:
                break
        if prod:
            total = total + prod if (n - members) % 2 == 0 else total - prod
    return total


def det_by_permutations(m: PolyMatrix):
    """Leibniz sum; only meant as a small-size oracle."""
    _require_square(m)
    n = m.rows
    total = 0
    for sigma in itertools.permutations(range(n)):
        t = permutation_sign(sigma)
        for i in range(n):
            t = t * m[i, sigma[i]]
        total = total + t
    return total
