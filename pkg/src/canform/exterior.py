"""Exterior algebra over polynomial (or scalar) coefficients, and matrices of forms.

A wedge monomial is stored as a bitmask over the generator table: bit ``i``
set means generator ``i`` occurs.  Generators inside a monomial are always
read in table order, so the mask is a strictly increasing index list and
the sign of any reordering has already been folded into the coefficient.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .algebra import MultiPoly, PolyMatrix


class GeneratorTable:
    """Ordered, immutable list of 1-form generator names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be distinct")
        self._index = {n: i for i, n in enumerate(self.names)}

    @classmethod
    def pairs(cls, n: int, prefix: str = "w", symmetric: bool = False) -> "GeneratorTable":
        """Generators ``w11, w12, ...`` for the entries of an n x n form matrix."""
        return cls(pair_name(prefix, i, j) for i in range(1, n + 1) for j in range(1, n + 1)
                   if not symmetric or i <= j)

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"generator {name!r} not in table") from None

    def mask(self, names: Iterable[str]) -> int:
        m = 0
        for n in names:
            m |= 1 << self.index(n)
        return m

    def __eq__(self, other):
        return isinstance(other, GeneratorTable) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"GeneratorTable({list(self.names)})"


def pair_name(prefix: str, i: int, j: int) -> str:
    return f"{prefix}{i}{j}" if i < 10 and j < 10 else f"{prefix}{i}_{j}"


@lru_cache(maxsize=None)
def _merge_sign(a: int, b: int) -> int:
    """Sign of sorting the concatenation (monomial a, monomial b)."""
    inversions = 0
    j = 0
    while b:
        if b & 1:
            inversions += (a >> (j + 1)).bit_count()
        b >>= 1
        j += 1
    return -1 if inversions & 1 else 1


def _accumulate_wedge(out: Dict[int, object], ta: Mapping[int, object], tb: Mapping[int, object]):
    for mb, cb in tb.items():
        for ma, ca in ta.items():
            if ma & mb:
                continue
            c = ca * cb
            if _merge_sign(ma, mb) < 0:
                c = -c
            key = ma | mb
            prev = out.get(key)
            out[key] = c if prev is None else prev + c


def _strip(terms: Dict[int, object]) -> Dict[int, object]:
    return {k: c for k, c in terms.items() if c}


class ExtForm:
    """An element of the exterior algebra over a fixed generator table."""

    __slots__ = ("table", "_terms")

    def __init__(self, table: GeneratorTable, terms: Optional[Dict[int, object]] = None):
        self.table = table
        self._terms = terms if terms is not None else {}

    @classmethod
    def generator(cls, table: GeneratorTable, name: str, coeff=1) -> "ExtForm":
        return cls(table, {1 << table.index(name): coeff} if coeff else {})

    @classmethod
    def scalar(cls, table: GeneratorTable, coeff) -> "ExtForm":
        return cls(table, {0: coeff} if coeff else {})

    @classmethod
    def monomial(cls, table: GeneratorTable, names: Sequence[str], coeff=1) -> "ExtForm":
        """``coeff * names[0] ∧ names[1] ∧ ...`` in the given order."""
        out = cls.scalar(table, coeff)
        for n in names:
            out = out.wedge(cls.generator(table, n))
        return out

    # inspection -------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def raw_terms(self) -> Dict[int, object]:
        return self._terms

    def terms(self) -> Iterator[Tuple[Tuple[int, ...], object]]:
        """Yield (increasing generator-index tuple, coefficient)."""
        for m, c in self._terms.items():
            yield _mask_indices(m), c

    def coefficient(self, names: Sequence[str]):
        """Coefficient of the monomial ``names`` taken in the given order."""
        mask = 0
        for n in names:
            bit = 1 << self.table.index(n)
            if mask & bit:
                return 0
            mask |= bit
        c = self._terms.get(mask, 0)
        if not c:
            return 0
        return c if _order_sign([self.table.index(n) for n in names]) > 0 else -c

    def degrees(self) -> set:
        return {m.bit_count() for m in self._terms}

    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError("form is not homogeneous")
        return ds.pop() if ds else 0

    def component(self, degree: int) -> "ExtForm":
        return ExtForm(self.table, {m: c for m, c in self._terms.items() if m.bit_count() == degree})

    def top_coefficient(self):
        """Coefficient of the wedge of all generators in table order."""
        return self._terms.get((1 << len(self.table)) - 1, 0)

    # algebra ----------------------------------------------------------

    def _check(self, other: "ExtForm"):
        if other.table is not self.table and other.table != self.table:
            raise ValueError("forms live over different generator tables")

    def __add__(self, other):
        if not isinstance(other, ExtForm):
            if other == 0:
                return self
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            prev = out.get(m)
            out[m] = c if prev is None else prev + c
        return ExtForm(self.table, _strip(out))

    __radd__ = __add__

    def __neg__(self):
        return ExtForm(self.table, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ExtForm":
        if not c:
            return ExtForm(self.table)
        return ExtForm(self.table, _strip({m: c * v for m, v in self._terms.items()}))

    def wedge(self, other: "ExtForm") -> "ExtForm":
        self._check(other)
        out: Dict[int, object] = {}
        _accumulate_wedge(out, self._terms, other._terms)
        return ExtForm(self.table, _strip(out))

    def __mul__(self, other):
        if isinstance(other, ExtForm):
            return self.wedge(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, ExtForm):
            return self.table == other.table and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    __hash__ = None

    def map_coefficients(self, f) -> "ExtForm":
        return ExtForm(self.table, _strip({m: f(c) for m, c in self._terms.items()}))

    def restrict(self, allowed_mask: int) -> "ExtForm":
        """Drop every monomial containing a generator outside ``allowed_mask``."""
        return ExtForm(self.table, {m: c for m, c in self._terms.items() if not m & ~allowed_mask})

    def substitute(self, images: Sequence["ExtForm"]) -> "ExtForm":
        """Algebra map sending generator i to the form ``images[i]`` (over another table)."""
        if len(images) != len(self.table):
            raise ValueError("need one image per generator")
        if not images:
            return self
        target = images[0].table
        acc = ExtForm(target)
        for m, c in self._terms.items():
            piece = ExtForm.scalar(target, c)
            for i in _mask_indices(m):
                piece = piece.wedge(images[i])
                if not piece:
                    break
            acc = acc + piece
        return acc

    # text -------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, key=lambda m: (m.bit_count(), _mask_indices(m))):
            c = self._terms[m]
            gens = "∧".join(self.table.names[i] for i in _mask_indices(m))
            ctext = str(c)
            if isinstance(c, MultiPoly) and len(c) > 1:
                ctext = f"({ctext})"
            if not gens:
                parts.append(ctext)
            elif ctext in ("1", "-1"):
                parts.append(ctext[:-1] + gens)
            else:
                parts.append(f"{ctext}*{gens}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"ExtForm({self})"


def _mask_indices(m: int) -> Tuple[int, ...]:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return tuple(out)


def _order_sign(indices: Sequence[int]) -> int:
    inv = 0
    for a in range(len(indices)):
        for b in range(a + 1, len(indices)):
            if indices[a] > indices[b]:
                inv += 1
    return -1 if inv & 1 else 1


def wedge(*forms: ExtForm) -> ExtForm:
    out = forms[0]
    for f in forms[1:]:
        out = out.wedge(f)
    return out


class FormMatrix:
    """Matrix with ExtForm entries over one shared generator table."""

    __slots__ = ("table", "rows", "cols", "_e")

    def __init__(self, table: GeneratorTable, entries: Sequence[Sequence[ExtForm]]):
        self.table = table
        self._e = [list(r) for r in entries]
        self.rows = len(self._e)
        self.cols = len(self._e[0]) if self._e else 0
        for r in self._e:
            if len(r) != self.cols:
                raise ValueError("ragged form matrix")
            for f in r:
                if f.table != table:
                    raise ValueError("entry over a different generator table")

    @classmethod
    def from_poly_matrix(cls, table: GeneratorTable, m: PolyMatrix) -> "FormMatrix":
        return cls(table, [[ExtForm.scalar(table, m[i, j]) for j in range(m.cols)] for i in range(m.rows)])

    @classmethod
    def generic(cls, n: int, table: Optional[GeneratorTable] = None, prefix: str = "w") -> "FormMatrix":
        """Omega: the matrix whose (i, j) entry is the generator w_ij."""
        table = table or GeneratorTable.pairs(n, prefix)
        return cls(table, [[ExtForm.generator(table, pair_name(prefix, i, j)) for j in range(1, n + 1)]
                           for i in range(1, n + 1)])

    @classmethod
    def generic_symmetric(cls, n: int, table: Optional[GeneratorTable] = None, prefix: str = "w") -> "FormMatrix":
        table = table or GeneratorTable.pairs(n, prefix, symmetric=True)
        return cls(table, [[ExtForm.generator(table, pair_name(prefix, min(i, j), max(i, j)))
                            for j in range(1, n + 1)] for i in range(1, n + 1)])

    def __getitem__(self, ij) -> ExtForm:
        i, j = ij
        return self._e[i][j]

    def tolist(self) -> List[List[ExtForm]]:
        return [list(r) for r in self._e]

    def map(self, f) -> "FormMatrix":
        return FormMatrix(self.table, [[f(x) for x in r] for r in self._e])

    def __eq__(self, other):
        if not isinstance(other, FormMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a == b for ra, rb in zip(self._e, other._e) for a, b in zip(ra, rb))

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(f for r in self._e for f in r)

    def __add__(self, other: "FormMatrix") -> "FormMatrix":
        return FormMatrix(self.table, [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._e, other._e)])

    def scale(self, c) -> "FormMatrix":
        return self.map(lambda f: f.scale(c))

    def left_multiply(self, b: PolyMatrix) -> "FormMatrix":
        """``b @ self`` for a matrix ``b`` of coefficients."""
        if b.cols != self.rows:
            raise ValueError(f"cannot multiply {b.shape} by {(self.rows, self.cols)}")
        out = []
        for i in range(b.rows):
            row = []
            for j in range(self.cols):
                acc: Dict[int, object] = {}
                for l in range(b.cols):
                    c = b[i, l]
                    if not c:
                        continue
                    for m, v in self._e[l][j].raw_terms.items():
                        prev = acc.get(m)
                        t = c * v
                        acc[m] = t if prev is None else prev + t
                row.append(ExtForm(self.table, _strip(acc)))
            out.append(row)
        return FormMatrix(self.table, out)

    def __matmul__(self, other: "FormMatrix") -> "FormMatrix":
        if isinstance(other, PolyMatrix):
            other = FormMatrix.from_poly_matrix(self.table, other)
        if not isinstance(other, FormMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        if other.table != self.table:
            raise ValueError("form matrices over different generator tables")
        return FormMatrix(self.table, [[self._product_entry(other, i, j) for j in range(other.cols)]
                                       for i in range(self.rows)])

    def _product_entry(self, other: "FormMatrix", i: int, j: int) -> ExtForm:
        acc: Dict[int, object] = {}
        for l in range(self.cols):
            a = self._e[i][l].raw_terms
            b = other._e[l][j].raw_terms
            if a and b:
                _accumulate_wedge(acc, a, b)
        return ExtForm(self.table, _strip(acc))

    def trace(self) -> ExtForm:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square form matrix")
        acc = ExtForm(self.table)
        for i in range(self.rows):
            acc = acc + self._e[i][i]
        return acc

    def restrict(self, allowed_mask: int) -> "FormMatrix":
        return self.map(lambda f: f.restrict(allowed_mask))

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(f) for f in r) + "]" for r in self._e)


def form_matrix_power(b: PolyMatrix, omega: FormMatrix, k: int) -> FormMatrix:
    """(B·Omega)^k by a left fold of k-1 graded matrix products."""
    if k < 1:
        raise ValueError("power must be positive")
    if b.cols != omega.rows or omega.rows != omega.cols:
        raise ValueError("dimension mismatch")
    if k > len(omega.table):
        zero = ExtForm(omega.table)
        return FormMatrix(omega.table, [[zero] * b.rows for _ in range(b.rows)])
    step = omega.left_multiply(b)
    out = step
    for _ in range(k - 1):
        out = out @ step
    return out


def trace_of_power(b: PolyMatrix, omega: FormMatrix, k: int) -> ExtForm:
    """tr((B·Omega)^k); the last product only computes the diagonal."""
    if k > len(omega.table):
        return ExtForm(omega.table)
    step = omega.left_multiply(b)
    if k == 1:
        return step.trace()
    out = step
    for _ in range(k - 2):
        out = out @ step
    acc = ExtForm(omega.table)
    for i in range(out.rows):
        acc = acc + out._product_entry(step, i, i)
    return acc


def isotypical_project(f, nu, prefix: str = "w"):
    """Keep only the monomials built from generators w_ij with (i, j) in the type ``nu``.

    Works on an ExtForm or a FormMatrix; generators of ``nu`` missing from the
    table are ignored.
    """
    table = f.table
    allowed = table.mask(n for n in (pair_name(prefix, i, j) for i, j in nu.pairs) if n in table)
    return f.restrict(allowed)
