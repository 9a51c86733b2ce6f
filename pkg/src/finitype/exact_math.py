"""Exact arithmetic kernels: Laurent polynomials, truncated power series,
and sparse matrices over the rationals.

Everything in this module is exact.  Rational numbers are represented by
:class:`fractions.Fraction` (always reduced, positive denominator), Laurent
polynomials store a map from integer exponents to nonzero rational
coefficients, and matrix ranks are computed by Gaussian elimination over
Fraction entries with a deterministic pivot rule.  No floats anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "Rational",
    "LaurentPoly",
    "TruncatedSeries",
    "SparseMatrix",
    "laurent_substitute_exp",
]

# Arbitrary-precision rationals.  fractions.Fraction already guarantees the
# invariants we need (lowest terms, denominator > 0, 0 == 0/1).
Rational = Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an integer or Fraction, got {type(x).__name__}")


def format_coeff(c: Fraction) -> str:
    """Render a rational coefficient exactly, as `n` or `n/d`."""
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class LaurentPoly:
    """A Laurent polynomial in one variable with rational coefficients.

    Args:
        var: variable name used for printing (e.g. ``"q"`` or ``"z"``).
        terms: mapping exponent -> coefficient; zero coefficients are dropped.

    The terms map never stores a zero coefficient, so structural equality of
    the maps is equality of polynomials.
    """

    __slots__ = ("var", "terms")

    def __init__(self, var: str, terms: Mapping[int, Fraction] | None = None):
        self.var = var
        clean: dict[int, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = _as_fraction(c)
                if c != 0:
                    clean[int(e)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, var: str) -> "LaurentPoly":
        return cls(var, {})

    @classmethod
    def constant(cls, var: str, c) -> "LaurentPoly":
        return cls(var, {0: _as_fraction(c)})

    @classmethod
    def monomial(cls, var: str, exp: int, c=1) -> "LaurentPoly":
        return cls(var, {exp: _as_fraction(c)})

    # -- ring operations ----------------------------------------------

    def _check_var(self, other: "LaurentPoly") -> None:
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var!r} vs {other.var!r}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_var(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return LaurentPoly(self.var, terms)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_var(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) - c
        return LaurentPoly(self.var, terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.var, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_var(other)
        terms: dict[int, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return LaurentPoly(self.var, terms)

    __rmul__ = __mul__

    def scale(self, c) -> "LaurentPoly":
        c = _as_fraction(c)
        return LaurentPoly(self.var, {e: k * c for e, k in self.terms.items()})

    def shift(self, d: int) -> "LaurentPoly":
        """Multiply by var**d."""
        return LaurentPoly(self.var, {e + d: c for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("negative powers only for monomials")
            ((e, c),) = self.terms.items()
            if abs(c) != 1:
                raise ValueError("negative powers only for unit monomials")
            return LaurentPoly(self.var, {e * n: Fraction(1) if c > 0 or n % 2 == 0 else Fraction(-1)})
        out = LaurentPoly.constant(self.var, 1)
        for _ in range(n):
            out = out * self
        return out

    # -- queries ------------------------------------------------------

    def coefficient(self, exp: int) -> Fraction:
        return self.terms.get(exp, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def substitute_inverse(self) -> "LaurentPoly":
        """Replace the variable by its inverse (exponent negation)."""
        return LaurentPoly(self.var, {-e: c for e, c in self.terms.items()})

    def exponents(self) -> list[int]:
        return sorted(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.var == other.var
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.var, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                body = format_coeff(abs(c))
            else:
                v = self.var if e == 1 else f"{self.var}^{e}"
                body = v if abs(c) == 1 else f"{format_coeff(abs(c))}*{v}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.var!r}, {dict(sorted(self.terms.items()))!r})"


class TruncatedSeries:
    """A power series truncated at a fixed order.

    Coefficients are stored for exponents 0..order inclusive; arithmetic
    silently discards anything beyond the truncation order.
    """

    __slots__ = ("var", "order", "coeffs")

    def __init__(self, var: str, order: int, coeffs: Iterable = ()):
        if order < 0:
            raise ValueError("order must be >= 0")
        self.var = var
        self.order = order
        cs = [_as_fraction(c) for c in coeffs]
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = cs

    @classmethod
    def exponential(cls, var: str, rate: int, order: int) -> "TruncatedSeries":
        """The series of exp(rate * var) up to the truncation order."""
        coeffs = []
        c = Fraction(1)
        for i in range(order + 1):
            coeffs.append(c)
            c = c * rate / (i + 1)
        return cls(var, order, coeffs)

    def _check(self, other: "TruncatedSeries") -> None:
        if self.var != other.var or self.order != other.order:
            raise ValueError("series mismatch (variable or order)")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(
            self.var, self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(
            self.var, self.order, [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return TruncatedSeries(self.var, self.order, [a * c for a in self.coeffs])
        self._check(other)
        out = [Fraction(0)] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j > self.order:
                    break
                out[i + j] += a * b
        return TruncatedSeries(self.var, self.order, out)

    __rmul__ = __mul__

    def scale(self, c) -> "TruncatedSeries":
        return self * c

    def coefficient(self, i: int) -> Fraction:
        if not 0 <= i <= self.order:
            raise IndexError(f"coefficient {i} beyond truncation order {self.order}")
        return self.coeffs[i]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.var == other.var
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.var!r}, {self.order}, {self.coeffs!r})"


def laurent_substitute_exp(p: LaurentPoly, order: int, var: str = "x") -> TruncatedSeries:
    """Substitute ``exp(var)`` for the polynomial variable.

    Each term c*q**e contributes c*exp(e*var); the result is the truncated
    power series of the sum.  This is how a Jones-style polynomial in q is
    expanded to extract perturbative coefficients.

    Args:
        p: Laurent polynomial in any variable.
        order: truncation order of the resulting series.
        var: name of the series variable.
    """
    out = TruncatedSeries(var, order)
    for e, c in p.terms.items():
        out = out + TruncatedSeries.exponential(var, e, order) * c
    return out


class SparseMatrix:
    """A sparse matrix over the rationals, stored as {(row, col): coeff}.

    Only nonzero entries are stored.  The matrix knows its logical shape so
    that empty rows/columns still count for dimensions.
    """

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows: int, ncols: int, entries: Mapping | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative matrix dimensions")
        self.nrows = nrows
        self.ncols = ncols
        self.entries: dict[tuple[int, int], Fraction] = {}
        if entries:
            for (r, c), v in entries.items():
                self[r, c] = v

    def __setitem__(self, key: tuple[int, int], value) -> None:
        r, c = key
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError(f"entry {key} outside {self.nrows}x{self.ncols} matrix")
        v = _as_fraction(value)
        if v == 0:
            self.entries.pop((r, c), None)
        else:
            self.entries[r, c] = v

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self.entries.get(key, Fraction(0))

    @classmethod
    def from_rows(cls, rows: list[dict[int, Fraction]], ncols: int) -> "SparseMatrix":
        m = cls(len(rows), ncols)
        for i, row in enumerate(rows):
            for j, v in row.items():
                m[i, j] = v
        return m

    def row_dicts(self) -> list[dict[int, Fraction]]:
        rows: list[dict[int, Fraction]] = [dict() for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def rank(self, pivot: str = "sparsest") -> int:
        """Exact rank by Gaussian elimination.

        The pivot column is always the smallest column index with a nonzero
        entry among the remaining rows.  Among candidate rows the strategy
        ``"sparsest"`` picks the row with the fewest nonzeros (ties broken by
        original row order), while ``"first"`` simply picks the earliest row.
        Both strategies give the same rank; having two is a cheap way to
        cross-check the elimination.
        """
        if pivot not in ("sparsest", "first"):
            raise ValueError(f"unknown pivot strategy {pivot!r}")
        rows = [row for row in self.row_dicts() if row]
        rank = 0
        while rows:
            pivot_col = min(min(row) for row in rows)
            candidates = [i for i, row in enumerate(rows) if pivot_col in row]
            if pivot == "sparsest":
                pick = min(candidates, key=lambda i: (len(rows[i]), i))
            else:
                pick = candidates[0]
            prow = rows.pop(pick)
            pval = prow[pivot_col]
            rank += 1
            reduced: list[dict[int, Fraction]] = []
            for row in rows:
                if pivot_col in row:
                    factor = row[pivot_col] / pval
                    for c, v in prow.items():
                        nv = row.get(c, Fraction(0)) - factor * v
                        if nv == 0:
                            row.pop(c, None)
                        else:
                            row[c] = nv
                if row:
                    reduced.append(row)
            rows = reduced
        return rank

    def transpose(self) -> "SparseMatrix":
        m = SparseMatrix(self.ncols, self.nrows)
        for (r, c), v in self.entries.items():
            m[c, r] = v
        return m

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}, {self.ncols}, nnz={len(self.entries)})"
