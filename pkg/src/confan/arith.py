"""Exact scalar, polynomial, and matrix arithmetic.

Scalars are arbitrary-precision rationals (stdlib Fraction, ints welcome) or
elements of a prime field Fp.  No floats, no tolerances, anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import NonSquare, ZeroPolynomial

Monomial = tuple  # dense exponent vector, one entry per variable


class Fp:
    """Element of the prime field F_p, stored as a residue in [0, p)."""

    __slots__ = ("val", "p")

    def __init__(self, val: int, p: int):
        self.val = val % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixed moduli %d and %d" % (self.p, other.p))
            return other.val
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else Fp(self.val + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else Fp(self.val - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else Fp(v - self.val, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else Fp(self.val * v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        if v % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Fp(self.val * pow(v, self.p - 2, self.p), self.p)

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        if self.val == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Fp(v * pow(self.val, self.p - 2, self.p), self.p)

    def __neg__(self):
        return Fp(-self.val, self.p)

    def __pow__(self, e: int):
        return Fp(pow(self.val, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.val == other.val
        if isinstance(other, int):
            return self.val == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.val, self.p))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return "Fp(%d, %d)" % (self.val, self.p)

    def __str__(self):
        return str(self.val)


class TermOrder:
    """Lexicographic order over an explicit variable priority list.

    priority holds variable indices, most significant first.  A block order
    (compare the x-block, tie-break by the u-block) is the same thing with
    the blocks concatenated, which keeps the order multiplicative.
    """

    __slots__ = ("priority",)

    def __init__(self, priority: Iterable[int]):
        self.priority = tuple(priority)

    @classmethod
    def lex(cls, nvars: int) -> "TermOrder":
        return cls(range(nvars))

    @classmethod
    def blocks(cls, *blocks: Iterable[int]) -> "TermOrder":
        return cls([i for block in blocks for i in block])

    def key(self, mono: Monomial):
        return tuple(mono[i] for i in self.priority)

    def __repr__(self):
        return "TermOrder(%r)" % (self.priority,)


class MultiPoly:
    """Exact multivariate polynomial: ordered variable names + sparse terms.

    terms maps exponent tuples to nonzero coefficients; zero coefficients are
    dropped on construction so equality is plain dict equality.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: dict):
        self.variables = tuple(variables)
        self.terms = {m: c for m, c in terms.items() if c}

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "MultiPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables: Sequence[str], i: int, coeff=1) -> "MultiPoly":
        mono = [0] * len(variables)
        mono[i] = 1
        return cls(variables, {tuple(mono): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check_same(self, other: "MultiPoly"):
        if self.variables != other.variables:
            raise ValueError("polynomials over different variable lists")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            return self + MultiPoly.constant(self.variables, other)
        self._check_same(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return MultiPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            return self - MultiPoly.constant(self.variables, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if not other:
                return MultiPoly.zero(self.variables)
            return MultiPoly(
                self.variables, {m: c * other for m, c in self.terms.items()}
            )
        self._check_same(other)
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return MultiPoly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = MultiPoly.constant(self.variables, 1)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def evaluate(self, values: Sequence):
        """Full substitution; values align with the variable list."""
        total = 0
        for m, c in self.terms.items():
            term = c
            for i, e in enumerate(m):
                for _ in range(e):
                    term = term * values[i]
            total = total + term
        return total

    def diff(self, i: int) -> "MultiPoly":
        """Partial derivative with respect to variable i."""
        terms: dict = {}
        for m, c in self.terms.items():
            if m[i]:
                lowered = list(m)
                lowered[i] -= 1
                lowered = tuple(lowered)
                terms[lowered] = terms.get(lowered, 0) + c * m[i]
        return MultiPoly(self.variables, terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def max_exponent(self) -> int:
        if not self.terms:
            return 0
        return max(max(m) for m in self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        order = TermOrder.lex(len(self.variables))
        parts = []
        for m in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[m]
            factors = [
                v if e == 1 else "%s^%d" % (v, e)
                for v, e in zip(self.variables, m)
                if e
            ]
            negative = not isinstance(c, Fp) and c < 0
            mag = -c if negative else c
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append("-" + body if negative else body)
            else:
                parts.append(("-" if negative else "+") + body)
        return "".join(parts)

    def __repr__(self):
        return "MultiPoly(%s)" % self


def poly_lead_term(p: MultiPoly, order: TermOrder):
    """Largest monomial of p under order, with its coefficient."""
    if not p.terms:
        raise ZeroPolynomial("zero polynomial has no lead term")
    m = max(p.terms, key=order.key)
    return m, p.terms[m]


def _exact_div(a, b):
    # keeps Bareiss pivoting inside the integers when entries started there
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact integer division in elimination")
        return q
    return a / b


class Matrix:
    """Immutable rectangular grid of exact scalars (or MultiPoly entries)."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Iterable[Sequence], ncols: int | None = None):
        self.rows = tuple(tuple(r) for r in rows)
        if self.rows:
            widths = {len(r) for r in self.rows}
            if len(widths) != 1:
                raise ValueError("ragged rows")
            self.ncols = widths.pop()
            if ncols is not None and ncols != self.ncols:
                raise ValueError("ncols disagrees with row length")
        else:
            if ncols is None:
                raise ValueError("empty matrix needs an explicit ncols")
            self.ncols = ncols

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows and self.ncols == other.ncols

    def __hash__(self):
        return hash((self.rows, self.ncols))

    def transpose(self) -> "Matrix":
        return Matrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
        )

    def column_submatrix(self, cols: Sequence[int]) -> "Matrix":
        return Matrix([[row[j] for j in cols] for row in self.rows], ncols=len(cols))

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        ot = other.transpose()
        return Matrix(
            [
                [sum(a * b for a, b in zip(row, col)) for col in ot.rows]
                for row in self.rows
            ],
            ncols=other.ncols,
        )

    def apply(self, vec: Sequence) -> list:
        if len(vec) != self.ncols:
            raise ValueError("length mismatch")
        return [sum(a * b for a, b in zip(row, vec)) for row in self.rows]

    def __repr__(self):
        return "Matrix(%r)" % (list(self.rows),)


def _rref(m: Matrix):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    rows = [list(r) for r in m.rows]
    pivots = []
    lead = 0
    for j in range(m.ncols):
        pivot_row = None
        for i in range(lead, len(rows)):
            if rows[i][j]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[lead], rows[pivot_row] = rows[pivot_row], rows[lead]
        pv = rows[lead][j]
        rows[lead] = [_promote_div(x, pv) for x in rows[lead]]
        for i in range(len(rows)):
            if i != lead and rows[i][j]:
                factor = rows[i][j]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[lead])]
        pivots.append(j)
        lead += 1
        if lead == len(rows):
            break
    return rows, pivots


def _promote_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def matrix_rank(m: Matrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    _, pivots = _rref(m)
    return len(pivots)


def det(m: Matrix):
    """Exact determinant; Bareiss for scalars, minor expansion for polynomials."""
    if m.nrows != m.ncols:
        raise NonSquare("determinant of a %dx%d matrix" % (m.nrows, m.ncols))
    if m.nrows == 0:
        return 1
    if any(isinstance(x, MultiPoly) for row in m.rows for x in row):
        return _det_poly(m)
    return _det_bareiss(m)


def _det_bareiss(m: Matrix):
    n = m.nrows
    a = [list(row) for row in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0 * a[0][0] if isinstance(a[0][0], Fp) else 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = _exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _det_poly(m: Matrix) -> MultiPoly:
    variables = next(
        x.variables for row in m.rows for x in row if isinstance(x, MultiPoly)
    )

    def lift(x):
        return x if isinstance(x, MultiPoly) else MultiPoly.constant(variables, x)

    rows = [[lift(x) for x in row] for row in m.rows]
    n = m.nrows
    memo: dict = {}

    def rec(i: int, colmask: int) -> MultiPoly:
        if i == n:
            return MultiPoly.constant(variables, 1)
        key = colmask
        cached = memo.get(key)
        if cached is not None:
            return cached
        total = MultiPoly.zero(variables)
        sign = 1
        for j in range(n):
            bit = 1 << j
            if not colmask & bit:
                continue
            entry = rows[i][j]
            if entry:
                sub = rec(i + 1, colmask & ~bit)
                total = total + entry * sub * sign
            sign = -sign
        memo[key] = total
        return total

    # column masks determine the row index (i = n - popcount), so one key works
    return rec(0, (1 << n) - 1)


def _clear_row(row: Sequence[Fraction]) -> list:
    """Scale a rational row to coprime integers, first nonzero entry positive."""
    denominators = [
        x.denominator for x in row if isinstance(x, Fraction)
    ]
    scale = 1
    for d in denominators:
        scale = scale * d // gcd(scale, d)
    ints = [int(x * scale) for x in row]
    content = 0
    for x in ints:
        content = gcd(content, x)
    if content > 1:
        ints = [x // content for x in ints]
    leading = next((x for x in ints if x), 0)
    if leading < 0:
        ints = [-x for x in ints]
    return ints


def kernel_basis(m: Matrix) -> Matrix:
    """Rows form a basis of the right kernel of m.

    Over the rationals the rows come back integer-cleared and content-free.
    """
    rows, pivots = _rref(m)
    free = [j for j in range(m.ncols) if j not in pivots]
    basis = []
    rational = not any(isinstance(x, Fp) for row in m.rows for x in row)
    for j in free:
        v = [0] * m.ncols
        v[j] = 1
        for i, pj in enumerate(pivots):
            v[pj] = -rows[i][j]
        if rational:
            v = _clear_row(v)
        basis.append(v)
    return Matrix(basis, ncols=m.ncols)


def solve_exact(m: Matrix, rhs: Sequence):
    """One exact solution x of m x = rhs, or None when inconsistent.

    Free variables are set to zero, so the answer is unique exactly when
    the columns are independent.
    """
    augmented = Matrix(
        [list(row) + [b] for row, b in zip(m.rows, rhs)], ncols=m.ncols + 1
    )
    rows, pivots = _rref(augmented)
    if m.ncols in pivots:
        return None
    x = [0] * m.ncols
    for i, pj in enumerate(pivots):
        x[pj] = rows[i][m.ncols]
    return x
