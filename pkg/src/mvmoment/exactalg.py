"""Exact integer and rational linear algebra.

Everything here works on plain Python ``int`` and :class:`fractions.Fraction`
values, so intermediate growth is never a correctness problem.  Matrices are
sequences of rows; functions that must cope with zero-row matrices take an
explicit ``ncols``.

:class:`ExtScalar` holds a real number as a rational combination of declared
symbols.  Index 0 is always the unit ``1``.  The library *assumes* the declared
symbols are linearly independent over the rationals; that is a promise made by
whoever authored the data and it is never checked (it cannot be).
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping, NamedTuple, Sequence

Vector = tuple
IntRows = Sequence[Sequence[int]]
RatRows = Sequence[Sequence]


class ExactAlgebraError(ValueError):
    pass


class UndeclaredSymbolError(ExactAlgebraError):
    pass


class NotADirectSummandError(ExactAlgebraError):
    pass


# ---------------------------------------------------------------------------
# small helpers


def _ncols(m: Sequence[Sequence], ncols: int | None) -> int:
    if ncols is not None:
        if any(len(row) != ncols for row in m):
            raise ExactAlgebraError("row length does not match ncols")
        return ncols
    if not m:
        raise ExactAlgebraError("ncols is required for a matrix with no rows")
    width = len(m[0])
    if any(len(row) != width for row in m):
        raise ExactAlgebraError("ragged matrix")
    return width


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    c = _ncols(m, ncols)
    return [[row[j] for row in m] for j in range(c)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], inner: int | None = None) -> list[list]:
    """Product of two row-major matrices.  ``inner`` is needed only when ``b`` has no rows."""
    if b:
        width = len(b[0])
    elif inner is not None:
        width = inner
    else:
        width = 0
    return [[sum((row[k] * b[k][j] for k in range(len(b))), 0) for j in range(width)] for row in a]


def dot(u: Sequence, v: Sequence):
    return sum((x * y for x, y in zip(u, v, strict=True)), 0)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to the coprime integer vector on the same ray."""
    fr = [Fraction(x) for x in v]
    den = reduce(lcm, (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def primitive_line(v: Sequence) -> tuple[int, ...]:
    """Like :func:`primitive` but also fixes the sign (first nonzero entry positive)."""
    p = primitive(v)
    for x in p:
        if x:
            return p if x > 0 else tuple(-y for y in p)
    return p


# ---------------------------------------------------------------------------
# rational elimination


def rref(m: RatRows, ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns the nonzero rows and pivot columns.

    Pivot search is deterministic: the first row (top to bottom) with a nonzero
    entry in the current column.
    """
    c = _ncols(m, ncols)
    a = [[Fraction(x) for x in row] for row in m]
    pivots: list[int] = []
    r = 0
    for j in range(c):
        p = next((i for i in range(r, len(a)) if a[i][j] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][j]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][j] != 0:
                f = a[i][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(j)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(m: RatRows, ncols: int | None = None) -> int:
    if not m:
        return 0
    return len(rref(m, ncols)[1])


def rational_kernel(m: RatRows, ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : m x = 0}`` in reduced echelon form (first nonzero entry 1)."""
    c = _ncols(m, ncols)
    red, pivots = rref(m, c) if m else ([], [])
    free = [j for j in range(c) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * c
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    if not basis:
        return []
    return [tuple(row) for row in rref(basis, c)[0]]


def determinant(m: RatRows) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    if any(len(row) != n for row in a):
        raise ExactAlgebraError("determinant of a non-square matrix")
    det = Fraction(1)
    for j in range(n):
        p = next((i for i in range(j, n) if a[i][j] != 0), None)
        if p is None:
            return Fraction(0)
        if p != j:
            a[j], a[p] = a[p], a[j]
            det = -det
        det *= a[j][j]
        for i in range(j + 1, n):
            f = a[i][j] / a[j][j]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[j])]
    return det


def inverse(m: RatRows) -> list[list[Fraction]]:
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ExactAlgebraError("singular matrix")
    return [row[n:] for row in red]


def solve(m: RatRows, b: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of ``m x = b`` (free variables set to 0), or None if inconsistent."""
    if not m:
        raise ExactAlgebraError("solve needs at least one equation")
    c = len(m[0])
    aug = [list(row) + [rhs] for row, rhs in zip(m, b, strict=True)]
    red, pivots = rref(aug, c + 1)
    if c in pivots:
        return None
    x = [Fraction(0)] * c
    for row, p in zip(red, pivots):
        x[p] = row[c]
    return tuple(x)


def project_out(v: Sequence, basis: Sequence[Sequence]) -> tuple[Fraction, ...]:
    """Orthogonal projection of ``v`` onto the complement of ``span(basis)``."""
    if not basis:
        return tuple(Fraction(x) for x in v)
    gram = [[dot(a, b) for b in basis] for a in basis]
    coeffs = solve(gram, [dot(a, v) for a in basis])
    assert coeffs is not None
    out = [Fraction(x) for x in v]
    for c, a in zip(coeffs, basis):
        if c:
            out = [x - c * y for x, y in zip(out, a)]
    return tuple(out)


# ---------------------------------------------------------------------------
# integer normal forms


class SmithForm(NamedTuple):
    u: list[list[int]]
    d: list[list[int]]
    v: list[list[int]]

    def divisors(self) -> list[int]:
        """Nonzero diagonal entries of ``d``, in order."""
        k = min(len(self.d), len(self.v))
        return [self.d[i][i] for i in range(k) if self.d[i][i] != 0]


def smith_normal_form(m: IntRows, ncols: int | None = None) -> SmithForm:
    """Unimodular ``u``, ``v`` with ``d = u m v`` diagonal, ``d1 | d2 | ...``, ``di >= 0``.

    Pivot choice: smallest nonzero absolute value in the remaining block, ties
    broken by (row, column).  Signs are pushed into ``u``.
    """
    r = len(m)
    c = _ncols(m, ncols)
    a = [[int(x) for x in row] for row in m]
    u = identity(r)
    v = identity(c)

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    x = abs(a[i][j])
                    if x and (best is None or x < best[0]):
                        best = (x, i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = a[t][t]
            clean = True
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        if best is None:
            break
    return SmithForm(u, a, v)


def hermite_normal_form(m: IntRows, ncols: int | None = None) -> list[tuple[int, ...]]:
    """Row-style Hermite normal form; zero rows are dropped.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)``.  The
    result is a canonical basis of the lattice spanned by the rows.
    """
    c = _ncols(m, ncols)
    a = [[int(x) for x in row] for row in m]
    r = 0
    for j in range(c):
        rows = [i for i in range(r, len(a)) if a[i][j]]
        if not rows:
            continue
        while True:
            rows = [i for i in range(r, len(a)) if a[i][j]]
            k = min(rows, key=lambda i: (abs(a[i][j]), i))
            a[r], a[k] = a[k], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][j]:
                    q = a[i][j] // a[r][j]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    done = done and a[i][j] == 0
            if done:
                break
        if a[r][j] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][j] // a[r][j]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return [tuple(row) for row in a[:r]]


def is_primitive(rows: IntRows, n: int) -> bool:
    """True iff ``rows`` are independent and extend to a basis of Z^n."""
    if not rows:
        return True
    snf = smith_normal_form(rows, n)
    divs = snf.divisors()
    return len(divs) == len(rows) and all(x == 1 for x in divs)


def integer_kernel(m: RatRows, ncols: int | None = None) -> list[tuple[int, ...]]:
    """Hermite basis of the lattice ``{x in Z^n : m x = 0}``."""
    c = _ncols(m, ncols)
    ints = []
    for row in m:
        fr = [Fraction(x) for x in row]
        den = reduce(lcm, (x.denominator for x in fr), 1)
        ints.append([int(x * den) for x in fr])
    if not ints:
        return [tuple(row) for row in identity(c)]
    snf = smith_normal_form(ints, c)
    k = len(snf.divisors())
    cols = [tuple(snf.v[i][j] for i in range(c)) for j in range(k, c)]
    if not cols:
        return []
    return hermite_normal_form(cols, c)


def hermite_complement(sub: IntRows, n: int) -> list[tuple[int, ...]]:
    """Rows completing the primitive rows ``sub`` to a basis of Z^n.

    Standard basis vectors are tried in lexicographically increasing order
    (e_n first) and kept whenever the enlarged set stays primitive; the kept
    ones are returned in standard order.  If unit vectors cannot finish the job, the remainder comes from the Smith form of
    the enlarged set, brought to Hermite form.
    """
    sub = [tuple(int(x) for x in row) for row in sub]
    if any(len(row) != n for row in sub):
        raise ExactAlgebraError("sublattice rows have the wrong length")
    if not is_primitive(sub, n):
        raise NotADirectSummandError("not a direct summand")
    chosen: list[tuple[int, ...]] = []
    for i in reversed(range(n)):
        if len(sub) + len(chosen) == n:
            break
        e = tuple(int(j == i) for j in range(n))
        if is_primitive(sub + chosen + [e], n):
            chosen.append(e)
    chosen.sort(reverse=True)
    missing = n - len(sub) - len(chosen)
    if missing:
        base = sub + chosen
        snf = smith_normal_form(base, n)
        vinv = inverse(snf.v)
        extra = [tuple(int(x) for x in vinv[k]) for k in range(len(base), n)]
        chosen.extend(hermite_normal_form(extra, n))
    return chosen


# ---------------------------------------------------------------------------
# extended scalars


class ExtScalar:
    """An immutable rational combination of declared symbols.

    ``ExtScalar({0: Fraction(1, 2), 1: 3})`` stands for ``1/2 + 3*s1``.
    """

    __slots__ = ("_terms",)

    def __init__(self, coefficients: Mapping[int, object] | Iterable[tuple[int, object]] = ()):
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        acc: dict[int, Fraction] = {}
        for idx, coef in items:
            idx = int(idx)
            if idx < 0:
                raise ExactAlgebraError("symbol index must be nonnegative")
            acc[idx] = acc.get(idx, Fraction(0)) + Fraction(coef)
        self._terms = tuple(sorted((k, v) for k, v in acc.items() if v != 0))

    @classmethod
    def rational(cls, value) -> ExtScalar:
        return cls({0: value})

    @property
    def terms(self) -> tuple[tuple[int, Fraction], ...]:
        return self._terms

    def coefficient(self, index: int) -> Fraction:
        for k, v in self._terms:
            if k == index:
                return v
        return Fraction(0)

    def max_index(self) -> int:
        return self._terms[-1][0] if self._terms else 0

    def expand(self, n_symbols: int) -> list[Fraction]:
        if self._terms and self._terms[-1][0] >= n_symbols:
            raise UndeclaredSymbolError(f"symbol index {self._terms[-1][0]} is not declared")
        out = [Fraction(0)] * n_symbols
        for k, v in self._terms:
            out[k] = v
        return out

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other):
        if not isinstance(other, ExtScalar):
            other = ExtScalar.rational(other)
        return ExtScalar(list(self._terms) + list(other._terms))

    __radd__ = __add__

    def __neg__(self):
        return ExtScalar((k, -v) for k, v in self._terms)

    def __sub__(self, other):
        return self + (-other if isinstance(other, ExtScalar) else ExtScalar.rational(-Fraction(other)))

    def __mul__(self, scalar):
        if isinstance(scalar, ExtScalar):
            return NotImplemented
        s = Fraction(scalar)
        return ExtScalar((k, v * s) for k, v in self._terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, ExtScalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ExtScalar.rational(other)._terms
        return NotImplemented

    def __hash__(self):
        return hash(self._terms)

    def __repr__(self):
        return f"ExtScalar({dict(self._terms)!r})"


def ext_linear_combination(coeffs: Sequence, values: Sequence[ExtScalar]) -> ExtScalar:
    acc = ExtScalar()
    for c, x in zip(coeffs, values, strict=True):
        if c:
            acc = acc + x * c
    return acc


def ext_expand_columns(m: Sequence[Sequence[ExtScalar]], n_symbols: int, ncols: int | None = None) -> list[list[Fraction]]:
    """Replace every entry by a vertical block of its symbol coefficients.

    Row ``i`` of ``m`` becomes ``n_symbols`` rational rows, one per symbol, so a
    rational vector ``x`` satisfies ``m x = 0`` iff the expanded matrix kills it.
    """
    c = _ncols(m, ncols)
    out = []
    for row in m:
        blocks = [x.expand(n_symbols) for x in row]
        for s in range(n_symbols):
            out.append([blocks[j][s] for j in range(c)])
    return out


def ext_rank(m: Sequence[Sequence[ExtScalar]], n_symbols: int, ncols: int | None = None) -> int:
    """Dimension of the Q-span of the columns of ``m`` (vectors in R^rows).

    For a single row this is the dimension of the Q-span of its entries.
    """
    c = _ncols(m, ncols)
    expanded = ext_expand_columns(m, n_symbols, c)
    return rank(expanded, c) if expanded else 0


# ---------------------------------------------------------------------------
# rank with symbols treated as indeterminates

_Poly = dict  # monomial (sorted tuple of symbol indices, unit omitted) -> Fraction


def _poly_of(x: ExtScalar) -> _Poly:
    return {(() if k == 0 else (k,)): v for k, v in x.terms}


def _poly_mul(p: _Poly, q: _Poly) -> _Poly:
    out: _Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            mono = tuple(sorted(m1 + m2))
            out[mono] = out.get(mono, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _poly_add(p: _Poly, q: _Poly, sign: int = 1) -> _Poly:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


def _poly_det(m: list[list[_Poly]]) -> _Poly:
    n = len(m)
    if n == 0:
        return {(): Fraction(1)}
    if n == 1:
        return m[0][0]
    acc: _Poly = {}
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = _poly_mul(m[0][j], _poly_det(minor))
        acc = _poly_add(acc, term, 1 if j % 2 == 0 else -1)
    return acc


def generic_rank(m: Sequence[Sequence[ExtScalar]], ncols: int | None = None) -> int:
    """Rank over Q(s1, s2, ...) with the symbols taken as independent indeterminates.

    This is the real rank whenever the symbol values satisfy no polynomial
    relation; it never evaluates a symbol.
    """
    c = _ncols(m, ncols)
    polys = [[_poly_of(x) for x in row] for row in m]
    for k in range(min(len(polys), c), 0, -1):
        for rows in itertools.combinations(range(len(polys)), k):
            for cols in itertools.combinations(range(c), k):
                sub = [[polys[i][j] for j in cols] for i in rows]
                if _poly_det(sub):
                    return k
    return 0
