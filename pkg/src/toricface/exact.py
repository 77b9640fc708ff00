"""Exact integer and rational linear algebra.

Dense matrices over Z and Q, fraction-free (Bareiss) rank, Smith normal
form with unimodular transforms, bounded nonnegative integer solving, and
a few lattice helpers used by the polyhedral layer.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import CapExceeded, DimensionMismatch

# The coefficient field of the toolkit is the rationals; Fraction already
# enforces denominator > 0 and gcd(numerator, denominator) = 1.
Rational = Fraction


class IntMatrix:
    """Dense row-major integer matrix."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        entries = [int(e) for e in entries]
        if len(entries) != rows * cols:
            raise DimensionMismatch(
                f"expected {rows * cols} entries, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, row_list, cols=None):
        rows = len(row_list)
        if rows == 0:
            if cols is None:
                raise DimensionMismatch("empty matrix needs an explicit column count")
            return cls(0, cols, [])
        ncols = len(row_list[0]) if cols is None else cols
        flat = []
        for r in row_list:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
            flat.extend(r)
        return cls(rows, ncols, flat)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols, [0] * (rows * cols))

    def at(self, i, j):
        return self.entries[i * self.cols + j]

    def row(self, i):
        return tuple(self.entries[i * self.cols : (i + 1) * self.cols])

    def col(self, j):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_list(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self):
        return IntMatrix.from_rows(
            [list(self.col(j)) for j in range(self.cols)], cols=self.rows
        )

    def mul(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch("incompatible shapes")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum(ri[k] * other.at(k, j) for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, out)

    def mul_vector(self, v):
        if len(v) != self.cols:
            raise DimensionMismatch("vector length mismatch")
        return tuple(
            sum(self.at(i, k) * v[k] for k in range(self.cols))
            for i in range(self.rows)
        )

    def to_rational(self):
        return RatMatrix(self.rows, self.cols, [Fraction(e) for e in self.entries])

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.entries)))

    def __repr__(self):
        return f"IntMatrix({self.row_list()!r})"


class RatMatrix:
    """Dense row-major matrix over the rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        entries = [Fraction(e) for e in entries]
        if len(entries) != rows * cols:
            raise DimensionMismatch(
                f"expected {rows * cols} entries, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, row_list, cols=None):
        rows = len(row_list)
        if rows == 0:
            if cols is None:
                raise DimensionMismatch("empty matrix needs an explicit column count")
            return cls(0, cols, [])
        ncols = len(row_list[0]) if cols is None else cols
        flat = []
        for r in row_list:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
            flat.extend(r)
        return cls(rows, ncols, flat)

    def at(self, i, j):
        return self.entries[i * self.cols + j]

    def row(self, i):
        return tuple(self.entries[i * self.cols : (i + 1) * self.cols])

    def row_list(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self):
        return RatMatrix.from_rows(
            [[self.at(i, j) for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def __eq__(self, other):
        return (
            isinstance(other, RatMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"RatMatrix({self.row_list()!r})"


def _clear_denominators(rows):
    """Scale each row by the lcm of its denominators; returns integer rows."""
    out = []
    for r in rows:
        den = 1
        for e in r:
            f = Fraction(e)
            den = den * f.denominator // gcd(den, f.denominator)
        out.append([int(Fraction(e) * den) for e in r])
    return out


def _bareiss_rank(rows):
    mat = [list(r) for r in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    rank = 0
    prev = 1
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nrows):
            if mat[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        p = mat[row][col]
        top = mat[row]
        for r in range(row + 1, nrows):
            mr = mat[r]
            mrc = mr[col]
            for c in range(col + 1, ncols):
                mr[c] = (p * mr[c] - mrc * top[c]) // prev
            mr[col] = 0
        prev = p
        row += 1
        rank += 1
        if row == nrows:
            break
    return rank


def rank_over_field(m):
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    if isinstance(m, IntMatrix):
        rows = m.row_list()
    elif isinstance(m, RatMatrix):
        rows = _clear_denominators(m.row_list())
    else:
        rows = _clear_denominators([list(r) for r in m])
    return _bareiss_rank(rows)


def rank_mod_p(m, p):
    """Rank over GF(p); the optional prime-field backend for homology."""
    if isinstance(m, (IntMatrix, RatMatrix)):
        rows = m.row_list()
    else:
        rows = [list(r) for r in m]
    if not rows:
        return 0
    mat = []
    for r in rows:
        rr = []
        for e in r:
            f = Fraction(e)
            if f.denominator % p == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            rr.append(f.numerator * pow(f.denominator, -1, p) % p)
        mat.append(rr)
    nrows, ncols = len(mat), len(mat[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, nrows) if mat[r][col] % p != 0), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        inv = pow(mat[row][col], -1, p)
        mat[row] = [(x * inv) % p for x in mat[row]]
        for r in range(row + 1, nrows):
            if mat[r][col] % p != 0:
                f = mat[r][col]
                mat[r] = [(a - f * b) % p for a, b in zip(mat[r], mat[row])]
        row += 1
        rank += 1
        if row == nrows:
            break
    return rank


def det(m):
    """Determinant of a square IntMatrix, by Bareiss."""
    if m.rows != m.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    mat = m.row_list()
    prev = 1
    sign = 1
    for col in range(n - 1):
        piv = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            sign = -sign
        p = mat[col][col]
        for r in range(col + 1, n):
            mrc = mat[r][col]
            for c in range(col + 1, n):
                mat[r][c] = (p * mat[r][c] - mrc * mat[col][c]) // prev
            mat[r][col] = 0
        prev = p
    return sign * mat[n - 1][n - 1]


def smith_normal_form(m):
    """Smith normal form with transforms.

    Returns (U, D, V) with U*m*V = D, U and V unimodular over Z, and D
    diagonal with nonnegative entries satisfying d_i | d_{i+1}.
    """
    nr, nc = m.rows, m.cols
    A = m.row_list()
    U = IntMatrix.identity(nr).row_list()
    V = IntMatrix.identity(nc).row_list()
    limit = min(nr, nc)

    def col_combine(j1, j2, q):
        # col j2 -= q * col j1
        for r in range(nr):
            A[r][j2] -= q * A[r][j1]
        for r in range(nc):
            V[r][j2] -= q * V[r][j1]

    def swap_rows(i1, i2):
        A[i1], A[i2] = A[i2], A[i1]
        U[i1], U[i2] = U[i2], U[i1]

    def swap_cols(j1, j2):
        for r in range(nr):
            A[r][j1], A[r][j2] = A[r][j2], A[r][j1]
        for r in range(nc):
            V[r][j1], V[r][j2] = V[r][j2], V[r][j1]

    def diagonalize_from(t0):
        t = t0
        while t < limit:
            piv = None
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    a = A[i][j]
                    if a != 0 and (best is None or abs(a) < best):
                        best = abs(a)
                        piv = (i, j)
            if piv is None:
                return
            if piv[0] != t:
                swap_rows(t, piv[0])
            if piv[1] != t:
                swap_cols(t, piv[1])
            while True:
                for i in range(t + 1, nr):
                    if A[i][t] != 0:
                        q = A[i][t] // A[t][t]
                        A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                        U[i] = [a - q * b for a, b in zip(U[i], U[t])]
                        if A[i][t] != 0:
                            swap_rows(t, i)
                if any(A[i][t] != 0 for i in range(t + 1, nr)):
                    continue
                for j in range(t + 1, nc):
                    if A[t][j] != 0:
                        q = A[t][j] // A[t][t]
                        col_combine(t, j, q)
                        if A[t][j] != 0:
                            swap_cols(t, j)
                if any(A[i][t] != 0 for i in range(t + 1, nr)):
                    continue
                if any(A[t][j] != 0 for j in range(t + 1, nc)):
                    continue
                break
            if A[t][t] < 0:
                A[t] = [-a for a in A[t]]
                U[t] = [-a for a in U[t]]
            t += 1

    diagonalize_from(0)
    # enforce the divisibility chain d_i | d_{i+1}
    i = 0
    while i < limit - 1:
        a, b = A[i][i], A[i + 1][i + 1]
        if a != 0 and b % a != 0:
            col_combine(i + 1, i, -1)  # fold column i+1 into column i
            diagonalize_from(i)
            i = 0
        else:
            i += 1

    D = IntMatrix.from_rows(A, cols=nc)
    return IntMatrix.from_rows(U, cols=nr), D, IntMatrix.from_rows(V, cols=nc)


def elementary_divisors(m):
    """Nonzero diagonal entries of the Smith normal form."""
    _, d, _ = smith_normal_form(m)
    return [d.at(i, i) for i in range(min(d.rows, d.cols)) if d.at(i, i) != 0]


def kernel_basis(m):
    """Z-basis of the integer kernel {x : m*x = 0}, as a list of vectors."""
    _, d, v = smith_normal_form(m)
    ker_cols = [
        j for j in range(m.cols) if j >= min(m.rows, m.cols) or d.at(j, j) == 0
    ]
    return [v.col(j) for j in ker_cols]


def invert_unimodular(m):
    """Inverse of a unimodular integer matrix."""
    n = m.rows
    if m.cols != n:
        raise DimensionMismatch("not square")
    mat = [
        [Fraction(e) for e in m.row(i)]
        + [Fraction(1 if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        piv = next(r for r in range(col, n) if mat[r][col] != 0)
        mat[col], mat[piv] = mat[piv], mat[col]
        inv = 1 / mat[col][col]
        mat[col] = [x * inv for x in mat[col]]
        for r in range(n):
            if r != col and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
    out = []
    for r in range(n):
        for c in range(n):
            e = mat[r][n + c]
            if e.denominator != 1:
                raise ValueError("matrix is not unimodular")
            out.append(int(e))
    return IntMatrix(n, n, out)


def row_lattice_basis(rows, ambient_dim):
    """Z-basis of the lattice generated by the given integer row vectors."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    m = IntMatrix.from_rows(rows, cols=ambient_dim)
    _, d, v = smith_normal_form(m)
    # row lattice of m = row lattice of U*m = rows of D*V^{-1}
    dm = d.mul(invert_unimodular(v))
    return [list(dm.row(i)) for i in range(dm.rows) if any(dm.row(i))]


def solve_rational(a_rows, b, ncols):
    """One rational solution x of A x = b, or None if inconsistent.

    ``a_rows`` is a list of rows; free variables are set to 0.
    """
    nrows = len(a_rows)
    mat = [
        [Fraction(e) for e in row] + [Fraction(b[i])] for i, row in enumerate(a_rows)
    ]
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, nrows) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        inv = 1 / mat[row][col]
        mat[row] = [x * inv for x in mat[row]]
        for r in range(nrows):
            if r != row and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    for r in range(row, nrows):
        if mat[r][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        x[col] = mat[r][ncols]
    return tuple(x)


def vector_gcd(v):
    g = 0
    for e in v:
        g = gcd(g, abs(int(e)))
    return g


def primitive(v):
    """v divided by the gcd of its entries (the zero vector stays zero)."""
    g = vector_gcd(v)
    if g == 0:
        return tuple(int(e) for e in v)
    return tuple(int(e) // g for e in v)


def solve_nonneg(a, b, cap):
    """All x in N^cols with a*x = b and sum(x) <= cap, by bounded backtracking.

    Raises CapExceeded when a branch had to be cut at the cap while solutions
    with a larger coordinate sum may still exist; the solutions found so far
    ride on the exception.
    """
    if cap <= 0:
        raise ValueError("cap must be positive")
    if isinstance(a, IntMatrix):
        nr, nc = a.rows, a.cols
        cols = [a.col(j) for j in range(nc)]
    else:
        rows = [list(r) for r in a]
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        cols = [tuple(rows[i][j] for i in range(nr)) for j in range(nc)]
    b = tuple(int(e) for e in b)
    if len(b) != nr:
        raise DimensionMismatch("rhs length mismatch")

    # rows that bound x_j from above: positive in column j and nonnegative in
    # every later column
    bound_rows = []
    for j in range(nc):
        bound_rows.append(
            [
                i
                for i in range(nr)
                if cols[j][i] > 0 and all(cols[k][i] >= 0 for k in range(j + 1, nc))
            ]
        )

    sols = []
    cut = [False]

    def dead(residual, j):
        # the branch cannot reach 0 with columns j.. regardless of multiplicity
        for i in range(nr):
            ri = residual[i]
            if ri > 0 and all(cols[k][i] <= 0 for k in range(j, nc)):
                return True
            if ri < 0 and all(cols[k][i] >= 0 for k in range(j, nc)):
                return True
        return False

    def rec(j, residual, budget, prefix):
        if j == nc:
            if not any(residual):
                sols.append(tuple(prefix))
            return
        if dead(residual, j):
            return
        ub = None
        for i in bound_rows[j]:
            if residual[i] < 0:
                return
            q = residual[i] // cols[j][i]
            ub = q if ub is None else min(ub, q)
        capped = ub is None or ub > budget
        lim = budget if capped else ub
        col = cols[j]
        res = list(residual)
        for v in range(lim + 1):
            prefix.append(v)
            rec(j + 1, tuple(res), budget - v, prefix)
            prefix.pop()
            for i in range(nr):
                res[i] -= col[i]
        if capped and not dead(tuple(res), j):
            cut[0] = True

    rec(0, b, cap, [])
    if cut[0]:
        raise CapExceeded(f"enumeration cut at coordinate-sum cap {cap}", found=sols)
    return set(sols)
