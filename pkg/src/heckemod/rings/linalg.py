"""Dense exact linear algebra over a field, plus a fraction-free determinant.

Matrices are lists of rows.  Every routine that needs field constants takes a
field object exposing ``zero``, ``one`` and ``__call__(int)``; the element
types themselves only need the usual arithmetic operators.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .laurent import LaurentPoly


class Rationals:
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        return Fraction(x)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


QQ = Rationals()


class RationalFunctionField:
    """The field Q(v); elements are :class:`RatFunc`."""

    def __init__(self):
        from .ratfunc import RatFunc

        self._cls = RatFunc
        self.zero = RatFunc(())
        self.one = RatFunc((1,))

    def __call__(self, x):
        if isinstance(x, self._cls):
            return x
        if isinstance(x, LaurentPoly):
            return self._cls.from_laurent(x)
        return self._cls((x,))

    def __repr__(self):
        return "Q(v)"

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField)

    def __hash__(self):
        return hash("Q(v)")


_QV = None


def rational_function_field() -> RationalFunctionField:
    global _QV
    if _QV is None:
        _QV = RationalFunctionField()
    return _QV


class DimensionMismatch(ValueError):
    pass


class SingularMatrix(ArithmeticError):
    pass


# -- basic shape helpers ------------------------------------------------------


def zeros(rows: int, cols: int, F) -> list[list]:
    return [[F.zero] * cols for _ in range(rows)]


def identity(n: int, F) -> list[list]:
    M = zeros(n, n, F)
    for i in range(n):
        M[i][i] = F.one
    return M


def transpose(M):
    if not M:
        return []
    return [list(col) for col in zip(*M)]


def matmul(A, B):
    if not A or not B:
        return []
    if len(A[0]) != len(B):
        raise DimensionMismatch(f"cannot multiply {len(A)}x{len(A[0])} by {len(B)}x{len(B[0])}")
    Bt = transpose(B)
    out = []
    for row in A:
        nz = [(k, a) for k, a in enumerate(row) if a]
        out_row = []
        for col in Bt:
            acc = None
            for k, a in nz:
                b = col[k]
                if b:
                    acc = a * b if acc is None else acc + a * b
            out_row.append(acc if acc is not None else row[0] * 0)
        out.append(out_row)
    return out


def matvec(A, x):
    if A and len(A[0]) != len(x):
        raise DimensionMismatch("matrix/vector size mismatch")
    out = []
    for row in A:
        acc = None
        for a, b in zip(row, x):
            if a and b:
                acc = a * b if acc is None else acc + a * b
        out.append(acc if acc is not None else x[0] * 0)
    return out


def madd(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def msub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mscale(A, c):
    return [[a * c for a in row] for row in A]


def is_zero_matrix(M) -> bool:
    return all(not a for row in M for a in row)


def map_matrix(M, fn):
    return [[fn(a) for a in row] for row in M]


# -- echelon forms ------------------------------------------------------------


def rref(M, F):
    """Reduced row echelon form and pivot columns.

    Pivoting is deterministic: scan columns left to right and take the first
    row (from the top of the unreduced part) with a nonzero entry.
    """
    A = [[F(a) if not _is_elem(a, F) else a for a in row] for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = F.one / A[r][c]
        A[r] = [a * inv for a in A[r]]
        pivot_row = A[r]
        for i in range(rows):
            if i != r:
                f = A[i][c]
                if f:
                    A[i] = [a - f * b if b else a for a, b in zip(A[i], pivot_row)]
        pivots.append(c)
        r += 1
    return A, pivots


def _is_elem(a, F) -> bool:
    if isinstance(F, Rationals):
        return isinstance(a, Fraction)
    return not isinstance(a, (int, Fraction, LaurentPoly))


def rank(M, F) -> int:
    return len(rref(M, F)[1])


def rank_and_kernel(M, F):
    """``(rank, kernel_basis)`` with the kernel basis read off the RREF.

    Each basis vector has a 1 in one free column and zeros in the other free
    columns, so the basis is itself in reduced echelon form.
    """
    if not M:
        return 0, []
    cols = len(M[0])
    R, pivots = rref(M, F)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = [F.zero] * cols
        vec[f] = F.one
        for i, pc in enumerate(pivots):
            vec[pc] = -R[i][f]
        basis.append(vec)
    return len(pivots), basis


def kernel(M, F):
    return rank_and_kernel(M, F)[1]


def left_kernel(M, F):
    return kernel(transpose(M), F)


def solve(A, b, F):
    """One solution ``x`` of ``A x = b`` or :class:`SingularMatrix` if none exists."""
    n = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, F)
    if n in pivots:
        raise SingularMatrix("inconsistent linear system")
    x = [F.zero] * n
    for i, pc in enumerate(pivots):
        x[pc] = R[i][n]
    return x


def inverse(M, F):
    n = len(M)
    if any(len(row) != n for row in M):
        raise DimensionMismatch("inverse of a non-square matrix")
    aug = [list(row) + identity_row for row, identity_row in zip(M, identity(n, F))]
    R, pivots = rref(aug, F)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrix("matrix is not invertible")
    return [row[n:] for row in R]


def det(M, F):
    """Determinant over a field by Gaussian elimination."""
    n = len(M)
    if n == 0:
        return F.one
    A = [[F(a) if not _is_elem(a, F) else a for a in row] for row in M]
    d = F.one
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return F.zero
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        piv = A[c][c]
        d = d * piv
        inv = F.one / piv
        for i in range(c + 1, n):
            f = A[i][c]
            if f:
                f = f * inv
                A[i] = [a - f * b if b else a for a, b in zip(A[i], A[c])]
    return d


def charpoly(M, F):
    """Characteristic polynomial ``det(x - M)`` as a coefficient list, low degree first.

    Uses reduction to upper Hessenberg form followed by the usual recurrence.
    """
    n = len(M)
    H = [[F(a) if not _is_elem(a, F) else a for a in row] for row in M]
    for m in range(1, n - 1):
        p = next((i for i in range(m, n) if H[i][m - 1]), None)
        if p is None:
            continue
        if p != m:
            H[m], H[p] = H[p], H[m]
            for row in H:
                row[m], row[p] = row[p], row[m]
        inv = F.one / H[m][m - 1]
        for i in range(m + 1, n):
            t = H[i][m - 1] * inv
            if t:
                H[i] = [a - t * b for a, b in zip(H[i], H[m])]
                for row in H:
                    row[m] = row[m] + t * row[i]
    from . import upoly

    polys = [[F.one]]
    for k in range(1, n + 1):
        # p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_{ik} * prod_{j=i+1}^{k} h_{j,j-1} * p_{i-1}
        pk = upoly.mul([-H[k - 1][k - 1], F.one], polys[k - 1])
        prod = F.one
        for i in range(k - 1, 0, -1):
            prod = prod * H[i][i - 1]
            if not prod:
                break
            c = H[i - 1][k - 1] * prod
            if c:
                pk = upoly.sub(pk, upoly.scale(polys[i - 1], c))
        polys.append(pk)
    return _pad(polys[n], n + 1, F)


def _pad(p, length, F):
    p = list(p)
    return p + [F.zero] * (length - len(p))


def poly_of_matrix(coeffs, M, F):
    """Evaluate the polynomial with the given coefficients at the square matrix ``M``."""
    n = len(M)
    out = zeros(n, n, F)
    for c in reversed(coeffs):
        out = matmul(out, M) if not is_zero_matrix(out) else out
        if c:
            for i in range(n):
                out[i][i] = out[i][i] + c
    return out


def span_basis(vectors, F):
    """Echelon basis of the span of the given row vectors."""
    if not vectors:
        return []
    R, pivots = rref(vectors, F)
    return R[: len(pivots)]


# -- fraction-free determinant over Z[v, v^-1] --------------------------------


def det_fraction_free(M: Sequence[Sequence]) -> LaurentPoly:
    """Exact determinant of a square matrix of Laurent polynomials.

    Each row is first shifted into Z[v]; Bareiss elimination then keeps every
    intermediate entry a polynomial, and exact divisions replace fractions.
    """
    n = len(M)
    if n == 0:
        return LaurentPoly.const(1)
    A = [[x if isinstance(x, LaurentPoly) else LaurentPoly.const(x) for x in row] for row in M]
    if any(len(row) != n for row in A):
        raise DimensionMismatch("determinant of a non-square matrix")
    total_shift = 0
    for i, row in enumerate(A):
        lows = [x.low for x in row if x]
        if not lows:
            return LaurentPoly()
        s = -min(lows)
        A[i] = [x.shift(s) for x in row]
        total_shift += s
    sign = 1
    prev = LaurentPoly.const(1)
    for k in range(n - 1):
        if not A[k][k]:
            p = next((i for i in range(k + 1, n) if A[i][k]), None)
            if p is None:
                return LaurentPoly()
            A[k], A[p] = A[p], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            for j in range(k + 1, n):
                num = akk * A[i][j] - aik * A[k][j]
                A[i][j] = num.exact_div(prev) if num else num
            A[i][k] = LaurentPoly()
        prev = akk
    d = A[n - 1][n - 1]
    if sign < 0:
        d = -d
    return d.shift(-total_shift)


class EchelonBasis:
    """Incrementally grown echelon basis; ``add`` reports whether the rank went up."""

    def __init__(self, F):
        self.F = F
        self.rows: list[tuple[int, list]] = []  # (pivot column, row with 1 at pivot)

    def reduce(self, vec):
        vec = list(vec)
        for col, row in self.rows:
            c = vec[col]
            if c:
                vec = [a - c * b if b else a for a, b in zip(vec, row)]
        return vec

    def add(self, vec) -> bool:
        vec = self.reduce(vec)
        col = next((i for i, a in enumerate(vec) if a), None)
        if col is None:
            return False
        inv = self.F.one / vec[col]
        self.rows.append((col, [a * inv for a in vec]))
        return True

    def __len__(self):
        return len(self.rows)


def sparse_kernel(equations, ncols: int, F, pivot_key=None):
    """Kernel of a sparse system given as dicts ``{column: coefficient}``.

    Equations are absorbed one at a time into a fully reduced pivot set.
    ``pivot_key(coefficient)`` ranks candidate pivots (smallest wins, ties by
    column); by default the first nonzero column is used.
    """
    pivots: dict[int, dict] = {}
    for eq in equations:
        row = {c: (a if _is_elem(a, F) else F(a)) for c, a in eq.items() if a}
        for col in [c for c in row if c in pivots]:
            f = row.get(col)
            if not f:
                continue
            for c, b in pivots[col].items():
                nv = row.get(c, F.zero) - f * b
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        if not row:
            continue
        if pivot_key is None:
            col = min(row)
        else:
            col = min(row, key=lambda c: (pivot_key(row[c]), c))
        inv = F.one / row[col]
        row = {c: a * inv for c, a in row.items()}
        for pc, prow in pivots.items():
            f = prow.get(col)
            if f:
                for c, b in row.items():
                    nv = prow.get(c, F.zero) - f * b
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        pivots[col] = row
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [F.zero] * ncols
        vec[f] = F.one
        for pc, prow in pivots.items():
            a = prow.get(f)
            if a:
                vec[pc] = -a
        basis.append(vec)
    return len(pivots), basis
