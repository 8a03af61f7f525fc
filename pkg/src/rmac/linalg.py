"""Exact integer linear algebra on dense ``list[list[int]]`` matrices.

Everything uses Python integers, so there is no overflow and no floating point.
The matrices met in practice (block differentials) are small, so a plain
row/column reduction is fast enough.
"""

from __future__ import annotations

from dataclasses import dataclass

Matrix = list[list[int]]


@dataclass(frozen=True)
class IntMatrix:
    """Sparse integer matrix given by ``(row, col, value)`` triples."""

    rows: int
    cols: int
    entries: tuple[tuple[int, int, int], ...] = ()

    def dense(self) -> Matrix:
        out = zeros(self.rows, self.cols)
        for r, c, v in self.entries:
            out[r][c] += v
        return out

    @classmethod
    def from_dense(cls, a: Matrix, cols: int | None = None) -> "IntMatrix":
        ncols = cols if cols is not None else (len(a[0]) if a else 0)
        triples = tuple((r, c, v) for r, row in enumerate(a) for c, v in enumerate(row) if v)
        return cls(len(a), ncols, triples)


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = 1
    return out


def matmul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    """``a @ b``; ``inner`` is needed only when ``a`` has no rows to infer it from."""
    n = inner if inner is not None else (len(a[0]) if a else len(b))
    cols = len(b[0]) if b else 0
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        acc = out[i]
        for k in range(n):
            x = row[k]
            if x:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        acc[j] += x * bk[j]
    return out


def matvec(a: Matrix, x: list[int]) -> list[int]:
    return [sum(r * v for r, v in zip(row, x) if r) for row in a]


def transpose(a: Matrix, cols: int | None = None) -> Matrix:
    ncols = cols if cols is not None else (len(a[0]) if a else 0)
    return [[a[i][j] for i in range(len(a))] for j in range(ncols)]


def determinant(a: Matrix) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SNFResult:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form.

    The inverses of ``U`` and ``V`` are tracked alongside, since cohomology
    needs both directions of each change of basis.
    """

    D: Matrix
    U: Matrix
    V: Matrix
    U_inv: Matrix
    V_inv: Matrix
    rank: int

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(self.D[i][i] for i in range(self.rank))


def smith_normal_form(a: Matrix, cols: int | None = None) -> SNFResult:
    """Smith normal form by pivoting on the entry of least absolute value.

    ``cols`` gives the column count when ``a`` has no rows. The result is
    deterministic for a given input; diagonal entries are positive and each
    divides the next.
    """
    m = len(a)
    n = cols if cols is not None else (len(a[0]) if a else 0)
    D = [row[:] for row in a]
    U, U_inv = identity(m), identity(m)
    V, V_inv = identity(n), identity(n)

    def swap_rows(i: int, j: int) -> None:
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in U_inv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i: int, j: int) -> None:
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        V_inv[i], V_inv[j] = V_inv[j], V_inv[i]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        for M in (D, U):
            rd, rs = M[dst], M[src]
            for k, x in enumerate(rs):
                if x:
                    rd[k] += q * x
        for row in U_inv:
            if row[dst]:
                row[src] -= q * row[dst]

    def add_col(dst: int, src: int, q: int) -> None:
        # col_dst += q * col_src
        for M in (D, V):
            for row in M:
                if row[src]:
                    row[dst] += q * row[src]
        v_src, v_dst = V_inv[src], V_inv[dst]
        for k, x in enumerate(v_dst):
            if x:
                v_src[k] -= q * x

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            Di = D[i]
            for j in range(t, n):
                x = Di[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)

        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    dirty = dirty or D[t][j] != 0
            if dirty:
                # a remainder smaller than the pivot appeared; move it in
                best = (abs(p), t, t)
                for i in range(t + 1, m):
                    if D[i][t] and abs(D[i][t]) < best[0]:
                        best = (abs(D[i][t]), i, t)
                for j in range(t + 1, n):
                    if D[t][j] and abs(D[t][j]) < best[0]:
                        best = (abs(D[t][j]), t, j)
                _, i, j = best
                if i != t:
                    swap_rows(t, i)
                if j != t:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)

        if D[t][t] < 0:
            for M in (D, U):
                M[t] = [-x for x in M[t]]
            for row in U_inv:
                row[t] = -row[t]
        t += 1

    return SNFResult(D, U, V, U_inv, V_inv, t)


def kernel_basis(a: Matrix, cols: int | None = None) -> list[list[int]]:
    """A basis of the integer kernel of ``a`` (as column vectors)."""
    n = cols if cols is not None else (len(a[0]) if a else 0)
    snf = smith_normal_form(a, n)
    return [[snf.V[i][j] for i in range(n)] for j in range(snf.rank, n)]


def unimodular_inverse(a: Matrix) -> Matrix:
    """Exact inverse of a square integer matrix with determinant ``+-1``."""
    n = len(a)
    snf = smith_normal_form(a, n)
    if snf.rank != n or any(snf.D[i][i] != 1 for i in range(n)):
        raise ValueError("matrix is not invertible over the integers")
    # U A V = 1  =>  A^{-1} = V U
    return matmul(snf.V, snf.U, n)
