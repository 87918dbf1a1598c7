"""Smith normal form of integer matrices with unimodular transforms."""

from dataclasses import dataclass


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        return cls(len(rows), cols, tuple(int(v) for r in rows for v in r))

    @classmethod
    def identity(cls, n):
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def to_rows(self):
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        a, b = self.to_rows(), other.to_rows()
        out = [[sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
               for i in range(self.rows)]
        return IntMatrix.from_rows(out, other.cols)

    def diagonal(self):
        return [self[i, i] for i in range(min(self.rows, self.cols))]


@dataclass(frozen=True)
class SmithDecomposition:
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix


def _as_intmatrix(A):
    return A if isinstance(A, IntMatrix) else IntMatrix.from_rows(A)


def smith_normal_form(A):
    """Return U, S, V with U*A*V = S, S diagonal, s_1 | s_2 | ..., s_i >= 0.

    Pivot: smallest nonzero absolute value in the active block, ties broken
    by lowest row, then lowest column.
    """
    A = _as_intmatrix(A)
    m, n = A.rows, A.cols
    S = A.to_rows()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k * row src
        if k:
            S[dst] = [a + k * b for a, b in zip(S[dst], S[src])]
            U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, k):  # col dst += k * col src
        if k:
            for row in S:
                row[dst] += k * row[src]
            for row in V:
                row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = abs(S[i][j])
                    if v and (best is None or v < best[0]):
                        best = (v, i, j)
            if best is None:
                break
            _, pi, pj = best
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = S[t][t]
            done = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(t, i, -(S[i][t] // p))
                    if S[i][t]:
                        done = False
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(t, j, -(S[t][j] // p))
                    if S[t][j]:
                        done = False
            if not done:
                continue
            # pivot must divide the remaining block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if S[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
    return SmithDecomposition(
        IntMatrix.from_rows(U, m), IntMatrix.from_rows(S, n), IntMatrix.from_rows(V, n)
    )


def invariant_factors(A):
    """Diagonal of the Smith form, length min(rows, cols)."""
    return smith_normal_form(A).S.diagonal()


def int_det(rows):
    """Exact integer determinant by Bareiss elimination."""
    M = [list(r) for r in rows]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]
