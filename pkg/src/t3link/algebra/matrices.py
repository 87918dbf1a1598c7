"""Determinants and minors of matrices over LaurentPoly, plus invariant
factors over the principal ideal domain K[t, 1/t]."""

from itertools import combinations

from .laurent import LaurentPoly, uni_divmod, uni_trim
from .cyclotomic import Cyclo


def _zero_like(M):
    return LaurentPoly.zero(M[0][0].vars, M[0][0].d)


def determinant(M):
    """Exact determinant of a square matrix of LaurentPoly.

    Fraction-free Bareiss elimination with row pivoting; 1x1 and 2x2 are
    expanded directly.
    """
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix has no ring to take a determinant in")
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    A = [list(r) for r in M]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not A[k][k]:
            # prefer a unit pivot, then any nonzero one
            cands = [i for i in range(k + 1, n) if A[i][k]]
            if not cands:
                return _zero_like(M)
            units = [i for i in cands if A[i][k].is_unit()]
            i = (units or cands)[0]
            A[k], A[i] = A[i], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = v if prev is None else v.exact_div(prev)
            A[i][k] = _zero_like(M)
        prev = A[k][k]
    return A[n - 1][n - 1] if sign > 0 else -A[n - 1][n - 1]


def size_k_minors(M, k):
    """All k x k minors, rows and columns chosen in lexicographic order."""
    m = len(M)
    n = len(M[0]) if m else 0
    if k < 1 or k > min(m, n):
        raise ValueError(f"minor size {k} out of range for a {m}x{n} matrix")
    out = []
    for rows in combinations(range(m), k):
        sub_rows = [M[i] for i in rows]
        for cols in combinations(range(n), k):
            out.append(determinant([[r[j] for j in cols] for r in sub_rows]))
    return out


# ---------------------------------------------------------------------------
# univariate Smith form

def _to_list(p):
    """Polynomial in one variable (nonnegative exponents) -> coefficient list."""
    hi = max(e[0] for e in p.terms)
    zero = Cyclo.zero(p.d)
    out = [zero] * (hi + 1)
    for e, c in p.terms.items():
        out[e[0]] = c
    return out


def _from_list(coeffs, vars, d):
    return LaurentPoly(vars, d, {(i,): c for i, c in enumerate(coeffs) if c})


def _sub_mul(a, q, b):
    """a - q*b on coefficient lists."""
    out = list(a)
    need = len(q) + len(b) - 1
    if len(out) < need:
        out.extend([q[0] - q[0]] * (need - len(out)))
    for i, qi in enumerate(q):
        if qi:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = out[i + j] - qi * bj
    return uni_trim(out)


def univariate_invariant_factors(M):
    """Invariant factors of a matrix over K[t, 1/t] (one variable), monic.

    Each row is first moved into K[t] by dividing out its lowest power of
    t (a unit), then reduced by Euclidean row and column operations.
    Returns the list of nonzero invariant factors, each dividing the next.
    """
    if not M or not M[0]:
        return []
    vars, d = M[0][0].vars, M[0][0].d
    if len(vars) != 1:
        raise ValueError("univariate Smith form needs exactly one variable")
    m, n = len(M), len(M[0])
    A = []
    for row in M:
        # scaling a row by a power of t is a unit operation
        lo = min((min(e[0] for e in x.terms) for x in row if x), default=0)
        A.append([_to_list(x.shift((-lo,))) if x else [] for x in row])
    factors = []
    t = 0
    while t < min(m, n):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or len(A[i][j]) < best[0]):
                        best = (len(A[i][j]), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                return factors
            _, pi, pj = best
            A[t], A[pi] = A[pi], A[t]
            for row in A:
                row[t], row[pj] = row[pj], row[t]
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q, r = uni_divmod(A[i][t], p)
                    A[i] = [_sub_mul(A[i][j], q, A[t][j]) if j > t else A[i][j]
                            for j in range(n)]
                    A[i][t] = r
                    if r:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q, r = uni_divmod(A[t][j], p)
                    for i in range(t + 1, m):
                        if A[i][t]:
                            A[i][j] = _sub_mul(A[i][j], q, A[i][t])
                    A[t][j] = r
                    if r:
                        clean = False
            if not clean:
                continue
            bad = None
            if len(p) > 1:
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if A[i][j] and uni_divmod(A[i][j], p)[1]:
                            bad = i
                            break
                    if bad is not None:
                        break
            if bad is None:
                break
            A[t] = [_sub_mul(a, [-Cyclo.one(d)], b) for a, b in zip(A[t], A[bad])]
        p = A[t][t]
        inv = p[-1].inverse()
        factors.append(_from_list([c * inv for c in p], vars, d))
        t += 1
    return factors


def univariate_minor_gcd(M, k):
    """gcd of the k x k minors over K[t, 1/t] via invariant factors (monic)."""
    m = len(M)
    n = len(M[0]) if m else 0
    if k < 1 or k > min(m, n):
        raise ValueError(f"minor size {k} out of range for a {m}x{n} matrix")
    vars, d = M[0][0].vars, M[0][0].d
    factors = univariate_invariant_factors(M)
    if len(factors) < k:
        return LaurentPoly.zero(vars, d)
    out = LaurentPoly.const(vars, 1, d)
    for f in factors[:k]:
        out = out * f
    return out
