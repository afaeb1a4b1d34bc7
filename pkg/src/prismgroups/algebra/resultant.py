"""Sylvester resultants and fraction-free determinants."""

from .mpoly import MPoly


class ResultantError(ValueError):
    pass


def sylvester_matrix(p, q, var):
    """Sylvester matrix of p and q viewed as polynomials in ``var``."""
    if p.vars != q.vars:
        raise ResultantError("polynomials must share a variable list")
    m, n = p.degree(var), q.degree(var)
    if m <= 0 or n <= 0:
        raise ResultantError("not univariate in elimination variable")
    pc = p.coeffs_in(var)[::-1]
    qc = q.coeffs_in(var)[::-1]
    zero = MPoly(p.vars, {})
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + pc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + qc + [zero] * (size - n - 1 - i))
    return rows


def det_minor_expansion(M):
    """Laplace expansion along the first row; intended for small matrices."""
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = None
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * det_minor_expansion(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return M[0][0] * 0
    return total


def det_bareiss(M):
    """Fraction-free Gaussian elimination; every division is exact."""
    n = len(M)
    A = [list(row) for row in M]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not A[k][k]:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return A[0][0] * 0
        pivot = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                v = row_i[j] * pivot - aik * row_k[j]
                if prev is not None:
                    v = v.exact_div(prev) if isinstance(v, MPoly) else v / prev
                row_i[j] = v
            row_i[k] = pivot * 0
        prev = pivot
    d = A[n - 1][n - 1]
    return -d if sign < 0 else d


def determinant(M):
    if len(M) <= 4:
        return det_minor_expansion(M)
    return det_bareiss(M)


def resultant(p, q, var):
    """Resultant of p and q with respect to ``var``, as an exact MPoly."""
    return determinant(sylvester_matrix(p, q, var))
