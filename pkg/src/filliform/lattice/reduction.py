"""Exact LLL reduction of a positive-definite Gram matrix.

Used as preprocessing for enumeration; the reduced basis keeps the search
trees of Fincke-Pohst small.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

DELTA = Fraction(99, 100)


def _gso_rows(gram, mu, b, start):
    n = len(gram)
    for i in range(start, n):
        for j in range(i):
            s = Q(gram[i][j])
            for k in range(j):
                s -= mu[i][k] * mu[j][k] * b[k]
            mu[i][j] = s / b[j]
        s = Q(gram[i][i])
        for k in range(i):
            s -= mu[i][k] * mu[i][k] * b[k]
        if s <= 0:
            raise ValueError("Gram matrix is not positive definite")
        b[i] = s


def lll_gram(gram, delta: Fraction = DELTA):
    """Return ``(reduced, basis)`` with ``reduced = basis^T gram basis``.

    ``gram`` must be positive definite (int or Fraction entries).  ``basis``
    holds the new basis vectors as *columns* in the old coordinates and is
    unimodular.
    """
    n = len(gram)
    g = [list(row) for row in gram]
    rows = [[int(i == j) for j in range(n)] for i in range(n)]  # new basis vectors as rows
    if n == 0:
        return [], []
    mu = [[Q(0)] * n for _ in range(n)]
    b = [Q(0)] * n
    delta = Q(delta)
    _gso_rows(g, mu, b, 0)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = int(round(mu[k][j]))
            if not q:
                continue
            rows[k] = [x - q * y for x, y in zip(rows[k], rows[j])]
            gkk = g[k][k] - 2 * q * g[k][j] + q * q * g[j][j]
            new = [g[k][i] - q * g[j][i] for i in range(n)]
            new[k] = gkk
            g[k] = new
            for i in range(n):
                g[i][k] = new[i]
            for l in range(j):
                mu[k][l] -= q * mu[j][l]
            mu[k][j] -= q
        if b[k] >= (delta - mu[k][k - 1] ** 2) * b[k - 1]:
            k += 1
            continue
        rows[k - 1], rows[k] = rows[k], rows[k - 1]
        g[k - 1], g[k] = g[k], g[k - 1]
        for row in g:
            row[k - 1], row[k] = row[k], row[k - 1]
        _gso_rows(g, mu, b, k - 1)
        k = max(k - 1, 1)
    basis = [[rows[j][i] for j in range(n)] for i in range(n)]
    return g, basis
