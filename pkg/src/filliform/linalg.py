"""Exact integer and rational linear algebra.

Matrices are plain row-major lists of lists of Python ints (or Fractions
where stated).  Nothing in here touches floating point.  A matrix with zero
rows carries no column count, so functions that need one take ``ncols``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DomainError, InconsistencyError

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> IntMatrix:
    return [[0] * n for _ in range(m)]


def shape(a, ncols: int | None = None) -> tuple[int, int]:
    m = len(a)
    n = len(a[0]) if m else (ncols or 0)
    for row in a:
        if len(row) != n:
            raise DomainError("shape", "ragged matrix")
    return m, n


def transpose(a, ncols: int | None = None):
    m, n = shape(a, ncols)
    return [[a[i][j] for i in range(m)] for j in range(n)]


def matmul(a, b, inner: int | None = None):
    """Product ``a @ b``; ``inner`` resolves the column count of an empty ``b``."""
    m = len(a)
    k = len(b) if b else (inner or 0)
    n = len(b[0]) if b else 0
    if m and len(a[0]) != k:
        raise DomainError("shape", f"cannot multiply {m}x{len(a[0])} by {k}x{n}")
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, x):
    return [sum(p * q for p, q in zip(row, x)) for row in a]


def dot(x, y):
    return sum(p * q for p, q in zip(x, y))


def bilinear(gram, x, y):
    """``x^T gram y``."""
    return sum(xi * sum(g * yj for g, yj in zip(row, y)) for xi, row in zip(x, gram) if xi)


def congruent(gram, basis_cols):
    """Gram matrix of the vectors given as columns of ``basis_cols`` (n x k)."""
    cols = transpose(basis_cols, 0) if basis_cols else []
    return [[bilinear(gram, u, v) for v in cols] for u in cols]


def gram_of_vectors(gram, vectors):
    """Gram matrix of a list of coordinate vectors."""
    gv = [matvec(gram, v) for v in vectors]
    return [[dot(u, w) for w in gv] for u in vectors]


def is_symmetric(a) -> bool:
    return all(a[i][j] == a[j][i] for i in range(len(a)) for j in range(i))


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfResult:
    """``u @ a @ v == diag(d)`` with ``u``, ``v`` unimodular."""

    d: tuple[int, ...]
    u: IntMatrix
    v: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for x in self.d if x)


def smith_normal_form(a, ncols: int | None = None) -> SnfResult:
    m, n = shape(a, ncols)
    D = [list(map(int, row)) for row in a]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        for M in (D, U):
            rs, rd = M[src], M[dst]
            for k in range(len(rd)):
                if rs[k]:
                    rd[k] += q * rs[k]

    def add_col(src, dst, q):
        for M in (D, V):
            for row in M:
                if row[src]:
                    row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = D[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // p))
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // p))
                    dirty = dirty or D[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    d = tuple(D[i][i] for i in range(min(m, n)))
    return SnfResult(d=d, u=U, v=V)


def cokernel(a, nrows: int | None = None, ncols: int | None = None) -> tuple[int, list[int]]:
    """Structure of ``Z^rows / image(a)`` as ``(free_rank, torsion factors > 1)``."""
    m = len(a) if a else (nrows or 0)
    if not a:
        return m, []
    res = smith_normal_form(a, ncols)
    nonzero = [x for x in res.d if x]
    return m - len(nonzero), [x for x in nonzero if x > 1]


def element_order(a, vec, ncols: int | None = None):
    """Order of the class of ``vec`` in ``coker(a)``; ``None`` means infinite."""
    if not a:
        return 1 if not any(vec) else None
    res = smith_normal_form(a, ncols)
    w = matvec(res.u, vec)
    order = 1
    for i, wi in enumerate(w):
        di = res.d[i] if i < len(res.d) else 0
        if di == 0:
            if wi:
                return None
            continue
        k = di // gcd(di, wi)
        order = order * k // gcd(order, k)
    return order


def integer_kernel(a, ncols: int | None = None) -> list[list[int]]:
    """A basis (list of vectors) of ``{x in Z^n : a x = 0}``.

    The kernel of an integer matrix is saturated, so the basis extends to a
    basis of ``Z^n``.
    """
    m, n = shape(a, ncols)
    if m == 0:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    res = smith_normal_form(a, n)
    r = res.rank
    return [[res.v[i][j] for i in range(n)] for j in range(r, n)]


def span_basis(vectors, n: int) -> list[list[int]]:
    """A basis of the Z-span of integer ``vectors`` in ``Z^n``."""
    vectors = [list(v) for v in vectors if any(v)]
    if not vectors:
        return []
    res = smith_normal_form(vectors, n)
    vinv = unimodular_inverse(res.v)
    return [[res.d[i] * x for x in vinv[i]] for i in range(len(res.d)) if res.d[i]]


def is_primitive_set(vectors, n: int) -> bool:
    if not vectors:
        return True
    res = smith_normal_form([list(v) for v in vectors], n)
    return res.rank == len(vectors) and all(x == 1 for x in res.d)


def extend_to_basis(vectors, n: int) -> IntMatrix:
    """Unimodular ``n x n`` matrix whose first columns are ``vectors``.

    ``vectors`` must form a primitive set (all Smith factors equal to 1).
    """
    k = len(vectors)
    if k == 0:
        return identity(n)
    cols = [list(v) for v in vectors]
    M = transpose(cols)  # n x k
    res = smith_normal_form(M, k)
    if res.rank != k or any(x != 1 for x in res.d):
        raise DomainError("not-primitive", "vectors do not extend to a basis")
    W = unimodular_inverse(res.u)
    out = [row[:] for row in W]
    for i in range(n):
        for j in range(k):
            out[i][j] = cols[j][i]
    return out


# ---------------------------------------------------------------------------
# Determinants, inverses, solving


def determinant(a) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise DomainError("shape", "determinant of a non-square matrix")
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rational_inverse(a) -> list[list[Fraction]]:
    n = len(a)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            raise DomainError("singular", "matrix is singular")
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def unimodular_inverse(a) -> IntMatrix:
    inv = rational_inverse(a)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise InconsistencyError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def rank(a, ncols: int | None = None) -> int:
    if not a:
        return 0
    return smith_normal_form(a, ncols).rank


def solve_rational(a, b, ncols: int | None = None):
    """Some rational ``x`` with ``a x = b``, or ``None`` if ``b`` is not in the column span."""
    m, n = shape(a, ncols)
    if len(b) != m:
        raise DomainError("shape", "right-hand side has the wrong length")
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(a, b)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        M[r] = [x / piv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    if any(M[i][n] for i in range(r, m)):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = M[i][n]
    return x


def rational_kernel(a, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the kernel over Q."""
    m, n = shape(a, ncols)
    M = [[Fraction(x) for x in row] for row in a]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        M[r] = [x / piv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * n
        v[fcol] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -M[i][fcol]
        basis.append(v)
    return basis


def signature(a) -> tuple[int, int, int]:
    """``(n_plus, n_minus, n_zero)`` of a symmetric integer matrix.

    Congruence diagonalization over Q; a 2x2 hyperbolic block is split off
    whenever every remaining diagonal entry is zero.
    """
    if not is_symmetric(a) or any(len(row) != len(a) for row in a):
        raise DomainError("not-symmetric", "signature needs a symmetric matrix")
    M = [[Fraction(x) for x in row] for row in a]
    pos = neg = 0
    while M:
        n = len(M)
        i = next((k for k in range(n) if M[k][k]), None)
        if i is not None:
            p = M[i][i]
            if p > 0:
                pos += 1
            else:
                neg += 1
            rest = [k for k in range(n) if k != i]
            M = [[M[r][c] - M[r][i] * M[i][c] / p for c in rest] for r in rest]
            continue
        pair = next(((r, c) for r in range(n) for c in range(r + 1, n) if M[r][c]), None)
        if pair is None:
            return pos, neg, n
        r0, c0 = pair
        # [[0, b], [b, 0]] has one positive and one negative eigenvalue.
        pos += 1
        neg += 1
        b = M[r0][c0]
        rest = [k for k in range(n) if k not in pair]
        # Schur complement: M_rest - B^T P^{-1} B with P^{-1} = [[0, 1/b], [1/b, 0]].
        M = [
            [M[r][c] - (M[r][r0] * M[c0][c] + M[r][c0] * M[r0][c]) / b for c in rest]
            for r in rest
        ]
    return pos, neg, 0
