"""Exact Fincke-Pohst enumeration of lattice points in an ellipsoid.

Everything is rational: the quadratic form is written as
``Q(x) = sum_i d_i (x_i + sum_{j>i} m_ij x_j)^2`` and the per-coordinate
ranges are derived without square roots.  The inner loops use gmpy2's
rationals when available (roughly ten times faster than ``Fraction``);
public results are always ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor, isqrt

from .. import linalg
from ..errors import DomainError
from .reduction import Q as _Q
from .reduction import lll_gram


class QuadraticForm:
    """Positive-definite rational quadratic form, prepared for enumeration."""

    def __init__(self, gram):
        n = len(gram)
        q = [[_Q(x) for x in row] for row in gram]
        for i in range(n):
            if q[i][i] <= 0:
                raise DomainError("not-definite", "quadratic form is not positive definite")
            for j in range(i + 1, n):
                q[j][i] = q[i][j]
                q[i][j] = q[i][j] / q[i][i]
            for k in range(i + 1, n):
                for l in range(k, n):
                    q[k][l] -= q[k][i] * q[i][l]
        self.n = n
        self.diag = [q[i][i] for i in range(n)]
        self.coef = [[q[i][j] for j in range(i + 1, n)] for i in range(n)]


def _int_range(d, c, budget):
    """Integers ``x`` with ``d (x - c)^2 <= budget``."""
    s = budget / d
    r = isqrt(int(floor(s))) + 1
    fc = int(floor(c))
    lo = fc - r
    hi = fc + r + 1
    while lo <= hi and d * (lo - c) ** 2 > budget:
        lo += 1
    while hi >= lo and d * (hi - c) ** 2 > budget:
        hi -= 1
    return lo, hi


def points_within(qf: QuadraticForm, bound, center=None, half=False):
    """List ``(x, Q(x - center))`` for integer ``x`` with ``Q(x - center) <= bound``.

    ``bound`` may be a one-element list that ``visit`` shrinks while the
    search runs (see :func:`search`).  With ``half=True`` (centre must be
    zero) only one of ``x, -x`` is produced and ``x = 0`` is skipped.
    """
    out = []
    search(qf, bound, lambda x, v: out.append((x, v)), center, half)
    return out


def search(qf: QuadraticForm, bound, visit, center=None, half=False):
    """Call ``visit(x, value)`` for every point of the ellipsoid.

    The bound (a one-element list, or a number) is re-read at every node.
    """
    n = qf.n
    box = bound if isinstance(bound, list) else [_Q(bound)]
    t = [_Q(0)] * n if center is None else [_Q(c) for c in center]
    if half and any(t):
        raise ValueError("half-space enumeration needs a zero centre")
    if n == 0:
        if not half:
            visit((), _Q(0))
        return
    x = [0] * n
    diag, coef = qf.diag, qf.coef

    def rec(i, used, all_zero):
        c = t[i]
        row = coef[i]
        for off in range(len(row)):
            j = i + 1 + off
            c -= row[off] * (x[j] - t[j])
        budget = box[0] - used
        if budget < 0:
            return
        d = diag[i]
        lo, hi = _int_range(d, c, budget)
        if half and all_zero:
            lo = max(lo, 0)
        if i == 0:
            for v in range(lo, hi + 1):
                part = used + d * (v - c) ** 2
                if part <= box[0] and not (half and all_zero and v == 0):
                    x[0] = v
                    visit(tuple(x), part)
            x[0] = 0
            return
        for v in range(lo, hi + 1):
            part = used + d * (v - c) ** 2
            if part <= box[0]:
                x[i] = v
                rec(i - 1, part, all_zero and v == 0)
        x[i] = 0

    rec(n - 1, _Q(0), True)


class ReducedForm:
    """A positive-definite form together with an LLL-reduced basis.

    Enumeration runs in reduced coordinates and results are mapped back.
    """

    def __init__(self, gram):
        self.n = len(gram)
        reduced, basis = lll_gram(gram)
        self.basis = basis
        self.columns = [list(col) for col in zip(*basis)] if self.n else []
        self.inverse = linalg.unimodular_inverse(basis) if self.n else []
        self.qf = QuadraticForm(reduced)

    def to_original(self, z):
        out = [0] * self.n
        for j, a in enumerate(z):
            if a:
                for i, b in enumerate(self.columns[j]):
                    out[i] += a * b
        return tuple(out)

    def to_reduced(self, y):
        return [sum(self.inverse[i][j] * y[j] for j in range(self.n)) for i in range(self.n)]


def _canonical_sign(v):
    for a in v:
        if a:
            return v if a > 0 else tuple(-b for b in v)
    return v


def positive_short_vectors(gram, bound) -> dict[int, list[tuple[int, ...]]]:
    """All ``v != 0`` with ``v^T gram v <= bound`` for a positive-definite integer Gram.

    One representative per ``+-`` pair (first nonzero coordinate positive),
    grouped by norm in increasing order, each group sorted lexicographically.
    """
    red = ReducedForm(gram)
    groups: dict[int, list[tuple[int, ...]]] = {}
    for z, val in points_within(red.qf, bound, half=True):
        v = _canonical_sign(red.to_original(z))
        groups.setdefault(int(val), []).append(v)
    return {k: sorted(groups[k]) for k in sorted(groups)}


def closest_points(gram, target, bound=None):
    """Minimum of ``Q(y - target)`` over integer ``y`` and all minimisers.

    ``gram`` is positive definite (rational allowed).  Without ``bound`` the
    search radius starts at the value of the rounded target.
    """
    red = ReducedForm(gram)
    n = red.n
    tz = [_Q(0)] * n
    if n:
        inv = red.inverse
        tz = [sum(inv[i][j] * _Q(target[j]) for j in range(n)) for i in range(n)]
    if bound is None:
        guess = [int(floor(c + _Q(1, 2))) for c in tz]
        bound = _value(red.qf, guess, tz)
    box = [_Q(bound)]
    best: list[tuple[int, ...]] = []

    def visit(z, val):
        if val < box[0]:
            box[0] = val
            best.clear()
        best.append(z)

    search(red.qf, box, visit, center=tz)
    return to_fraction(box[0]), [red.to_original(z) for z in best]


def to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def _value(qf: QuadraticForm, x, t):
    total = _Q(0)
    for i in range(qf.n):
        c = _Q(x[i]) - t[i]
        for off, m in enumerate(qf.coef[i]):
            j = i + 1 + off
            c += m * (x[j] - t[j])
        total += qf.diag[i] * c * c
    return total
