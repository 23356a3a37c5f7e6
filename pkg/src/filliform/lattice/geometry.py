"""Constructions inside an ambient form: isotropic quotients, genus, unit splitting."""

from __future__ import annotations

from math import gcd

from .. import linalg
from ..errors import DomainError
from .forms import Form, require_negative_definite, standard_form
from .shadow import vectors_of_norm


def orthogonal_complement(f: Form, vectors) -> list[list[int]]:
    """Basis (as vectors) of the sublattice orthogonal to ``vectors``."""
    rows = [linalg.matvec(f.gram, v) for v in vectors]
    return linalg.integer_kernel(rows, f.rank)


def complement_quotient(amb: Form, x) -> Form:
    """The form induced on ``x^perp / Z x`` for a primitive isotropic ``x``."""
    n = amb.rank
    x = [int(a) for a in x]
    if len(x) != n:
        raise DomainError("shape", "class must have one coordinate per basis vector")
    g = 0
    for a in x:
        g = gcd(g, a)
    if g != 1:
        raise DomainError("not-primitive", f"class is divisible by {g}" if g else "class is zero")
    if amb.norm(x) != 0:
        raise DomainError("not-isotropic", f"class has square {amb.norm(x)}, expected 0")
    perp = orthogonal_complement(amb, [x])  # n - 1 vectors, x among their span
    cols = linalg.transpose(perp, n)
    coords = linalg.solve_rational(cols, x)
    coords = [int(c) for c in coords]
    ext = linalg.extend_to_basis([coords], len(perp))
    rest = [[sum(ext[r][j] * perp[r][i] for r in range(len(perp))) for i in range(n)]
            for j in range(1, len(perp))]
    return amb.restrict(rest)


def adjunction_genus(amb: Form, c) -> int:
    """Genus forced by adjunction for a class in ``lorentz(k)`` (basis ``h, e1..ek``)."""
    k = amb.rank - 1
    if k < 0 or amb != standard_form("lorentz", k):
        raise DomainError("not-lorentz", "ambient form must be diag(+1, -1, ..., -1)")
    if len(c) != amb.rank:
        raise DomainError("shape", "class must have k + 1 coordinates")
    k_dot_c = -3 * c[0] - sum(c[1:])
    twice = k_dot_c + amb.norm(c) + 2
    if twice % 2 or twice < 0:
        raise DomainError("invalid-class", f"adjunction gives genus {twice}/2")
    return twice // 2


def minimal_part(f: Form) -> tuple[int, Form]:
    """Split off ``<-1>^m`` and return ``(m, rest)`` with no norm -1 vectors in ``rest``."""
    require_negative_definite(f, "minimal_part")
    m = 0
    while f.rank:
        units = vectors_of_norm(f, -1)
        if not units:
            break
        m += 1
        f = f.restrict(orthogonal_complement(f, [units[0]]))
    return m, f
