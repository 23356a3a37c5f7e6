"""Homology of integral surgery on framed knots, from linking matrices.

A closed 3-manifold ``Y`` is presented as surgery on a framed link in the
3-sphere (linking matrix ``L``).  A further framed knot ``K`` in ``Y`` is
recorded by its linking numbers ``ell`` with the link components and its
framing ``f``; surgery on it gives the extended matrix ``[[L, ell], [ell^T, f]]``.

Slopes on the boundary torus of the knot exterior are pairs ``(p, q)``
meaning ``p * meridian + q * longitude``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import linalg
from .errors import DomainError, InconsistencyError


@dataclass(frozen=True)
class FramedLink:
    matrix: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = field(default=())

    def __init__(self, matrix, names=None):
        rows = tuple(tuple(int(x) for x in r) for r in matrix)
        m = len(rows)
        if any(len(r) != m for r in rows):
            raise DomainError("shape", "linking matrix must be square")
        if not linalg.is_symmetric(rows):
            raise DomainError("not-symmetric", "linking matrix must be symmetric")
        names = tuple(names) if names is not None else tuple(f"L{i + 1}" for i in range(m))
        if len(names) != m:
            raise DomainError("shape", "need one name per link component")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "names", names)

    @property
    def size(self) -> int:
        return len(self.matrix)


@dataclass(frozen=True)
class SurgeryManifold:
    b1: int
    torsion_factors: tuple[int, ...]

    @property
    def torsion_order(self) -> int:
        out = 1
        for d in self.torsion_factors:
            out *= d
        return out


@dataclass(frozen=True)
class KnotInPresentation:
    link: FramedLink
    ell: tuple[int, ...]
    framing: int

    def __init__(self, link, ell, framing):
        ell = tuple(int(x) for x in ell)
        if len(ell) != link.size:
            raise DomainError("shape", "ell needs one linking number per link component")
        object.__setattr__(self, "link", link)
        object.__setattr__(self, "ell", ell)
        object.__setattr__(self, "framing", int(framing))


@dataclass(frozen=True)
class SlopeData:
    d: int
    lambda0: tuple[int, int]
    mu_dot_lambda0: int


@dataclass(frozen=True)
class CobordismHomology:
    case: int
    b2_plus: int
    b2_minus: int
    b2_zero: int


def homology(link: FramedLink) -> SurgeryManifold:
    free, factors = linalg.cokernel(link.matrix, link.size, link.size)
    return SurgeryManifold(free, tuple(factors))


def extended_link(k: KnotInPresentation) -> FramedLink:
    """The link presenting the surgered manifold ``Y_lambda``."""
    rows = [list(r) + [k.ell[i]] for i, r in enumerate(k.link.matrix)]
    rows.append(list(k.ell) + [k.framing])
    name = "K"
    while name in k.link.names:
        name += "'"
    return FramedLink(rows, k.link.names + (name,))


def surgered(k: KnotInPresentation) -> SurgeryManifold:
    return homology(extended_link(k))


def knot_order(k: KnotInPresentation) -> int | None:
    """Order of ``[K]`` in ``H_1(Y)``; ``None`` means infinite order."""
    if k.link.size == 0:
        return 1
    return linalg.element_order(k.link.matrix, k.ell, k.link.size)


def _exterior_relations(k: KnotInPresentation):
    """Relation rows of ``H_1`` of the knot exterior on generators (link meridians, knot meridian)."""
    return [list(r) + [k.ell[i]] for i, r in enumerate(k.link.matrix)]


def exterior_b1(k: KnotInPresentation) -> int:
    m = k.link.size
    rel = _exterior_relations(k)
    if not rel:
        return 1
    free, _ = linalg.cokernel(linalg.transpose(rel, m + 1), m + 1, m)
    return free


def zero_slope(k: KnotInPresentation) -> SlopeData:
    """The slope ``lambda_0`` whose multiples die in the exterior's first homology.

    The kernel of ``Z^2 -> H_1(exterior)`` has rank one and is generated by
    ``d * (p, q)`` with ``(p, q)`` primitive; we normalise ``q >= 0`` and
    ``p > 0`` when ``q = 0``.  ``mu_dot_lambda0`` is then ``q``.
    """
    m = k.link.size
    # columns: image of mu, image of lambda, minus each relation (as a column)
    img_mu = [0] * m + [1]
    img_lam = list(k.ell) + [k.framing]
    rel = _exterior_relations(k)
    cols = [img_mu, img_lam] + [[-x for x in r] for r in rel]
    a = linalg.transpose(cols, m + 1)  # (m+1) x (m+2)
    ker = linalg.integer_kernel(a, m + 2)
    gens = [v[:2] for v in ker if v[0] or v[1]]
    span = linalg.span_basis(gens, 2) if gens else []
    if len(span) != 1:
        raise InconsistencyError(f"slope kernel has rank {len(span)}, expected 1")
    a0, b0 = span[0]
    d = gcd(a0, b0)
    p, q = a0 // d, b0 // d
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return SlopeData(d, (p, q), q)


def classify(k: KnotInPresentation) -> int:
    """1: the meridian is the zero slope; 2: the framing is; 3: neither.

    Cross-checked against the first Betti numbers of ``Y`` and ``Y_lambda``.
    """
    slope = zero_slope(k)
    if slope.mu_dot_lambda0 == 0:
        case = 1
    elif slope.lambda0 == (0, 1):
        case = 2
    else:
        case = 3
    change = surgered(k).b1 - homology(k.link).b1
    if change != {1: -1, 2: 1, 3: 0}[case]:
        raise InconsistencyError(f"case {case} but b1 changes by {change}")
    order = knot_order(k)
    expected = slope.d * slope.mu_dot_lambda0 or None
    if order != expected:
        raise InconsistencyError(f"knot order {order} but slope data gives {expected}")
    return case


def rational_linking(k: KnotInPresentation) -> Fraction:
    """Rational self-linking ``f - ell^T x`` with ``L x = ell``; needs ``[K]`` torsion."""
    m = k.link.size
    if m == 0:
        return Fraction(k.framing)
    for v in linalg.rational_kernel(k.link.matrix, m):
        if sum(Fraction(e) * x for e, x in zip(k.ell, v)) != 0:
            raise DomainError("infinite-order", "knot has infinite order; rational linking undefined")
    x = linalg.solve_rational(k.link.matrix, list(k.ell), m)
    if x is None:
        raise InconsistencyError("linking system unsolvable for a torsion knot")
    return k.framing - sum(e * xi for e, xi in zip(k.ell, x))


def cobordism_b2(k: KnotInPresentation) -> CobordismHomology:
    """Betti numbers of the 2-handle cobordism from ``Y`` to ``Y_lambda``.

    ``b2`` of the cobordism equals ``b1`` of the knot exterior; in case 3
    the sign of the rational self-linking decides the nonzero part.
    """
    case = classify(k)
    if case == 3:
        plus, minus = (1, 0) if rational_linking(k) > 0 else (0, 1)
    else:
        plus = minus = 0
    sig_y = linalg.signature(k.link.matrix) if k.link.size else (0, 0, 0)
    sig_new = linalg.signature(extended_link(k).matrix)
    if (sig_new[0] - sig_new[1]) - (sig_y[0] - sig_y[1]) != plus - minus:
        raise InconsistencyError("signature of the trace disagrees with the linking sign")
    total = exterior_b1(k)
    return CobordismHomology(case, plus, minus, total - plus - minus)


def dual_knot(k: KnotInPresentation) -> KnotInPresentation:
    """The core of the new solid torus, as a 0-framed meridian of the added component."""
    ext = extended_link(k)
    ell = [0] * k.link.size + [1]
    return KnotInPresentation(ext, ell, 0)
