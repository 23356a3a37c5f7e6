"""Ledger of correction terms for closed 3-manifolds and what they forbid.

Each entry stores the twisted correction term ``ud`` of a manifold and,
independently, the one of its orientation reversal.  From these the ledger
derives ``delta = 4 * ud + 2 * b1``, which bounds the intersection forms of
negative semidefinite fillings through the shadow invariant ``s_bar``.
"""

from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import DomainError
from .lattice import Form, nondegenerate_part, shadow
from .lattice.isometry import IsometryIndex
from .lattice.enumeration import QuadraticForm, points_within, positive_short_vectors
from .lattice.forms import CharCovector

log = logging.getLogger(__name__)

PROVENANCES = ("paper-table", "sum", "user")

# n-th powers of the Hermite constants, n = 1..8
_HERMITE_POWERS = [Fraction(1), Fraction(4, 3), Fraction(2), Fraction(4), Fraction(8), Fraction(64, 3), Fraction(64), Fraction(256)]

DEFAULT_MAX_RANK = 8


@dataclass(frozen=True)
class ManifoldClass:
    name: str
    b1: int
    torsion_order: int
    ud: Fraction
    ud_rev: Fraction
    provenance: str = "user"

    def __post_init__(self):
        if self.b1 < 0:
            raise DomainError("invalid-manifold", "b1 must be nonnegative")
        if self.torsion_order < 1:
            raise DomainError("invalid-manifold", "torsion order must be positive")
        if self.provenance not in PROVENANCES:
            raise DomainError("invalid-manifold", f"unknown provenance {self.provenance!r}")
        object.__setattr__(self, "ud", Fraction(self.ud))
        object.__setattr__(self, "ud_rev", Fraction(self.ud_rev))


@dataclass(frozen=True)
class FillingVerdict:
    admissible: bool
    margin: Fraction
    violating_covector: CharCovector | None = None
    reason: str | None = None


def _surface_times_circle(g: int) -> ManifoldClass:
    if g < 0:
        raise DomainError("unknown-manifold", "genus must be nonnegative")
    ud = Fraction(1, 2) if g % 2 else Fraction(-1, 2)
    return ManifoldClass(f"Sigma_{g} x S1", 2 * g + 1, 1, ud, ud, "paper-table")


_FIXED = {
    "s3": ("S3", 0, 0, 0),
    "s1xs2": ("S1 x S2", 1, Fraction(-1, 2), Fraction(-1, 2)),
    "t3": ("T3", 3, Fraction(1, 2), Fraction(1, 2)),
    "poincare": ("Poincare sphere", 0, -2, 2),
}
_ALIASES = {"sphere": "s3", "s^3": "s3", "torus": "t3", "t^3": "t3", "p": "poincare"}


def builtin(name: str, genus: int | None = None) -> ManifoldClass:
    """Look up a tabulated manifold.

    Names (case-insensitive): ``S3``, ``S1xS2``, ``T3``, ``poincare`` and
    ``sigma_g`` (surface of genus ``g`` times a circle), given either as
    ``sigma`` with ``genus=g`` or spelled out as ``sigma3``/``sigma_3``.
    """
    key = name.strip().lower().replace(" ", "")
    key = _ALIASES.get(key, key)
    if key.startswith("sigma"):
        rest = key[len("sigma"):].lstrip("_")
        if rest:
            if not rest.isdigit():
                raise DomainError("unknown-manifold", f"cannot read a genus from {name!r}")
            genus = int(rest)
        if genus is None:
            raise DomainError("unknown-manifold", "sigma needs a genus")
        return _surface_times_circle(genus)
    if key not in _FIXED:
        raise DomainError("unknown-manifold", f"no built-in manifold called {name!r}")
    label, b1, ud, ud_rev = _FIXED[key]
    return ManifoldClass(label, b1, 1, Fraction(ud), Fraction(ud_rev), "paper-table")


def delta(m: ManifoldClass) -> Fraction:
    return 4 * m.ud + 2 * m.b1


def connected_sum(parts) -> ManifoldClass:
    parts = list(parts)
    if not parts:
        return builtin("S3")
    if len(parts) == 1:
        return parts[0]
    return ManifoldClass(
        " # ".join(p.name for p in parts),
        sum(p.b1 for p in parts),
        math.prod(p.torsion_order for p in parts),
        sum((p.ud for p in parts), Fraction(0)),
        sum((p.ud_rev for p in parts), Fraction(0)),
        "sum",
    )


def reverse(m: ManifoldClass) -> ManifoldClass:
    name = m.name[1:] if m.name.startswith("-") else "-" + m.name
    return ManifoldClass(name, m.b1, m.torsion_order, m.ud_rev, m.ud, m.provenance)


def check_filling(m: ManifoldClass, f: Form) -> FillingVerdict:
    """Can ``f`` be the intersection form of a negative semidefinite filling of ``m``?

    Only necessary conditions are tested: ``s_bar`` of the nondegenerate
    part is at most ``delta(m)`` and its determinant is at most the order
    of the torsion subgroup in absolute value.
    """
    bound = delta(m)
    plus, _, _ = linalg.signature(f.gram) if f.rank else (0, 0, 0)
    if plus:
        return FillingVerdict(False, Fraction(0), None, "not semidefinite")
    core = nondegenerate_part(f)
    stats = shadow(core)
    margin = bound - stats.s_bar
    if margin < 0:
        return FillingVerdict(False, margin, stats.witness, "shadow bound violated")
    det = abs(linalg.determinant(core.gram)) if core.rank else 1
    if det > m.torsion_order:
        return FillingVerdict(False, margin, None, "determinant exceeds torsion order")
    return FillingVerdict(True, margin)


def embedding_range(y0: ManifoldClass, p: ManifoldClass) -> tuple[int, int]:
    """Integers ``n`` for which ``y0 # n p`` escapes the delta obstruction.

    Outside the returned closed interval (possibly empty, ``lo > hi``) the
    connected sum has no separating embedding in a negative-definite closed
    4-manifold.  ``p`` must be a rational homology sphere with ``ud < 0``.
    """
    d = p.ud
    if p.b1 != 0:
        raise DomainError("invalid-manifold", "p must be a rational homology sphere")
    if d >= 0:
        raise DomainError("invalid-manifold", "p must have negative correction term")
    lo = math.ceil(delta(reverse(y0)) / (4 * d))
    hi = math.floor(-delta(y0) / (4 * d))
    return lo, hi


def _product_bound(n: int) -> Fraction:
    """Constant bounding ``prod a_ii / det`` over Minkowski-reduced positive Grams of rank n."""
    if not 1 <= n <= len(_HERMITE_POWERS):
        raise DomainError("rank-too-large", f"no reduction constant tabulated for rank {n}")
    extra = Fraction(5, 4) ** ((n - 4) * (n - 3) // 2) if n >= 5 else 1
    return _HERMITE_POWERS[n - 1] * extra


class _Prefix:
    """A partial positive Gram with the data needed to extend it by one row."""

    def __init__(self, gram):
        self.gram = gram
        k = len(gram)
        self.k = k
        self.inverse = linalg.rational_inverse(gram) if k else []
        self.det = linalg.determinant(gram) if k else 1
        self.diag_product = math.prod(gram[i][i] for i in range(k))
        # sum of Gram-Schmidt squared lengths bounds 4x the covering radius squared
        minors = [1] + [linalg.determinant([r[: i + 1] for r in gram[: i + 1]]) for i in range(k)]
        self.gs_sum = sum(Fraction(minors[i + 1], minors[i]) for i in range(k))
        self._short = None

    def short(self, limit):
        """Pairs ``(x, norm)`` with ``norm < limit``, one per sign class, by norm."""
        if self._short is None or self._short[0] < limit:
            pool = positive_short_vectors(self.gram, limit) if self.k else {}
            flat = [(x, nrm) for nrm, xs in pool.items() if nrm < limit for x in xs]
            self._short = (limit, flat)
        return [(x, nrm) for x, nrm in self._short[1] if nrm < limit]


def _in_voronoi_cell(prefix: _Prefix, row, proj_norm) -> bool:
    """Is the new vector shortest in its coset modulo the prefix lattice?

    That holds iff ``x^T A x >= 2 |x . row|`` for every lattice ``x``; a
    violation forces ``x^T A x < 4 * proj_norm``.
    """
    for x, nrm in prefix.short(4 * proj_norm):
        if nrm < 2 * abs(sum(a * b for a, b in zip(x, row))):
            return False
    return True


def _extensions(prefix: _Prefix, diag_max: Fraction, diag_min: int, det_cap: int, last: bool):
    k = prefix.k
    qf = QuadraticForm(prefix.inverse) if k else None
    a = diag_min
    while a <= diag_max:
        if k == 0:
            if not last or a <= det_cap:
                yield [[a]]
            a += 2
            continue
        limit = min(Fraction(a), prefix.gs_sum / 4)
        # rows r and -r give the same lattice, so one of each pair suffices
        rows = [((0,) * k, 0)] + points_within(qf, limit, half=True)
        for row, proj in rows:
            if proj >= a:
                continue
            if last and prefix.det * (a - proj) > det_cap:
                continue
            if not _in_voronoi_cell(prefix, row, proj):
                continue
            gram = [list(r) + [row[i]] for i, r in enumerate(prefix.gram)]
            gram.append(list(row) + [a])
            yield gram
        a += 2


def _dedupe(grams):
    """Keep one Gram per (diagonal, isometry class)."""
    index = IsometryIndex()
    out = []
    for g in grams:
        k = len(g)
        key = (tuple(g[i][i] for i in range(k)), linalg.smith_normal_form(g, k).d)
        if index.add(Form([[-x for x in r] for r in g]), key):
            out.append(g)
    return out


def _discriminant_generators(gram) -> int:
    return sum(1 for d in linalg.smith_normal_form(gram, len(gram)).d if d != 1)


@functools.lru_cache(maxsize=None)
def _even_forms(rank: int, max_det: int) -> tuple[Form, ...]:
    """Grow positive Grams one row at a time in Minkowski-reduced shape.

    Constraints: even nondecreasing diagonal under the reduction product bound, each new
    basis vector shortest in its coset modulo the earlier ones.  Prefixes
    with equal diagonals are merged up to isometry after every step.

    A prefix spans a primitive sublattice, so its discriminant group is a
    quotient of an extension of the final one by the free rest; that caps
    the number of its generators.
    """
    if rank == 0:
        return (Form([]),)
    cap = _product_bound(rank) * max_det
    level = [_Prefix([])]
    for k in range(rank):
        last = k == rank - 1
        grown = []
        for prefix in level:
            lowest = prefix.gram[-1][-1] if prefix.k else 2
            remaining = rank - k
            # a^remaining * prod(earlier diagonal) <= cap
            top = lowest
            while (top + 2) ** remaining * prefix.diag_product <= cap:
                top += 2
            if lowest ** remaining * prefix.diag_product > cap:
                continue
            grown.extend(_extensions(prefix, top, lowest, max_det, last))
        spare = rank - k - 1 + max_det.bit_length() - 1
        grown = [g for g in grown if _discriminant_generators(g) <= spare]
        level = [_Prefix(g) for g in _dedupe(grown)]
        log.debug("rank %d, level %d: %d prefixes", rank, k + 1, len(level))
    index = IsometryIndex()
    for p in level:
        if p.det <= max_det:
            index.add(Form([[-x for x in r] for r in p.gram]))
    return tuple(index.representatives)


def even_forms(rank: int, max_det: int) -> list[Form]:
    """All even negative-definite forms of the given rank with ``|det| <= max_det``, up to isometry.

    Results are memoised; rank 8 with determinant 1 takes about a minute.
    """
    return list(_even_forms(rank, max_det))


def enumerate_even_candidates(m: ManifoldClass, max_rank: int = DEFAULT_MAX_RANK) -> list[Form]:
    """Even negative-definite forms, up to isometry, allowed as fillings of ``m``.

    Ranks run up to ``min(delta(m), max_rank)``; an even form has
    ``s_bar`` equal to its rank, so larger ranks are excluded outright.
    """
    bound = delta(m)
    if bound < 0:
        return []
    top = min(math.floor(bound), max_rank)
    out = []
    for n in range(top + 1):
        for f in even_forms(n, m.torsion_order):
            if check_filling(m, f).admissible:
                out.append(f)
    return out
