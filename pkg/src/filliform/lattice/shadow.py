"""Short vectors and the characteristic-covector minimum of a definite form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .. import linalg
from .enumeration import closest_points, positive_short_vectors
from .forms import CharCovector, Form, char_base, require_negative_definite


def short_vectors(f: Form, max_abs_norm: int) -> dict[int, list[tuple[int, ...]]]:
    """Nonzero vectors with ``|v.v| <= max_abs_norm``, keyed by (negative) norm.

    Each entry stands for the pair ``+-v``; the stored representative has
    its first nonzero coordinate positive.  Keys run ``-1, -2, ...``.
    """
    require_negative_definite(f, "short_vectors")
    if f.rank == 0:
        return {}
    pos = [[-x for x in row] for row in f.gram]
    return {-k: vs for k, vs in positive_short_vectors(pos, max_abs_norm).items()}


def vectors_of_norm(f: Form, norm: int) -> list[tuple[int, ...]]:
    """Representatives (one per sign pair) of the vectors with ``v.v = norm < 0``."""
    return short_vectors(f, -norm).get(norm, [])


@dataclass(frozen=True)
class ShadowStats:
    s: Fraction
    s_bar: Fraction
    witness: CharCovector


def shadow(f: Form) -> ShadowStats:
    """Minimum of ``|k.k|`` over characteristic covectors ``k``.

    Characteristic covectors form the coset ``base + 2 Z^n`` in dual
    coordinates, so the minimum is a closest-vector problem for ``(-G)^-1``
    centred at ``-base / 2``.  Ties go to the lexicographically least
    coordinates.
    """
    require_negative_definite(f, "shadow")
    n = f.rank
    if n == 0:
        return ShadowStats(Fraction(0), Fraction(0), CharCovector(()))
    base = char_base(f).coords
    inv = linalg.rational_inverse([[-x for x in row] for row in f.gram])
    target = [Fraction(-b, 2) for b in base]
    value, ys = closest_points(inv, target)
    s = 4 * value
    witness = min(tuple(b + 2 * y for b, y in zip(base, yv)) for yv in ys)
    return ShadowStats(s, n - s, CharCovector(witness))
