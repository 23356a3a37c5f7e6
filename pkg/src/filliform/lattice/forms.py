"""Integral symmetric bilinear forms and their basic invariants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .. import linalg
from ..errors import DomainError


@dataclass(frozen=True)
class Form:
    """An integral symmetric bilinear form given by its Gram matrix.

    Definite examples throughout the package use the negative-definite
    convention.  The rank-0 form (empty Gram) is a legitimate value.
    """

    gram: tuple[tuple[int, ...], ...]

    def __init__(self, gram):
        rows = tuple(tuple(int(x) for x in row) for row in gram)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DomainError("shape", "Gram matrix must be square")
        if not linalg.is_symmetric(rows):
            raise DomainError("not-symmetric", "Gram matrix must be symmetric")
        object.__setattr__(self, "gram", rows)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.gram]

    def __call__(self, x, y) -> int:
        return linalg.bilinear(self.gram, x, y)

    def norm(self, x) -> int:
        return linalg.bilinear(self.gram, x, x)

    def negate(self) -> "Form":
        return Form([[-x for x in row] for row in self.gram])

    def transform(self, basis_cols) -> "Form":
        """The form restricted to the columns of ``basis_cols``: ``B^T G B``."""
        return Form(linalg.congruent(self.gram, basis_cols))

    def restrict(self, vectors) -> "Form":
        return Form(linalg.gram_of_vectors(self.gram, vectors))

    def __add__(self, other: "Form") -> "Form":
        return direct_sum(self, other)

    def __repr__(self) -> str:
        return f"Form({self.rows()!r})"


def direct_sum(*forms: Form) -> Form:
    n = sum(f.rank for f in forms)
    g = linalg.zeros(n, n)
    off = 0
    for f in forms:
        for i, row in enumerate(f.gram):
            g[off + i][off : off + f.rank] = row
        off += f.rank
    return Form(g)


@dataclass(frozen=True)
class FormInvariants:
    rank: int
    signature: tuple[int, int, int]
    det: int
    parity: str
    definiteness: str


def is_even(f: Form) -> bool:
    return all(f.gram[i][i] % 2 == 0 for i in range(f.rank))


def invariants(f: Form) -> FormInvariants:
    sig = linalg.signature(f.gram)
    plus, minus, zero = sig
    if f.rank == 0 or plus == minus == 0:
        kind = "zero"
    elif plus and minus:
        kind = "indefinite"
    elif minus:
        kind = "neg-def" if zero == 0 else "neg-semidef"
    else:
        kind = "pos-def" if zero == 0 else "pos-semidef"
    return FormInvariants(
        rank=f.rank,
        signature=sig,
        det=linalg.determinant(f.gram),
        parity="even" if is_even(f) else "odd",
        definiteness=kind,
    )


def is_negative_definite(f: Form) -> bool:
    return linalg.signature(f.gram)[1] == f.rank


def require_negative_definite(f: Form, what: str) -> None:
    if not is_negative_definite(f):
        raise DomainError("not-negative-definite", f"{what} needs a negative-definite form")


def radical(f: Form) -> list[list[int]]:
    return linalg.integer_kernel(f.rows(), f.rank)


def nondegenerate_part(f: Form) -> Form:
    """The induced form on ``L / radical``."""
    rad = radical(f)
    if not rad:
        return f
    basis = linalg.extend_to_basis(rad, f.rank)
    k = len(rad)
    comp = [[basis[i][j] for j in range(k, f.rank)] for i in range(f.rank)]
    return f.transform(comp) if f.rank - k else Form([])


def gram_inverse(f: Form) -> list[list[Fraction]]:
    if linalg.determinant(f.gram) == 0:
        raise DomainError("degenerate", "form is degenerate")
    return linalg.rational_inverse(f.gram)


def dual_pairing(f: Form, a, b) -> Fraction:
    """Rational pairing of two dual vectors given in dual-basis coordinates."""
    if len(a) != f.rank or len(b) != f.rank:
        raise DomainError("shape", "dual vectors must have length rank(f)")
    inv = gram_inverse(f)
    return linalg.bilinear(inv, a, b) if f.rank else Fraction(0)


@dataclass(frozen=True)
class CharCovector:
    """A dual vector ``k`` with ``k(e_j) = coords[j]``."""

    coords: tuple[int, ...]


def is_characteristic(f: Form, coords) -> bool:
    return len(coords) == f.rank and all(
        (c - f.gram[j][j]) % 2 == 0 for j, c in enumerate(coords)
    )


def char_base(f: Form) -> CharCovector:
    """The characteristic covector with coordinates in {0, 1}."""
    return CharCovector(tuple(f.gram[j][j] % 2 for j in range(f.rank)))


# ---------------------------------------------------------------------------
# Standard forms


def _cartan_a(k):
    g = linalg.zeros(k, k)
    for i in range(k):
        g[i][i] = -2
        if i + 1 < k:
            g[i][i + 1] = g[i + 1][i] = 1
    return g


def _d_basis(k):
    """Basis ``f1+f2, f1-f2, f2-f3, ..., f_{k-1}-f_k`` of D_k inside Z^k."""
    rows = []
    v = [0] * k
    v[0] = v[1] = 1
    rows.append(v)
    for i in range(k - 1):
        v = [0] * k
        v[i], v[i + 1] = 1, -1
        rows.append(v)
    return rows


_E8_EDGES = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)]


def _neg_euclidean_gram(rows, scale=1):
    return [[-sum(a * b for a, b in zip(u, v)) // scale for v in rows] for u in rows]


def gamma_basis(k: int) -> list[list[int]]:
    """A basis of Gamma_k, written in doubled coordinates of R^k (entries = 2x)."""
    gens = [[2 * x for x in row] for row in _d_basis(k)] + [[1] * k]
    return linalg.span_basis(gens, k)


def standard_form(name: str, k: int | None = None, sign: int = -1, eps: int = -1) -> Form:
    """Named forms; definite families come out negative definite unless ``sign=+1``.

    ``cube`` is ``diag(eps, ..., eps)``; ``hyperbolic`` and ``lorentz`` ignore
    ``sign``.  ``lorentz(k)`` is ``diag(+1, -1, ..., -1)`` on the basis
    ``h, e1, ..., ek``.
    """
    key = name.lower()
    if key in ("hyperbolic", "h"):
        return Form([[0, 1], [1, 0]])
    if key == "lorentz":
        k = _need_k(name, k, 0)
        g = linalg.zeros(k + 1, k + 1)
        g[0][0] = 1
        for i in range(1, k + 1):
            g[i][i] = -1
        return Form(g)
    if key == "cube":
        k = _need_k(name, k, 0)
        if eps not in (-1, 1):
            raise DomainError("bad-parameter", "cube sign must be +1 or -1")
        return Form([[eps * int(i == j) for j in range(k)] for i in range(k)])
    if key == "a":
        g = _cartan_a(_need_k(name, k, 1))
    elif key == "d":
        g = _neg_euclidean_gram(_d_basis(_need_k(name, k, 2)))
    elif key == "e8":
        if k not in (None, 8):
            raise DomainError("bad-parameter", "E8 has rank 8")
        g = [[-2 * int(i == j) for j in range(8)] for i in range(8)]
        for i, j in _E8_EDGES:
            g[i][j] = g[j][i] = 1
    elif key == "gamma":
        k = _need_k(name, k, 4)
        if k % 4:
            raise DomainError("bad-parameter", "Gamma_k is integral only for k divisible by 4")
        g = _neg_euclidean_gram(gamma_basis(k), scale=4)
    else:
        raise DomainError("unknown-form", f"unknown standard form {name!r}")
    f = Form(g)
    if sign == 1:
        return f.negate()
    if sign != -1:
        raise DomainError("bad-parameter", "sign must be +1 or -1")
    return f


def _need_k(name, k, lo):
    if k is None or k < lo:
        raise DomainError("bad-parameter", f"{name} needs rank k >= {lo}")
    return int(k)
