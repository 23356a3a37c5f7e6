"""Rank-level algebra for twisted coefficients.

Laurent polynomials over Q and their Smith forms, Tor ranks of the
coefficient modules, contraction on exterior algebras, and graded rank
vectors with symbolic towers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from . import linalg
from .errors import DomainError

# ---------------------------------------------------------------------------
# Laurent polynomials in t over Q


class Laurent:
    """Element of ``Q[t, t^-1]``; immutable, stored as ``{exponent: coefficient}``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if isinstance(terms, Laurent):
            terms = terms.terms
        elif isinstance(terms, (int, Fraction)):
            terms = {0: terms}
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[int(e)] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __setattr__(self, name, value):
        raise AttributeError("Laurent is immutable")

    @classmethod
    def t(cls, power: int = 1) -> "Laurent":
        return cls({power: 1})

    @classmethod
    def parse(cls, text: str) -> "Laurent":
        """Parse sums of monomials such as ``"1 - t"``, ``"2*t^-1 + 3/2"``."""
        s = text.replace(" ", "")
        if not s:
            raise DomainError("parse", "empty polynomial")
        pos, terms = 0, {}
        term = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(\*?t(?:\^\(?(-?\d+)\)?)?)?")
        while pos < len(s):
            m = term.match(s, pos)
            if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise DomainError("parse", f"cannot parse polynomial {text!r} at {s[pos:]!r}")
            if m.group(3) and m.group(3).startswith("*") and m.group(2) is None:
                raise DomainError("parse", f"dangling '*' in {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            exp = 0
            if m.group(3):
                exp = int(m.group(4)) if m.group(4) is not None else 1
            terms[exp] = terms.get(exp, 0) + sign * coeff
            pos = m.end()
        return cls(terms)

    # -- structure ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def valuation(self) -> int:
        return min(self.terms) if self.terms else 0

    @property
    def span(self) -> int:
        """Euclidean size: ``max exponent - min exponent`` (``-1`` for zero)."""
        return max(self.terms) - min(self.terms) if self.terms else -1

    def is_unit(self) -> bool:
        return self.span == 0

    def leading(self) -> Fraction:
        return self.terms[max(self.terms)]

    def normalized(self) -> "Laurent":
        """Associate that is a monic polynomial with nonzero constant term."""
        if self.is_zero():
            return self
        v, lead = self.valuation, self.leading()
        return Laurent({e - v: c / lead for e, c in self.terms.items()})

    def __call__(self, value):
        value = Fraction(value)
        if value == 0 and self.valuation < 0:
            raise ZeroDivisionError("negative power evaluated at 0")
        return sum((c * value**e for e, c in self.terms.items()), Fraction(0))

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        return other if isinstance(other, Laurent) else Laurent(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[int, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise DomainError("not-invertible", "only monomials have inverses")
            (e, c), = self.terms.items()
            return Laurent({e * k: c**k})
        out = Laurent(1)
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other):
        """Euclidean division with ``span(remainder) < span(other)``."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        va, vb = self.valuation, other.valuation
        a = {e - va: c for e, c in self.terms.items()}
        b = {e - vb: c for e, c in other.terms.items()}
        db = max(b)
        quot: dict[int, Fraction] = {}
        while a and max(a) >= db:
            da = max(a)
            f = a[da] / b[db]
            quot[da - db] = f
            for e, c in b.items():
                k = e + da - db
                nv = a.get(k, 0) - f * c
                if nv:
                    a[k] = nv
                else:
                    a.pop(k, None)
        q = Laurent({e + va - vb: c for e, c in quot.items()})
        r = Laurent({e + va: c for e, c in a.items()})
        return q, r

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other) -> bool:
        other = self._coerce(other)
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Laurent(other)
        return isinstance(other, Laurent) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __repr__(self):
        return f"Laurent({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def laurent_matrix(rows) -> list[list[Laurent]]:
    """Coerce nested lists of strings, numbers or ``Laurent`` into a matrix."""
    def conv(x):
        if isinstance(x, Laurent):
            return x
        if isinstance(x, str):
            return Laurent.parse(x)
        return Laurent(x)
    return [[conv(x) for x in row] for row in rows]


@dataclass(frozen=True)
class LaurentSnf:
    factors: tuple[Laurent, ...]
    u: tuple[tuple[Laurent, ...], ...]
    v: tuple[tuple[Laurent, ...], ...]

    @property
    def rank(self) -> int:
        return sum(1 for f in self.factors if not f.is_zero())


def laurent_snf(matrix, ncols: int | None = None) -> LaurentSnf:
    """Smith form over ``Q[t, t^-1]`` with ``u * m * v = diag(factors)``.

    Nonzero factors are normalised to monic polynomials with nonzero
    constant term (so ``1 - t`` is reported as ``t - 1``); zeros come last.
    """
    a = laurent_matrix(matrix)
    m = len(a)
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    u = [[Laurent(int(i == j)) for j in range(m)] for i in range(m)]
    v = [[Laurent(int(i == j)) for j in range(n)] for i in range(n)]

    def row_add(dst, src, f):  # row dst += f * row src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def col_add(dst, src, f):
        for row in a:
            row[dst] = row[dst] + f * row[src]
        for row in v:
            row[dst] = row[dst] + f * row[src]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a + v:
            row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        while True:
            entries = [(a[i][j].span, i, j) for i in range(t, m) for j in range(t, n) if not a[i][j].is_zero()]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if not a[i][t].is_zero():
                    q, r = divmod(a[i][t], piv)
                    row_add(i, t, -q)
                    dirty = dirty or not r.is_zero()
            for j in range(t + 1, n):
                if not a[t][j].is_zero():
                    q, r = divmod(a[t][j], piv)
                    col_add(j, t, -q)
                    dirty = dirty or not r.is_zero()
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if not piv.divides(a[i][j])),
                None,
            )
            if bad is None:
                break
            row_add(t, bad, Laurent(1))
        if entries:
            # scale the pivot to its normalised associate (a unit multiple)
            piv = a[t][t]
            unit = Laurent({-piv.valuation: 1 / piv.leading()})
            a[t] = [x * unit for x in a[t]]
            u[t] = [x * unit for x in u[t]]
    factors = tuple(a[i][i] for i in range(min(m, n)))
    return LaurentSnf(factors, tuple(map(tuple, u)), tuple(map(tuple, v)))


def _matmul(a, b):
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][j] for k in range(inner)), Laurent()) for j in range(cols)] for i in range(len(a))]


def laurent_det(matrix) -> Laurent:
    """Determinant by Laplace expansion (small matrices only)."""
    a = laurent_matrix(matrix)
    n = len(a)
    if n == 0:
        return Laurent(1)
    if n == 1:
        return a[0][0]
    total = Laurent()
    for j in range(n):
        if not a[0][j].is_zero():
            minor = [row[:j] + row[j + 1 :] for row in a[1:]]
            term = a[0][j] * laurent_det(minor)
            total = total + (term if j % 2 == 0 else -term)
    return total


# ---------------------------------------------------------------------------
# Tor ranks


@dataclass(frozen=True)
class KoszulTor:
    """Tor of the module presented by a two-term resolution.

    With trivial coefficients ``ranks`` are Q-dimensions.  With full
    coefficients they are ranks over ``Q[t, t^-1]`` and ``torsion`` lists
    the nontrivial invariant factors of ``Tor_0``.
    """

    coefficients: str
    ranks: tuple[int, int]
    torsion: tuple[Laurent, ...] = ()

    @property
    def torsion_dimension(self) -> int:
        return sum(f.span for f in self.torsion)


def koszul_tor(matrix, coefficients: str = "trivial", ncols: int | None = None) -> KoszulTor:
    """Tor_0 and Tor_1 of ``coker(m: R^q -> R^p)`` against the given coefficients."""
    a = laurent_matrix(matrix)
    p = len(a)
    q = ncols if ncols is not None else (len(a[0]) if a else 0)
    if coefficients == "trivial":
        at_one = [[x(1) for x in row] for row in a]
        r = linalg.rank(at_one, q) if p and q else 0
        return KoszulTor("trivial", (p - r, q - r))
    if coefficients == "full":
        snf = laurent_snf(a, q)
        r = snf.rank
        torsion = tuple(f for f in snf.factors if not f.is_zero() and not f.is_unit())
        return KoszulTor("full", (p - r, q - r), torsion)
    raise DomainError("bad-coefficients", "coefficients must be 'trivial' or 'full'")


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of ``Z^r`` generated by the columns of ``basis``."""

    ambient: int
    basis: tuple[tuple[int, ...], ...]

    def __init__(self, ambient, basis_cols):
        rows = tuple(tuple(int(x) for x in r) for r in basis_cols)
        if len(rows) != ambient:
            raise DomainError("shape", "basis must have one row per ambient coordinate")
        object.__setattr__(self, "ambient", int(ambient))
        object.__setattr__(self, "basis", rows)

    @classmethod
    def from_vectors(cls, ambient, vectors):
        vectors = [list(v) for v in vectors]
        return cls(ambient, [[v[i] for v in vectors] for i in range(ambient)])

    @property
    def rank(self) -> int:
        return len(self.basis[0]) if self.basis and self.basis[0] else 0

    def vectors(self) -> list[list[int]]:
        return [[self.basis[i][j] for i in range(self.ambient)] for j in range(self.rank)]


def is_direct_summand(v: Subgroup) -> bool:
    if v.rank == 0:
        return True
    snf = linalg.smith_normal_form(v.basis, v.rank)
    return snf.rank == v.rank and all(d == 1 for d in snf.d[: v.rank])


def perp(v: Subgroup, pairing) -> Subgroup:
    """``{x : pairing(x, b) = 0 for every generator b}``."""
    r = v.ambient
    if len(pairing) != r or abs(linalg.determinant(pairing)) != 1:
        raise DomainError("not-unimodular", "pairing must be a unimodular r x r matrix")
    rows = [linalg.matvec(pairing, b) for b in v.vectors()]
    if not rows:
        return Subgroup.from_vectors(r, linalg.identity(r)) if r else Subgroup(0, [])
    ker = linalg.integer_kernel(rows, r)
    return Subgroup.from_vectors(r, ker) if ker else Subgroup(r, [[] for _ in range(r)])


def tor_ranks_shapiro(r: int, v: Subgroup) -> list[int]:
    """Ranks of ``Tor_i`` over ``Z[Z^r]`` of ``Z`` against ``Z[Z^r / V]``: binomial in ``rank V``."""
    if v.ambient != r:
        raise DomainError("shape", "subgroup lives in a different ambient rank")
    if not is_direct_summand(v):
        raise DomainError("not-summand", "subgroup is not a direct summand")
    k = v.rank
    return [comb(k, i) for i in range(k + 1)]


# ---------------------------------------------------------------------------
# Exterior algebra


class ExteriorElement:
    """Element of the exterior algebra on ``e_1..e_n`` (0-based indices internally)."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=None):
        self.n = n
        clean = {}
        for key, c in (coeffs or {}).items():
            key = tuple(key)
            if any(not 0 <= i < n for i in key) or list(key) != sorted(set(key)):
                raise DomainError("bad-monomial", f"monomial {key} is not an increasing subset")
            c = Fraction(c)
            if c:
                clean[key] = c
        self.coeffs = dict(sorted(clean.items(), key=lambda kv: (len(kv[0]), kv[0])))

    @classmethod
    def basis(cls, n: int, *indices) -> "ExteriorElement":
        """Wedge of the given generators (0-based), in the given order."""
        out = cls(n, {(): 1})
        for i in indices:
            out = out.wedge(cls(n, {(i,): 1}))
        return out

    def _check(self, other):
        if other.n != self.n:
            raise DomainError("rank-mismatch", "exterior elements of different rank")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return ExteriorElement(self.n, out)

    def __neg__(self):
        return ExteriorElement(self.n, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ExteriorElement":
        return ExteriorElement(self.n, {k: c * v for k, v in self.coeffs.items()})

    def wedge(self, other) -> "ExteriorElement":
        self._check(other)
        out: dict[tuple, Fraction] = {}
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                if set(a) & set(b):
                    continue
                merged = a + b
                # sign of the sorting permutation = parity of inversions
                inv = sum(1 for x in a for y in b if x > y)
                key = tuple(sorted(merged))
                out[key] = out.get(key, 0) + (-1) ** inv * ca * cb
        return ExteriorElement(self.n, out)

    def degree_part(self, p: int) -> "ExteriorElement":
        return ExteriorElement(self.n, {k: c for k, c in self.coeffs.items() if len(k) == p})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, ExteriorElement) and self.n == other.n and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return f"ExteriorElement({self.n}, 0)"
        terms = " + ".join(
            f"{c}*" + ("^".join(f"e{i + 1}" for i in k) if k else "1") for k, c in self.coeffs.items()
        )
        return f"ExteriorElement({self.n}, {terms})"


def contract(xi, w: ExteriorElement) -> ExteriorElement:
    """Interior product with the covector ``xi`` (one value per generator)."""
    if len(xi) != w.n:
        raise DomainError("rank-mismatch", "covector length differs from exterior rank")
    out: dict[tuple, Fraction] = {}
    for key, c in w.coeffs.items():
        for pos, idx in enumerate(key):
            val = xi[idx]
            if val:
                rest = key[:pos] + key[pos + 1 :]
                out[rest] = out.get(rest, 0) + (-1) ** pos * val * c
    return ExteriorElement(w.n, out)


def kernel_of_full_contraction(k: int) -> list[int]:
    """Dimension, per degree, of the joint kernel of all contractions on ``Lambda^* Q^k``."""
    if k < 0:
        raise DomainError("bad-parameter", "rank must be nonnegative")
    profile = []
    for p in range(k + 1):
        monos = list(combinations(range(k), p))
        if p == 0:
            profile.append(1)
            continue
        lower = {m: i for i, m in enumerate(combinations(range(k), p - 1))}
        rows = []
        for g in range(k):
            xi = [int(i == g) for i in range(k)]
            block = [[0] * len(monos) for _ in lower]
            for col, m in enumerate(monos):
                image = contract(xi, ExteriorElement(k, {m: 1}))
                for key, c in image.coeffs.items():
                    block[lower[key]][col] = c
            rows.extend(block)
        profile.append(len(monos) - linalg.rank(rows, len(monos)))
    return profile


# ---------------------------------------------------------------------------
# Graded rank vectors


TOWER_TAGS = ("Tinf", "Tplus")


@dataclass(frozen=True)
class GradedRankVector:
    """Finite ranks by rational degree plus symbolic towers ``(bottom, tag)``."""

    ranks: tuple[tuple[Fraction, int], ...] = ()
    towers: tuple[tuple[Fraction, str], ...] = ()

    def __init__(self, ranks=None, towers=()):
        acc: dict[Fraction, int] = {}
        for d, r in dict(ranks or {}).items() if isinstance(ranks, dict) else (ranks or ()):
            d = Fraction(d)
            if (4 * d).denominator != 1:
                raise DomainError("bad-degree", f"degree {d} is not in (1/4)Z")
            if r < 0:
                raise DomainError("bad-rank", "ranks are nonnegative")
            if r:
                acc[d] = acc.get(d, 0) + int(r)
        tws = []
        for bottom, tag in towers:
            if tag not in TOWER_TAGS:
                raise DomainError("bad-tower", f"tower tag must be one of {TOWER_TAGS}")
            bottom = Fraction(bottom)
            if (4 * bottom).denominator != 1:
                raise DomainError("bad-degree", f"degree {bottom} is not in (1/4)Z")
            tws.append((bottom, tag))
        object.__setattr__(self, "ranks", tuple(sorted(acc.items())))
        object.__setattr__(self, "towers", tuple(sorted(tws)))

    def rank_map(self) -> dict[Fraction, int]:
        return dict(self.ranks)

    def shift(self, s) -> "GradedRankVector":
        s = Fraction(s)
        return GradedRankVector({d + s: r for d, r in self.ranks}, [(b + s, t) for b, t in self.towers])

    def __add__(self, other: "GradedRankVector") -> "GradedRankVector":
        return GradedRankVector(list(self.ranks) + list(other.ranks), self.towers + other.towers)

    def min_degree(self) -> Fraction | None:
        degs = [d for d, _ in self.ranks] + [b for b, _ in self.towers]
        return min(degs) if degs else None

    def materialize(self, top) -> dict[Fraction, int]:
        """Ranks up to degree ``top``, expanding each tower in steps of 2 from its bottom."""
        top = Fraction(top)
        out: dict[Fraction, int] = {}
        for d, r in self.ranks:
            if d <= top:
                out[d] = out.get(d, 0) + r
        for b, _ in self.towers:
            d = b
            while d <= top:
                out[d] = out.get(d, 0) + 1
                d += 2
        return dict(sorted(out.items()))


def kunneth_s1s2(g: GradedRankVector, n: int) -> GradedRankVector:
    """Tensor with the homology of ``n`` copies of ``S^1 x S^2``: each copy contributes shifts ``+-1/2``."""
    if n < 0:
        raise DomainError("bad-parameter", "n must be nonnegative")
    half = Fraction(1, 2)
    ranks: dict[Fraction, int] = {}
    towers = []
    for j in range(n + 1):
        shift = n * half - j
        mult = comb(n, j)
        for d, r in g.ranks:
            ranks[d + shift] = ranks.get(d + shift, 0) + mult * r
        towers.extend([(b + shift, tag) for b, tag in g.towers] * mult)
    return GradedRankVector(ranks, towers)
