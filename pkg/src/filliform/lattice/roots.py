"""Root systems of definite forms and overlattices of root lattices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .. import linalg
from ..errors import DomainError, InconsistencyError
from .enumeration import positive_short_vectors
from .forms import Form, require_negative_definite
from .shadow import vectors_of_norm

_EXCEPTIONAL = {(6, 72): ("E", 6), (7, 126): ("E", 7), (8, 240): ("E", 8)}


def root_count(family: str, k: int) -> int:
    if family == "A":
        return k * k + k
    if family == "D":
        return 2 * k * k - 2 * k
    return {6: 72, 7: 126, 8: 240}[k]


def identify_component(rank: int, count: int) -> tuple[str, int]:
    """ADE type of an irreducible root system from its rank and root count."""
    if count == rank * rank + rank:
        return ("A", rank)  # also covers D3
    if rank >= 4 and count == 2 * rank * rank - 2 * rank:
        return ("D", rank)
    if (rank, count) in _EXCEPTIONAL:
        return _EXCEPTIONAL[(rank, count)]
    raise InconsistencyError(f"no irreducible root system of rank {rank} with {count} roots")


@dataclass(frozen=True)
class RootSystemId:
    components: tuple[tuple[str, int], ...]
    root_count: int
    spans_full_rank: bool

    def label(self) -> str:
        return "+".join(f"{fam}{k}" for fam, k in self.components) or "0"


def _components(f: Form, roots):
    m = len(roots)
    images = [linalg.matvec(f.gram, r) for r in roots]
    seen = [False] * m
    comps = []
    for s in range(m):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in range(m):
                if not seen[b] and linalg.dot(images[a], roots[b]):
                    seen[b] = True
                    stack.append(b)
        comps.append(sorted(comp))
    return comps


def root_system(f: Form) -> RootSystemId:
    require_negative_definite(f, "root_system")
    roots = vectors_of_norm(f, -2) if f.rank else []
    comps = []
    for comp in _components(f, roots):
        vecs = [roots[i] for i in comp]
        comps.append(identify_component(linalg.rank(vecs, f.rank), 2 * len(vecs)))
    comps.sort(key=lambda c: (-c[1], c[0]))
    span = linalg.rank(roots, f.rank) if roots else 0
    return RootSystemId(tuple(comps), 2 * len(roots), span == f.rank)


def simple_roots(gram) -> list[tuple[int, ...]]:
    """Simple roots (in the given coordinates) of the norm -2 vectors of a negative-definite Gram.

    Positivity is lexicographic: the stored representative of each pair
    already has its first nonzero coordinate positive.
    """
    pos = [[-x for x in row] for row in gram]
    reps = positive_short_vectors(pos, 2).get(2, [])
    rootset = set(reps)
    simple = []
    for r in reps:
        decomposable = any(
            tuple(a - b for a, b in zip(r, s)) in rootset for s in reps if s != r
        )
        if not decomposable:
            simple.append(r)
    return simple


@dataclass(frozen=True)
class GlueResult:
    index: int
    glue: tuple[tuple[Fraction, ...], ...]
    overlattice_class: str | None


def _cosets(basis_cols, n):
    """Representatives of ``Z^n / span(basis_cols)`` (finite index)."""
    res = linalg.smith_normal_form(basis_cols, n)
    if res.rank < n:
        raise DomainError("infinite-index", "sublattice basis does not have full rank")
    uinv = linalg.unimodular_inverse(res.u)
    reps = [[0] * n]
    for i, d in enumerate(res.d):
        if d == 1:
            continue
        col = [uinv[r][i] for r in range(n)]
        reps = [[a + t * c for a, c in zip(v, col)] for v in reps for t in range(d)]
    return reps


def overlattice_glue(f: Form, root_basis) -> GlueResult:
    """Index of ``R = span(root_basis)`` in ``f`` and glue classes of ``L / R``.

    Glue vectors are rational coordinates in the ``root_basis`` reduced to
    ``[0, 1)``, one per nonzero coset.  When ``R`` is a ``D_n`` root lattice
    of index 2 the overlattice is classified as ``"Z"`` or ``"Gamma"``.
    """
    n = f.rank
    vecs = [list(v) for v in root_basis]
    if len(vecs) != n or any(len(v) != n for v in vecs):
        raise DomainError("infinite-index", "root basis must consist of rank(f) vectors")
    cols = linalg.transpose(vecs, n) if n else []
    det_b = linalg.determinant(cols) if n else 1
    if det_b == 0:
        raise DomainError("infinite-index", "root basis is linearly dependent")
    index = abs(det_b)
    glue = []
    for v in _cosets(cols, n):
        if not any(v):
            continue
        c = linalg.solve_rational(cols, v)
        glue.append(tuple(x - (x.numerator // x.denominator) for x in c))
    glue.sort()
    klass = None
    rgram = linalg.gram_of_vectors(f.gram, vecs)
    if index == 2 and n >= 4:
        klass = _classify_d_overlattice(f, vecs, rgram)
    return GlueResult(index, tuple(glue), klass)


def _classify_d_overlattice(f, vecs, rgram):
    sub = Form(rgram)
    if linalg.signature(rgram)[1] != sub.rank:
        return None
    rs = root_system(sub)
    if rs.components != (("D", sub.rank),):
        return None
    simple = simple_roots(rgram)
    gs = linalg.gram_of_vectors(rgram, simple)
    m = len(simple)
    degree = [sum(1 for j in range(m) if j != i and gs[i][j]) for i in range(m)]
    branch = [i for i in range(m) if degree[i] == 3]
    if len(branch) != 1:
        raise InconsistencyError("D_n Dynkin diagram without a unique branch node")
    legs = [j for j in range(m) if j != branch[0] and gs[branch[0]][j] and degree[j] == 1]
    n = f.rank
    # simple roots are in R-coordinates; push them into L-coordinates
    ambient = [[sum(r[k] * vecs[k][i] for k in range(len(vecs))) for i in range(n)] for r in simple]
    for a in range(len(legs)):
        for b in range(a + 1, len(legs)):
            total = [x + y for x, y in zip(ambient[legs[a]], ambient[legs[b]])]
            if all(t % 2 == 0 for t in total):
                return "Z"
    return "Gamma"

