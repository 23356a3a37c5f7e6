"""Isometry testing for definite forms by backtracking over short vectors."""

from __future__ import annotations

from .. import linalg
from ..errors import DomainError
from .enumeration import positive_short_vectors
from .forms import Form, is_even, is_negative_definite
from .reduction import lll_gram


def _reduced_target(g: Form):
    """LLL basis of ``g`` ordered by norm; returns ``(gram, basis_cols)``."""
    pos = [[-x for x in row] for row in g.gram]
    red, basis = lll_gram(pos)
    order = sorted(range(g.rank), key=lambda i: (red[i][i], i))
    cols = [[basis[r][i] for i in order] for r in range(g.rank)]
    return [[-red[i][j] for j in order] for i in order], cols


def _pool(f: Form, bound):
    return positive_short_vectors([[-x for x in row] for row in f.gram], bound)


def _counts(pool):
    return {k: len(v) for k, v in pool.items()}


def is_isometric(f: Form, g: Form):
    """Return ``(True, w)`` with ``w^T f w = g`` if the forms are isometric, else ``(False, None)``.

    ``w`` is an integer matrix (columns = images of g's basis in f's
    coordinates).  Both forms must be negative definite.
    """
    for h in (f, g):
        if not is_negative_definite(h):
            raise DomainError("not-negative-definite", "isometry test needs negative-definite forms")
    n = f.rank
    if g.rank != n:
        return False, None
    if f.gram == g.gram:
        return True, linalg.identity(n)
    if n == 0:
        return True, []
    if linalg.determinant(f.gram) != linalg.determinant(g.gram) or is_even(f) != is_even(g):
        return False, None
    target, basis_g = _reduced_target(g)
    bound = max(-target[i][i] for i in range(n))
    pool = _pool(f, bound)
    if _counts(pool) != _counts(_pool(g, bound)):
        return False, None
    w = _backtrack(f, target, pool)
    if w is None:
        return False, None
    # w maps the reduced basis of g; compose with the inverse change of basis
    witness = linalg.matmul(w, linalg.unimodular_inverse(basis_g))
    if linalg.congruent(f.gram, witness) != [list(r) for r in g.gram]:
        raise AssertionError("isometry witness failed verification")
    return True, witness


def _backtrack(f: Form, target, pool):
    n = len(target)
    cands_by_norm = {}
    for k, reps in pool.items():
        both = []
        for v in reps:
            both.append(v)
            both.append(tuple(-a for a in v))
        cands_by_norm[-k] = both
    domains = [cands_by_norm.get(target[i][i], []) for i in range(n)]
    # the global sign symmetry lets the first chosen vector be a "positive" representative
    assigned: dict[int, tuple] = {}

    def solve(domains, first):
        if len(assigned) == n:
            return True
        i = min((j for j in range(n) if j not in assigned), key=lambda j: (len(domains[j]), j))
        dom = domains[i]
        if first:
            dom = dom[::2]
        for v in dom:
            fv = linalg.matvec(f.gram, v)
            new = list(domains)
            ok = True
            for j in range(n):
                if j in assigned or j == i:
                    continue
                want = target[i][j]
                nd = [c for c in domains[j] if linalg.dot(fv, c) == want]
                if not nd:
                    ok = False
                    break
                new[j] = nd
            if not ok:
                continue
            assigned[i] = v
            if solve(new, False):
                return True
            del assigned[i]
        return False

    if not solve(domains, True):
        return None
    return [[assigned[j][r] for j in range(n)] for r in range(n)]


class IsometryIndex:
    """Representatives of isometry classes, with their short vectors cached.

    ``add`` returns ``True`` when the form is new.  The optional ``key``
    must be an isometry invariant; it only narrows the search.
    """

    def __init__(self):
        self._buckets: dict[tuple, list[tuple[Form, dict]]] = {}
        self.representatives: list[Form] = []

    def _rep_pool(self, entry, bound):
        f, pools = entry
        if bound not in pools:
            pools[bound] = _pool(f, bound)
        return pools[bound]

    def add(self, g: Form, key=()) -> bool:
        if not is_negative_definite(g):
            raise DomainError("not-negative-definite", "isometry test needs negative-definite forms")
        n = g.rank
        det = linalg.determinant(g.gram) if n else 1
        bucket = self._buckets.setdefault((key, n, det, is_even(g)), [])
        if bucket and n:
            target, _ = _reduced_target(g)
            bound = max(-target[i][i] for i in range(n))
            counts = _counts(_pool(g, bound))
            for entry in bucket:
                pool = self._rep_pool(entry, bound)
                if _counts(pool) == counts and _backtrack(entry[0], target, pool) is not None:
                    return False
        elif bucket:
            return False
        bucket.append((g, {}))
        self.representatives.append(g)
        return True
