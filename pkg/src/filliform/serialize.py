"""JSON documents for forms, links, knots, manifolds and graded ranks.

Rationals travel as reduced ``"p/q"`` strings (``q = 1`` written as ``"p"``)
so nothing passes through a float.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .coeff import GradedRankVector, Laurent
from .errors import DomainError
from .lattice import Form, standard_form
from .ledger import ManifoldClass, builtin
from .surgery import FramedLink, KnotInPresentation


class DocumentError(ValueError):
    """A document is malformed (as opposed to mathematically out of range)."""


def rational(q) -> str:
    return str(Fraction(q))


def parse_rational(text) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (int, str)):
        raise DocumentError(f"expected a rational as int or 'p/q' string, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"cannot read rational {text!r}") from exc


def int_matrix(rows, what="matrix"):
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise DocumentError(f"{what} must be a list of lists")
    for r in rows:
        for x in r:
            if isinstance(x, bool) or not isinstance(x, int):
                raise DocumentError(f"{what} entries must be integers")
    return rows


def int_vector(v, what="vector"):
    if not isinstance(v, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in v):
        raise DocumentError(f"{what} must be a list of integers")
    return v


_STANDARD = re.compile(r"^([a-z]+?)[_ ]?(\d*)$")
_FAMILIES = {"e": "e8", "e8": "e8", "a": "a", "d": "d", "gamma": "gamma", "lorentz": "lorentz",
             "cube": "cube", "h": "h", "hyperbolic": "h", "z": "cube"}


def standard_from_name(name: str, sign: int = -1) -> Form:
    """``E8``, ``D4``, ``A3``, ``Gamma12``, ``lorentz9``, ``cube5``/``Z5`` or ``H``."""
    m = _STANDARD.match(name.strip().lower())
    if not m or m.group(1) not in _FAMILIES:
        raise DomainError("unknown-form", f"unknown standard form {name!r}")
    fam, k = _FAMILIES[m.group(1)], m.group(2)
    if fam == "e8" and m.group(1) == "e" and k != "8":
        raise DomainError("unknown-form", f"unknown standard form {name!r}")
    return standard_form(fam, int(k) if k and fam != "e8" else None, sign=sign)


def form_to_doc(f: Form) -> dict:
    return {"gram": f.rows()}


def form_from_doc(doc) -> Form:
    if not isinstance(doc, dict):
        raise DocumentError("form document must be an object")
    if set(doc) == {"form"}:  # output of ``form quotient``
        return form_from_doc(doc["form"])
    if "gram" in doc:
        return Form(int_matrix(doc["gram"], "gram"))
    if "standard" in doc:
        name = str(doc["standard"])
        if "k" in doc:
            name += str(doc["k"])
        return standard_from_name(name, doc.get("sign", -1))
    raise DocumentError("form document needs 'gram' or 'standard'")


def link_from_doc(doc) -> FramedLink:
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise DocumentError("link document needs 'matrix'")
    return FramedLink(int_matrix(doc["matrix"]), doc.get("names"))


def link_to_doc(link: FramedLink) -> dict:
    return {"matrix": [list(r) for r in link.matrix], "names": list(link.names)}


def knot_from_doc(doc) -> KnotInPresentation:
    link = link_from_doc(doc)
    ell = int_vector(doc.get("ell", [0] * link.size), "ell")
    framing = doc.get("framing", 0)
    if isinstance(framing, bool) or not isinstance(framing, int):
        raise DocumentError("framing must be an integer")
    return KnotInPresentation(link, ell, framing)


def knot_to_doc(k: KnotInPresentation) -> dict:
    doc = link_to_doc(k.link)
    doc.update(ell=list(k.ell), framing=k.framing)
    return doc


def manifold_to_doc(m: ManifoldClass) -> dict:
    return {
        "name": m.name,
        "b1": m.b1,
        "torsion": m.torsion_order,
        "ud": rational(m.ud),
        "ud_rev": rational(m.ud_rev),
        "provenance": m.provenance,
    }


def manifold_from_doc(doc) -> ManifoldClass:
    if isinstance(doc, str):
        return builtin(doc)
    if not isinstance(doc, dict):
        raise DocumentError("manifold document must be an object or a built-in name")
    if set(doc) == {"builtin"}:
        return builtin(str(doc["builtin"]))
    try:
        return ManifoldClass(
            str(doc["name"]),
            int(doc["b1"]),
            int(doc.get("torsion", 1)),
            parse_rational(doc["ud"]),
            parse_rational(doc["ud_rev"]),
            doc.get("provenance", "user"),
        )
    except KeyError as exc:
        raise DocumentError(f"manifold document lacks {exc.args[0]!r}") from exc


def laurent_matrix_from_doc(rows):
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise DocumentError("matrix must be a list of lists")
    try:
        return [[x if isinstance(x, int) and not isinstance(x, bool) else Laurent.parse(str(x)) for x in r] for r in rows]
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def graded_to_doc(g: GradedRankVector) -> dict:
    return {
        "ranks": [[rational(d), r] for d, r in g.ranks],
        "towers": [[rational(b), tag] for b, tag in g.towers],
    }


def graded_from_doc(doc) -> GradedRankVector:
    if not isinstance(doc, dict):
        raise DocumentError("graded document must be an object")
    ranks = [(parse_rational(d), int(r)) for d, r in doc.get("ranks", [])]
    towers = [(parse_rational(b), str(t)) for b, t in doc.get("towers", [])]
    return GradedRankVector(ranks, towers)
