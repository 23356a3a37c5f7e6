"""Command-line front end: ``filliform <group> <command> [options]``.

Every command prints one JSON object (or a key/value table) on stdout.
Exit status is 0 on success, 1 when the input is outside an operation's
domain, and 2 for unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import coeff, ledger, linalg, surgery
from . import serialize as ser
from .errors import DomainError, InconsistencyError
from .lattice import (
    adjunction_genus,
    complement_quotient,
    invariants,
    is_isometric,
    minimal_part,
    root_system,
    shadow,
)

THREADS_ENV = "FILLIFORM_THREADS"


class InputError(Exception):
    pass


def _load(path):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg})") from exc


def _json_arg(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: invalid JSON ({exc.msg})") from exc


def _forms(args, count):
    forms = [ser.standard_from_name(s) for s in args.standard or []]
    forms += [ser.form_from_doc(_load(p)) for p in args.inputs]
    if len(forms) != count:
        raise InputError(f"expected {count} form(s), got {len(forms)}")
    return forms


def _single_doc(args):
    if len(args.inputs) != 1:
        raise InputError("expected exactly one input document")
    return _load(args.inputs[0])


def _manifolds(args):
    out = [ledger.builtin(name) for name in args.manifold or []]
    out += [ser.manifold_from_doc(_load(p)) for p in args.inputs]
    return out


def _one_manifold(args):
    ms = _manifolds(args)
    if len(ms) != 1:
        raise InputError(f"expected one manifold, got {len(ms)}")
    return ms[0]


# --- form -------------------------------------------------------------------


def cmd_form(args):
    op = args.op
    if op == "isometric":
        f, g = _forms(args, 2)
        ok, w = is_isometric(f, g)
        return {"isometric": ok, "witness": w}
    (f,) = _forms(args, 1)
    if op == "invariants":
        inv = invariants(f)
        return {
            "rank": inv.rank,
            "signature": list(inv.signature),
            "det": inv.det,
            "parity": inv.parity,
            "definiteness": inv.definiteness,
        }
    if op == "shadow":
        st = shadow(f)
        return {"s": ser.rational(st.s), "s_bar": ser.rational(st.s_bar), "witness": list(st.witness.coords)}
    if op == "roots":
        rs = root_system(f)
        return {
            "label": rs.label(),
            "components": [[fam, k] for fam, k in rs.components],
            "root_count": rs.root_count,
            "spans_full_rank": rs.spans_full_rank,
        }
    if op == "minimal":
        m, part = minimal_part(f)
        return {"m": m, "form": ser.form_to_doc(part)}
    if op == "quotient":
        x = ser.int_vector(_json_arg(args.vector, "--x"), "--x")
        return {"form": ser.form_to_doc(complement_quotient(f, x))}
    if op == "adjunction":
        c = ser.int_vector(_json_arg(args.vector, "--x"), "--x")
        return {"genus": adjunction_genus(f, c)}
    raise InputError(f"unknown form command {op}")


# --- surgery ------------------------------------------------------------------


def cmd_surgery(args):
    doc = _single_doc(args)
    op = args.op
    if op == "homology":
        h = surgery.homology(ser.link_from_doc(doc))
        return {"b1": h.b1, "torsion": list(h.torsion_factors)}
    k = ser.knot_from_doc(doc)
    if op == "classify":
        return {"case": surgery.classify(k)}
    if op == "b2":
        w = surgery.cobordism_b2(k)
        return {"case": w.case, "b2_plus": w.b2_plus, "b2_minus": w.b2_minus, "b2_zero": w.b2_zero}
    if op == "slope":
        s = surgery.zero_slope(k)
        return {"d": s.d, "lambda0": list(s.lambda0), "mu_dot_lambda0": s.mu_dot_lambda0}
    if op == "dual":
        return ser.knot_to_doc(surgery.dual_knot(k))
    if op == "lk":
        return {"lk": ser.rational(surgery.rational_linking(k))}
    raise InputError(f"unknown surgery command {op}")


# --- ledger ---------------------------------------------------------------------


def _verdict_doc(v: ledger.FillingVerdict) -> dict:
    cov = list(v.violating_covector.coords) if v.violating_covector else None
    return {"admissible": v.admissible, "margin": ser.rational(v.margin), "violating_covector": cov, "reason": v.reason}


def cmd_ledger(args):
    op = args.op
    if op == "embed":
        if not args.y0 or not args.p:
            raise InputError("embed needs --y0 and --p")
        lo, hi = ledger.embedding_range(ledger.builtin(args.y0), ledger.builtin(args.p))
        return {"n_min": lo, "n_max": hi}
    if op == "sum":
        return ser.manifold_to_doc(ledger.connected_sum(_manifolds(args)))
    m = _one_manifold(args)
    if op == "delta":
        return {"name": m.name, "delta": ser.rational(ledger.delta(m))}
    if op == "reverse":
        return ser.manifold_to_doc(ledger.reverse(m))
    if op == "check":
        if len(args.standard or []) + (1 if args.form else 0) != 1:
            raise InputError("check needs one form via --standard or --form")
        f = ser.standard_from_name(args.standard[0]) if args.standard else ser.form_from_doc(_load(args.form))
        return _verdict_doc(ledger.check_filling(m, f))
    if op == "enumerate":
        forms = ledger.enumerate_even_candidates(m, args.max_rank)
        return {
            "manifold": ser.manifold_to_doc(m),
            "max_rank": args.max_rank,
            "forms": [dict(ser.form_to_doc(f), root_system=root_system(f).label()) for f in forms],
        }
    raise InputError(f"unknown ledger command {op}")


# --- alg ----------------------------------------------------------------------------


def cmd_alg(args):
    op = args.op
    doc = _single_doc(args)
    if not isinstance(doc, dict):
        raise InputError("document must be an object")
    if op == "kunneth":
        g = ser.graded_from_doc(doc)
        return ser.graded_to_doc(coeff.kunneth_s1s2(g, args.copies))
    if "matrix" not in doc:
        raise InputError("document needs 'matrix'")
    if op == "snf" and args.ring == "integer":
        rows = ser.int_matrix(doc["matrix"])
        ncols = doc.get("ncols", len(rows[0]) if rows else 0)
        return {"factors": list(linalg.smith_normal_form(rows, ncols).d)}
    rows = ser.laurent_matrix_from_doc(doc["matrix"])
    ncols = doc.get("ncols", len(rows[0]) if rows else 0)
    if op == "snf":
        return {"factors": [str(f) for f in coeff.laurent_snf(rows, ncols).factors]}
    if op == "tor":
        tor = coeff.koszul_tor(rows, doc.get("coefficients", args.coefficients), ncols)
        return {"coefficients": tor.coefficients, "ranks": list(tor.ranks), "torsion": [str(f) for f in tor.torsion]}
    raise InputError(f"unknown alg command {op}")


# --- plumbing ---------------------------------------------------------------------


GROUPS = {
    "form": (cmd_form, ["invariants", "shadow", "roots", "minimal", "isometric", "quotient", "adjunction"]),
    "surgery": (cmd_surgery, ["homology", "classify", "b2", "slope", "dual", "lk"]),
    "ledger": (cmd_ledger, ["delta", "sum", "reverse", "check", "enumerate", "embed"]),
    "alg": (cmd_alg, ["tor", "snf", "kunneth"]),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a nested parser's default from overwriting an earlier flag
    common.add_argument("--format", choices=["json", "table"], default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="accepted for compatibility; every algorithm is deterministic")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS, help="log progress to stderr")

    parser = argparse.ArgumentParser(prog="filliform", description=__doc__.splitlines()[0], parents=[common])
    groups = parser.add_subparsers(dest="group", required=True)
    for name, (_, ops) in GROUPS.items():
        gp = groups.add_parser(name, parents=[common])
        sub = gp.add_subparsers(dest="op", required=True)
        for op in ops:
            p = sub.add_parser(op, parents=[common])
            p.add_argument("inputs", nargs="*", help="JSON documents ('-' for stdin)")
            if name in ("form", "ledger"):
                p.add_argument("--standard", action="append", help="standard form such as E8, D4, Gamma12, lorentz9")
            if name == "form" and op in ("quotient", "adjunction"):
                p.add_argument("--x", dest="vector", required=True, help="class as a JSON integer list")
            if name == "ledger":
                p.add_argument("--manifold", action="append", help="built-in manifold: S3, S1xS2, T3, poincare, sigma<g>")
                p.add_argument("--form", help="form document for 'check'")
                p.add_argument("--y0")
                p.add_argument("--p")
                p.add_argument("--max-rank", type=int, default=ledger.DEFAULT_MAX_RANK)
            if name == "alg":
                p.add_argument("--coefficients", choices=["trivial", "full"], default="trivial")
                p.add_argument("--ring", choices=["laurent", "integer"], default="laurent")
                p.add_argument("--copies", type=int, default=1, help="number of S1xS2 summands for kunneth")
    return parser


def _table(value, prefix="") -> list[str]:
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            lines.extend(_table(v, f"{prefix}{k}." if isinstance(v, dict) else f"{prefix}{k}"))
        return lines
    return [f"{prefix.rstrip('.')}\t{json.dumps(value, separators=(',', ':'))}"]


def _emit(doc, fmt):
    if fmt == "table":
        print("\n".join(_table(doc)))
    else:
        print(json.dumps(doc, separators=(", ", ": ")))


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    if not raw.isdigit() or int(raw) < 1:
        raise InputError(f"{THREADS_ENV} must be a positive integer")
    return int(raw)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.format = getattr(args, "format", "json")
    if getattr(args, "verbose", False):
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr, format="%(name)s: %(message)s")
    handler = GROUPS[args.group][0]
    try:
        _threads()  # validated only: the library runs serially
        doc = handler(args)
    except DomainError as exc:
        _emit({"error": {"kind": exc.kind, "detail": exc.detail}}, args.format)
        return 1
    except InconsistencyError as exc:
        _emit({"error": {"kind": "inconsistency", "detail": str(exc)}}, args.format)
        return 1
    except (InputError, ser.DocumentError, TypeError, KeyError) as exc:
        print(f"filliform: {exc}", file=sys.stderr)
        return 2
    _emit(doc, args.format)
    return 0


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
