"""Command-line front end: ``hopfadj <subcommand> ...``.

Exit codes: 0 success, 1 domain error (error JSON on stdout), 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import time

from . import __version__
from . import linalg as la
from . import poly
from .acceptance import SUITES, run_suite
from .cohomology import cochain_from_vector, cochain_json, cohomology, differential_matrix
from .constructions import builtin, group_from_spec
from .deformation import check_deformed_ybe, residuals
from .errors import FieldMismatch, HopfAdjError, ParseError
from .groupoid import (check_rack_2cocycle, check_rack_3cocycle, cochain_as_array,
                       conjugate_groupoid, groupoid_cocycle_space, rack_2cocycle_from,
                       rack_3cocycle_from)
from .hopf import check_adjoint_conditions, check_hopf_axioms, check_ybe, r_matrix_inverse, table
from .scalars import field_from_spec
from .serialize import algebra_from_json, dumps, load_json, matrix_to_json


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# --- inputs -----------------------------------------------------------------------

def load_algebra(src, field_desc):
    if src.startswith("builtin:"):
        F = field_from_spec(field_desc or "Q")
        return builtin(src, F), {"algebra": src, "field": F.descriptor}
    data = load_json(src)
    H = algebra_from_json(data)
    if field_desc and field_from_spec(field_desc) != H.field:
        raise FieldMismatch(f"--field {field_desc} but {src} is over {H.field.descriptor}")
    digest = hashlib.sha256(json.dumps(data, sort_keys=True).encode()).hexdigest()
    return H, {"algebra": os.path.basename(src), "algebra_sha256": digest, "field": H.field.descriptor}


def load_group(spec):
    G = group_from_spec(spec)
    info = {"group": spec}
    if os.path.exists(str(spec)):
        info = {"group": os.path.basename(spec), "group_sha256": hashlib.sha256(
            json.dumps(G.to_json(), sort_keys=True).encode()).hexdigest()}
    return G, info


def _digest(inputs):
    return hashlib.sha256(json.dumps(inputs, sort_keys=True).encode()).hexdigest()[:16]


def _dump(path, matrix):
    with open(path, "w") as fh:
        fh.write(dumps(matrix_to_json(matrix)))


# --- subcommands ---------------------------------------------------------------------

def cmd_check(a):
    H, inputs = load_algebra(a.algebra, a.field)
    rep = check_hopf_axioms(H)
    c1, c2 = check_adjoint_conditions(H)
    return inputs, {"dim": H.dim, "labels": H.labels, "axioms": rep.to_json(), "hopf": rep.ok,
                    "adjoint_conditions": [c1, c2]}


def cmd_ad_table(a):
    H, inputs = load_algebra(a.algebra, a.field)
    return inputs, {"labels": H.labels, "ad": table(H, H.ad)}


def cmd_ybe(a):
    H, inputs = load_algebra(a.algebra, a.field)
    R = H.R
    Ri = r_matrix_inverse(H)
    one = la.identity(H.field, H.dim, 2)
    if a.dump_matrix:
        _dump(a.dump_matrix, R)
    return inputs, {"ybe": check_ybe(R),
                    "inverse_ok": la.compose(Ri, R) == one and la.compose(R, Ri) == one}


def cmd_charpoly(a):
    H, inputs = load_algebra(a.algebra, a.field)
    F = H.field
    R = H.R
    cp, mp = la.char_poly(R), la.min_poly(R)
    if a.dump_matrix:
        _dump(a.dump_matrix, R)
    return inputs, {
        "charpoly": poly.factored_str(F, cp),
        "minpoly": poly.factored_str(F, mp),
        "det": F.to_json(la.determinant(R)),
        "charpoly_coeffs": [F.to_json(c) for c in cp],
        "minpoly_coeffs": [F.to_json(c) for c in mp],
    }


def cmd_cohomology(a):
    H, inputs = load_algebra(a.algebra, a.field)
    inputs["degree"] = a.degree
    r = cohomology(H, a.degree, basis=a.basis, allow_large=a.allow_large)
    a._labels = H.labels
    if a.dump_matrix:
        _dump(a.dump_matrix, differential_matrix(H, a.degree))
    return inputs, r.to_json(H, with_basis=a.basis)


def cmd_deform(a):
    H, inputs = load_algebra(a.algebra, a.field)
    inputs.update(cocycle_index=a.cocycle_index, random_combos=a.random_combos, seed=a.seed)
    basis = cohomology(H, 2, basis=True).basis
    if not 0 <= a.cocycle_index < len(basis):
        raise ParseError(f"--cocycle-index must be in 0..{len(basis) - 1} (dim Z2 = {len(basis)})")
    phis = [cochain_from_vector(H, 2, v)[0] for v in basis]
    phi = phis[a.cocycle_index]
    res = residuals(H, phi)
    out = {"dimZ2": len(basis), "cocycle": cochain_json(H, 2, basis[a.cocycle_index])[0],
           "ybe": check_deformed_ybe(H, phi), "residual_norms": res.norms()}
    if a.random_combos:
        rng = random.Random(a.seed)
        ok = 0
        for _ in range(a.random_combos):
            combo = None
            for p in phis:
                t = p.scale(H.field.norm(rng.randint(-5, 5)))
                combo = t if combo is None else combo + t
            ok += check_deformed_ybe(H, combo)
        out["random_combos_ybe"] = [ok, a.random_combos]
    return inputs, out


def _label_table(G, arr):
    import numpy as np
    arr = np.asarray(arr, dtype=object)

    def rec(x):
        if isinstance(x, np.ndarray):
            return {G.labels[i]: rec(x[i]) for i in range(x.shape[0])}
        return x
    return rec(arr)


def cmd_groupoid(a):
    G, inputs = load_group(a.group)
    F = field_from_spec(a.field or "Q")
    inputs.update(field=F.descriptor, degree=a.degree)
    Gd = conjugate_groupoid(G)
    sp = groupoid_cocycle_space(Gd, a.degree, F)
    out = {"dim": sp.dim, "objects": len(Gd.objects), "morphisms": Gd.n_morphisms}
    if a.basis:
        out["basis"] = [_jsonify(F, _label_table(G, cochain_as_array(G, Gd, a.degree, v, F)))
                        for v in sp.vectors]
    return inputs, out


def _jsonify(F, obj):
    if isinstance(obj, dict):
        return {k: _jsonify(F, v) for k, v in obj.items()}
    return F.to_json(obj)


def cmd_quandle(a):
    G, inputs = load_group(a.group)
    F = field_from_spec(a.field or "Q")
    inputs.update(field=F.descriptor, degree=a.degree)
    Gd = conjugate_groupoid(G)
    sp = groupoid_cocycle_space(Gd, a.degree, F)
    tables, ok = [], 0
    for v in sp.vectors:
        arr = cochain_as_array(G, Gd, a.degree, v, F)
        if a.degree == 2:
            psi = rack_2cocycle_from(G, arr, F)
            ok += check_rack_2cocycle(G, psi, F)
            tables.append(_jsonify(F, _label_table(G, psi)))
        else:
            theta = rack_3cocycle_from(G, arr, F)
            ok += check_rack_3cocycle(G, theta, F)
            tables.append(_jsonify(F, _label_table(G, theta)))
    name = "psi" if a.degree == 2 else "theta"
    return inputs, {"dim": sp.dim, name: tables, "rack_cocycles_verified": [ok, sp.dim]}


def cmd_accept(a):
    a._lines = []
    outcomes = run_suite(a.suite, echo=a._lines.append)
    res = {"suite": a.suite,
           "rows": [{"criterion": o.number, "title": o.title, "status": "PASS" if o.passed else "FAIL",
                     "expected": str(o.expected), "computed": str(o.computed),
                     "seconds": round(o.seconds, 3)} for o in outcomes],
           "passed": sum(o.passed for o in outcomes), "total": len(outcomes)}
    return {"suite": a.suite}, res


COMMANDS = {
    "check": cmd_check,
    "ad-table": cmd_ad_table,
    "ybe": cmd_ybe,
    "charpoly": cmd_charpoly,
    "cohomology": cmd_cohomology,
    "deform": cmd_deform,
    "groupoid": cmd_groupoid,
    "quandle-from-groupoid": cmd_quandle,
    "accept": cmd_accept,
}


def build_parser():
    p = _Parser(prog="hopfadj", description="Exact adjoint cohomology of finite-dimensional Hopf algebras.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, algebra=True, group=False):
        if algebra:
            sp.add_argument("--algebra", required=True,
                            help="builtin:kg:<group>, builtin:fun:<group>, builtin:superline or a JSON file")
        if group:
            sp.add_argument("--group", required=True, help="c<n>, s<n>, d<n> or a JSON file")
        sp.add_argument("--field", default=None, help='"Q" or "Fp:<p>" (default Q)')
        sp.add_argument("--format", choices=["json", "text"], default="json")
        sp.add_argument("--output", default=None, help="write the report here instead of stdout")

    for name in ("check", "ad-table"):
        common(sub.add_parser(name))
    for name in ("ybe", "charpoly"):
        sp = sub.add_parser(name)
        common(sp)
        sp.add_argument("--dump-matrix", default=None, metavar="PATH", help="write R_ad as JSON triples")
    sp = sub.add_parser("cohomology")
    common(sp)
    sp.add_argument("--degree", type=int, choices=[1, 2, 3], required=True)
    sp.add_argument("--basis", action="store_true", help="include a cocycle basis")
    sp.add_argument("--allow-large", action="store_true", help="lift the default size policy")
    sp.add_argument("--dump-matrix", default=None, metavar="PATH", help="write D_n as JSON triples")
    sp = sub.add_parser("deform")
    common(sp)
    sp.add_argument("--cocycle-index", type=int, required=True)
    sp.add_argument("--random-combos", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    sp = sub.add_parser("groupoid")
    common(sp, algebra=False, group=True)
    sp.add_argument("--degree", type=int, choices=[1, 2, 3], required=True)
    sp.add_argument("--basis", action="store_true")
    sp = sub.add_parser("quandle-from-groupoid")
    common(sp, algebra=False, group=True)
    sp.add_argument("--degree", type=int, choices=[2, 3], required=True)
    sp = sub.add_parser("accept")
    sp.add_argument("suite", nargs="?", default="all", choices=sorted(SUITES))
    sp.add_argument("--format", choices=["json", "text"], default="text")
    sp.add_argument("--output", default=None)
    return p


def _text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            lines.append(_text(v, indent) if isinstance(v, (dict, list)) else f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return "\n".join(lines)


def _grid(labels, rows):
    """Row/column layout of a 2-argument table (first argument = row)."""
    w = max([len(l) for l in labels] + [len(str(v)) for r in rows.values() for v in r.values()] + [1])
    head = " " * w + " | " + " | ".join(l.rjust(w) for l in labels)
    out = [head, "-" * len(head)]
    for r in labels:
        out.append(r.rjust(w) + " | " + " | ".join(str(rows[r][c]).rjust(w) for c in labels))
    return "\n".join(out)


def _cocycle_grids(labels, result):
    head = {k: v for k, v in result.items() if k != "basis"}
    out = [_text(head)]
    for i, blocks in enumerate(result["basis"]):
        for j, tab in enumerate(blocks):
            out.append(f"\ncocycle {i}, block {j}:")
            keys = list(tab)
            if keys and all(k.count("⊗") == 1 for k in keys):
                rows = {r: {c: tab.get(f"{r}⊗{c}", "0") for c in labels} for r in labels}
                out.append(_grid(labels, rows))
            else:
                out.append(_text(tab, 1))
    return "\n".join(out)


def render_text(command, result, a=None):
    if command == "ad-table":
        return _grid(result["labels"], result["ad"])
    if command == "cohomology" and "basis" in result:
        return _cocycle_grids(a._labels, result)
    if command == "accept":
        return "\n".join(a._lines + [f"{result['passed']}/{result['total']} criteria passed"])
    return _text(result)


def run(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    t = time.perf_counter()
    try:
        inputs, result = COMMANDS[a.command](a)
        report = {"command": a.command, "inputs": inputs, "inputs_digest": _digest(inputs),
                  "result": result, "wall_time": round(time.perf_counter() - t, 6),
                  "version": __version__}
        code = 0
        if a.command == "accept" and result["passed"] != result["total"]:
            code = 1
    except HopfAdjError as exc:
        report = {"command": a.command, "error": exc.to_json(), "version": __version__}
        code = 1
    except OSError as exc:
        report = {"command": a.command, "error": {"code": "IOError", "message": str(exc)},
                  "version": __version__}
        code = 1
    if "error" not in report and a.format == "text":
        text = render_text(a.command, report["result"], a)
    else:
        text = dumps(report)
    if getattr(a, "output", None) and "error" not in report:
        with open(a.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=stdout)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
