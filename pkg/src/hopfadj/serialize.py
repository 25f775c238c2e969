"""JSON layouts for algebras, groups and matrices.

Algebra layout (d = dim, all scalars per the field: "num/den" strings over Q,
integers over F_p; plain integers are also accepted on input)::

    {"field": "Q", "dim": d, "labels": [...],
     "mu":       d x d x d,  mu[i][j][k]    = coeff of e_k in e_i e_j
     "delta":    d x d x d,  delta[i][j][k] = coeff of e_j (x) e_k in Delta(e_i)
     "unit":     d,          coordinates of eta(1)
     "counit":   d,          counit[i] = eps(e_i)
     "antipode": d x d,      antipode[i][j] = coeff of e_j in S(e_i)}
"""

from __future__ import annotations

import json
import os

from .errors import MalformedAlgebra, ParseError
from .hopf import HopfAlgebra
from .linalg import LinearMap, covector_map
from .scalars import field_from_spec


def algebra_to_json(H: HopfAlgebra) -> dict:
    F, d = H.field, H.dim
    s = F.to_json

    def ent(m, out_t, in_t):
        return s(m.entry(out_t, in_t))

    return {
        "field": F.descriptor,
        "dim": d,
        "labels": list(H.labels),
        "mu": [[[ent(H.mu, (k,), (i, j)) for k in range(d)] for j in range(d)] for i in range(d)],
        "delta": [[[ent(H.delta, (j, k), (i,)) for k in range(d)] for j in range(d)] for i in range(d)],
        "unit": [s(H.unit.cols[0].get(i, 0)) for i in range(d)],
        "counit": [s(H.counit.cols[i].get(0, 0)) for i in range(d)],
        "antipode": [[ent(H.antipode, (j,), (i,)) for j in range(d)] for i in range(d)],
    }


def _shape(name, x, dims):
    if len(dims) == 0:
        return
    if not isinstance(x, list) or len(x) != dims[0]:
        raise MalformedAlgebra(f"'{name}' must have shape {dims}")
    for y in x:
        _shape(name, y, dims[1:])


def algebra_from_json(data: dict, validate=True) -> HopfAlgebra:
    try:
        F = field_from_spec(data["field"])
        d = int(data["dim"])
        labels = data.get("labels") or [f"e{i}" for i in range(d)]
        mu, delta = data["mu"], data["delta"]
        unit, counit, S = data["unit"], data["counit"], data["antipode"]
    except KeyError as exc:
        raise MalformedAlgebra(f"missing key {exc.args[0]!r}") from None
    if len(labels) != d:
        raise MalformedAlgebra("label count does not match dim")
    for name, x, dims in (("mu", mu, (d, d, d)), ("delta", delta, (d, d, d)),
                          ("unit", unit, (d,)), ("counit", counit, (d,)), ("antipode", S, (d, d))):
        _shape(name, x, dims)
    c = F.coerce
    mu_m = LinearMap.from_function(F, d, 2, 1, lambda t: {(k,): c(mu[t[0]][t[1]][k]) for k in range(d)})
    de_m = LinearMap.from_function(
        F, d, 1, 2, lambda t: {(j, k): c(delta[t[0]][j][k]) for j in range(d) for k in range(d)})
    s_m = LinearMap.from_function(F, d, 1, 1, lambda t: {(j,): c(S[t[0]][j]) for j in range(d)})
    eps = covector_map(F, d, counit)
    return HopfAlgebra(F, labels, mu_m, de_m, [c(u) for u in unit], eps, s_m,
                       name=data.get("name"), validate=validate)


def load_json(path):
    if not os.path.exists(path):
        raise ParseError(f"no such file: {path}")
    try:
        with open(path) as fh:
            return json.load(fh)
    except ValueError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def dumps(obj) -> str:
    """Canonical JSON text (sorted keys) for byte-stable output."""
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2)


def matrix_to_json(m) -> dict:
    """``{"shape": [rows, cols], "field", "entries": [[row, col, scalar], ...]}``."""
    F = m.field
    return {
        "shape": [m.nrows, m.ncols],
        "field": F.descriptor,
        "entries": [[r, c, F.to_json(v)] for r, c, v in m.to_triples()],
    }
