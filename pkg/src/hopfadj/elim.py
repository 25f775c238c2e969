"""Row reduction front end: picks a kernel by field and density.

Over F_p a matrix with density >= 10% (and a size that fits in memory) goes
to the dense kernel, compiled when ``_elim_c`` is built; everything else uses
sparse pivot rows.  Over Q rows are cleared of denominators and reduced
fraction-free.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

from . import _elim_py

try:
    from . import _elim_c
    rref_modp_dense = _elim_c.rref_modp_dense
    BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on the build
    _elim_c = None
    rref_modp_dense = _elim_py.rref_modp_dense
    BACKEND = "python"

DENSE_DENSITY = 0.10
DENSE_MAX_ENTRIES = 4_000_000


def use_backend(name):
    """Force the dense kernel ("cython" or "python"); used by benchmarks."""
    global rref_modp_dense, BACKEND
    if name == "cython":
        if _elim_c is None:
            raise RuntimeError("compiled kernel not available")
        rref_modp_dense = _elim_c.rref_modp_dense
    elif name == "python":
        rref_modp_dense = _elim_py.rref_modp_dense
    else:
        raise ValueError(name)
    BACKEND = name


def _components(rows):
    """Split row indices into blocks that share no column (rank is additive)."""
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    first = {}
    for i, r in enumerate(rows):
        parent[i] = i
        for c in r:
            j = first.setdefault(c, i)
            if j != i:
                a, b = find(i), find(j)
                if a != b:
                    parent[a] = b
    blocks = {}
    for i, r in enumerate(rows):
        if r:
            blocks.setdefault(find(i), []).append(i)
    return list(blocks.values())


def _rref_modp(rows, ncols, p):
    rows = [r for r in rows if r]
    if not rows:
        return [], []
    nnz = sum(len(r) for r in rows)
    m = len(rows)
    if nnz >= DENSE_DENSITY * m * ncols and m * ncols <= DENSE_MAX_ENTRIES and p < 2**31:
        A = np.zeros((m, ncols), dtype=np.int64)
        for i, r in enumerate(rows):
            for c, v in r.items():
                A[i, c] = v
        pivots = rref_modp_dense(A, p)
        out = []
        for i, pc in enumerate(pivots):
            nz = np.flatnonzero(A[i])
            out.append({int(c): int(A[i, c]) for c in nz})
        return list(pivots), out
    rows = sorted(rows, key=len)
    return _elim_py.rref_modp_sparse(rows, p)


def _int_rows(rows):
    out = []
    for r in rows:
        if not r:
            continue
        den = 1
        for v in r.values():
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
        if den == 1:
            out.append({k: int(v) for k, v in r.items() if v})
        else:
            out.append({k: int(v * den) for k, v in r.items() if v})
    return out


def rref(field, rows, ncols):
    """Canonical reduced row-echelon form of the span of ``rows``.

    Returns ``(pivots, rows)``; each row has a 1 at its pivot, the pivot is
    its leftmost entry, and pivot columns vanish in every other row.
    """
    if field.p is not None:
        return _rref_modp(rows, ncols, field.p)
    irows = sorted(_int_rows(rows), key=len)
    pivots, red = _elim_py.rref_int_sparse(irows)
    out = []
    for pc, r in zip(pivots, red):
        a = r[pc]
        out.append({k: field.norm(Fraction(v, a)) for k, v in r.items()})
    return pivots, out


def rank(field, rows, ncols):
    rows = [r for r in rows if r]
    blocks = _components(rows)
    if len(blocks) > 1:
        return sum(len(rref(field, [rows[i] for i in b], ncols)[0]) for b in blocks)
    return len(rref(field, rows, ncols)[0])


def kernel_vectors(field, rows, ncols):
    """A basis of the null space ``{x : A x = 0}`` for A given by its rows."""
    pivots, red = rref(field, rows, ncols)
    pset = set(pivots)
    vecs = {f: {f: field.one} for f in range(ncols) if f not in pset}
    for pc, r in zip(pivots, red):
        for k, v in r.items():
            if k != pc:
                vecs[k][pc] = field.norm(-v)
    return [vecs[f] for f in sorted(vecs)]


class IncrementalSpan:
    """Echelon basis that remembers how each row was built from the inputs."""

    def __init__(self, field, n):
        self.field = field
        self.n = n
        self.rows = []  # (pivot, row, combo)

    def _reduce(self, w):
        field = self.field
        w = dict(w)
        combo = {}
        for pc, row, rc in self.rows:
            c = w.get(pc)
            if not c:
                continue
            for k, v in row.items():
                w[k] = field.norm(w.get(k, 0) - c * v)
            for k, v in rc.items():
                combo[k] = field.norm(combo.get(k, 0) + c * v)
        w = {k: v for k, v in w.items() if v}
        return w, combo

    def express(self, w):
        """Coefficients of ``w`` over the added vectors, or None if independent."""
        rest, combo = self._reduce(w)
        if rest:
            return None
        return {k: v for k, v in combo.items() if v}

    def add(self, w, tag):
        field = self.field
        rest, combo = self._reduce(w)
        if not rest:
            raise ValueError("vector is dependent")
        pc = min(rest)
        inv = field.inv(rest[pc])
        row = {k: field.norm(v * inv) for k, v in rest.items()}
        # row = inv * (w - sum combo_j v_j)
        rc = {k: field.norm(-v * inv) for k, v in combo.items()}
        rc[tag] = field.norm(rc.get(tag, 0) + inv)
        self.rows.append((pc, row, rc))
