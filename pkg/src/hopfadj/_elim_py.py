"""Pure-Python elimination kernels.

``rref_modp_dense`` has a Cython twin in ``_elim_c.pyx`` with the same
signature; ``hopfadj.elim`` picks whichever imports.
"""

from collections import defaultdict
from math import gcd

import numpy as np


def rref_modp_dense(A, p):
    """In-place RREF of an int64 array mod p.  Returns the pivot columns;
    rows ``0..len(pivots)-1`` of ``A`` hold the reduced basis afterwards."""
    m, n = A.shape
    A %= p
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            A[rows] = (A[rows] - np.outer(col[rows], A[r])) % p
        pivots.append(c)
        r += 1
    return pivots


def rref_modp_sparse(rows, p):
    """RREF of a list of sparse rows ``{col: value}`` mod p.

    Pivot rows are kept fully reduced throughout, so each incoming row needs
    a single pass.  Returns ``(pivots, rows)`` sorted by pivot column.
    """
    piv = {}
    occ = defaultdict(set)  # non-pivot column -> pivot cols whose row touches it
    for src in rows:
        r = {}
        for k, v in src.items():
            v %= p
            if v:
                r[k] = v
        for k in [k for k in r if k in piv]:
            c = r.pop(k)
            for kk, vv in piv[k].items():
                if kk == k:
                    continue
                nv = (r.get(kk, 0) - c * vv) % p
                if nv:
                    r[kk] = nv
                else:
                    r.pop(kk, None)
        if not r:
            continue
        pc = min(r)
        inv = pow(r[pc], -1, p)
        if inv != 1:
            r = {k: v * inv % p for k, v in r.items()}
        for oc in occ.pop(pc, ()):
            row = piv[oc]
            mult = row.pop(pc)
            for k, v in r.items():
                if k == pc:
                    continue
                nv = (row.get(k, 0) - mult * v) % p
                if nv:
                    if k not in row:
                        occ[k].add(oc)
                    row[k] = nv
                elif k in row:
                    del row[k]
                    occ[k].discard(oc)
        piv[pc] = r
        for k in r:
            if k != pc:
                occ[k].add(pc)
    order = sorted(piv)
    return order, [piv[c] for c in order]


def _primitive(r):
    g = 0
    for v in r.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = r[min(r)]
    if lead < 0:
        g = -g
    if g != 1:
        r = {k: v // g for k, v in r.items()}
    return r


def rref_int_sparse(rows):
    """Fraction-free RREF over Z (i.e. over Q) of integer sparse rows.

    Rows are kept primitive with positive pivots; no division happens until
    the caller normalises pivots.  Returns ``(pivots, rows)`` with integer
    rows whose pivot entries are not yet 1.
    """
    piv = {}
    occ = defaultdict(set)
    for src in rows:
        r = {k: v for k, v in src.items() if v}
        if not r:
            continue
        hit = [k for k in r if k in piv]
        for k in hit:
            b = r.get(k)
            if not b:
                continue
            prow = piv[k]
            a = prow[k]
            g = gcd(a, b)
            a //= g
            b //= g
            if a != 1:
                r = {kk: a * vv for kk, vv in r.items()}
            for kk, vv in prow.items():
                nv = r.get(kk, 0) - b * vv
                if nv:
                    r[kk] = nv
                else:
                    r.pop(kk, None)
        if not r:
            continue
        r = _primitive(r)
        pc = min(r)
        a = r[pc]
        for oc in occ.pop(pc, ()):
            row = piv[oc]
            b = row[pc]
            g = gcd(a, b)
            ra, rb = a // g, b // g
            new = {kk: ra * vv for kk, vv in row.items()}
            for kk, vv in r.items():
                nv = new.get(kk, 0) - rb * vv
                if nv:
                    new[kk] = nv
                else:
                    new.pop(kk, None)
            new = _primitive(new)
            for kk in row:
                if kk != oc and kk not in new:
                    occ[kk].discard(oc)
            for kk in new:
                if kk != oc and kk not in row:
                    occ[kk].add(oc)
            piv[oc] = new
        piv[pc] = r
        for k in r:
            if k != pc:
                occ[k].add(pc)
    order = sorted(piv)
    return order, [piv[c] for c in order]
