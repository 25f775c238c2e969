"""Groupoid chain complex, conjugate groupoids, and the rack/quandle cocycles
built from conjugate-groupoid cocycles.

Degree convention: a degree-n cochain is a function on C_{n-1}, the strings
(x0, f0, ..., f_{n-2}) of n-1 composable morphisms.  So degree 1 lives on
objects, degree 2 on single morphisms (the a(x, y) of a conjugate groupoid)
and degree 3 on composable pairs (c(x, y, z)).
"""

from __future__ import annotations

from itertools import product

import numpy as np

from . import elim
from .errors import NotACocycle, NotAGroupoid, UnsupportedDegree
from .linalg import Matrix, SubspaceBasis


class FiniteGroupoid:
    """Objects 0..m-1, morphisms 0..N-1 with ``source``/``target`` lists and
    ``comp[(f, g)]`` = f then g, defined when target(f) == source(g)."""

    def __init__(self, objects, source, target, comp, labels=None, name=None):
        self.objects = [str(o) for o in objects]
        self.source = list(source)
        self.target = list(target)
        self.comp = dict(comp)
        self.labels = list(labels) if labels is not None else [str(i) for i in range(len(self.source))]
        self.name = name or "groupoid"
        self._strings = {}
        self._verify()

    @property
    def n_morphisms(self):
        return len(self.source)

    def _verify(self):
        N, m = self.n_morphisms, len(self.objects)
        if len(self.target) != N:
            raise NotAGroupoid("source/target lists differ in length")
        for f in range(N):
            if not (0 <= self.source[f] < m and 0 <= self.target[f] < m):
                raise NotAGroupoid(f"morphism {self.labels[f]} has an invalid endpoint")
        out_of = [[] for _ in range(m)]
        for f in range(N):
            out_of[self.source[f]].append(f)
        self.out_of = out_of
        for f in range(N):
            for g in out_of[self.target[f]]:
                h = self.comp.get((f, g))
                if h is None:
                    raise NotAGroupoid(f"composite of {self.labels[f]}, {self.labels[g]} undefined")
                if self.source[h] != self.source[f] or self.target[h] != self.target[g]:
                    raise NotAGroupoid(f"composite of {self.labels[f]}, {self.labels[g]} has wrong endpoints")
        for (f, g) in self.comp:
            if self.target[f] != self.source[g]:
                raise NotAGroupoid(f"composite defined for non-composable {self.labels[f]}, {self.labels[g]}")
        ids = []
        for x in range(m):
            cands = [e for e in out_of[x] if self.target[e] == x
                     and all(self.comp[(e, g)] == g for g in out_of[x])
                     and all(self.comp[(f, e)] == f for f in range(N) if self.target[f] == x)]
            if not cands:
                raise NotAGroupoid(f"object {self.objects[x]} has no identity")
            ids.append(cands[0])
        self.ids = ids
        inv = []
        for f in range(N):
            s, t = self.source[f], self.target[f]
            cands = [g for g in out_of[t] if self.target[g] == s
                     and self.comp[(f, g)] == ids[s] and self.comp[(g, f)] == ids[t]]
            if not cands:
                raise NotAGroupoid(f"morphism {self.labels[f]} is not invertible")
            inv.append(cands[0])
        self.inverse = inv
        for f in range(N):
            for g in out_of[self.target[f]]:
                for h in out_of[self.target[g]]:
                    if self.comp[(self.comp[(f, g)], h)] != self.comp[(f, self.comp[(g, h)])]:
                        raise NotAGroupoid("composition is not associative",
                                           triple=[self.labels[f], self.labels[g], self.labels[h]])

    def strings(self, n):
        """Basis of C_n: tuples (x0, f0, ..., f_{n-1}) of composable morphisms."""
        if n in self._strings:
            return self._strings[n]
        if n == 0:
            out = [(x,) for x in range(len(self.objects))]
        else:
            out = []
            for s in self.strings(n - 1):
                end = s[0] if n == 1 else self.target[s[-1]]
                for f in self.out_of[end]:
                    out.append(s + (f,))
        self._strings[n] = out
        return out

    def string_index(self, n):
        key = ("idx", n)
        if key not in self._strings:
            self._strings[key] = {s: i for i, s in enumerate(self.strings(n))}
        return self._strings[key]

    def __repr__(self):
        return f"FiniteGroupoid({self.name}, {len(self.objects)} objects, {self.n_morphisms} morphisms)"


def conjugate_groupoid(G) -> FiniteGroupoid:
    """Objects G; morphism (x, y): x -> y^-1 x y, numbered x*n + y;
    (x, y)(x<|y, z) = (x, yz)."""
    n, T = G.order, G.table
    source, target, labels = [], [], []
    for x in range(n):
        for y in range(n):
            source.append(x)
            target.append(G.conj(x, y))
            labels.append(f"({G.labels[x]},{G.labels[y]})")
    comp = {}
    for x in range(n):
        for y in range(n):
            xy = G.conj(x, y)
            for z in range(n):
                comp[(x * n + y, xy * n + z)] = x * n + T[y][z]
    return FiniteGroupoid(G.labels, source, target, comp, labels=labels, name=f"conj({G.name})")


def _face(Gd, s, n):
    """Boundary of a string with n+1 morphisms as [(string, sign)]."""
    fs = s[1:]
    out = []
    out.append(((Gd.target[fs[0]],) + fs[1:], 1))
    for i in range(n):
        merged = fs[:i] + (Gd.comp[(fs[i], fs[i + 1])],) + fs[i + 2:]
        out.append(((s[0],) + merged, -1 if i % 2 == 0 else 1))
    out.append(((s[0],) + fs[:-1], 1 if n % 2 == 1 else -1))
    return out


MAX_BOUNDARY_DEGREE = 3


def boundary_matrix(Gd, n, field) -> Matrix:
    """Matrix of d: C_{n+1} -> C_n on the string bases."""
    if not 0 <= n <= MAX_BOUNDARY_DEGREE:
        raise UnsupportedDegree(f"boundary C_{n + 1} -> C_{n} is supported for n = 0..{MAX_BOUNDARY_DEGREE}")
    src = Gd.strings(n + 1)
    idx = Gd.string_index(n)
    cols = []
    for s in src:
        col = {}
        for t, sign in _face(Gd, s, n):
            r = idx[t]
            col[r] = col.get(r, 0) + sign
        cols.append({r: field.norm(v) for r, v in col.items() if field.norm(v)})
    return Matrix(field, len(idx), len(src), cols)


def groupoid_cocycle_space(Gd, n, field) -> SubspaceBasis:
    """Degree-n cocycles: functions c on C_{n-1} with c o d = 0 on C_n."""
    if n not in (1, 2, 3):
        raise UnsupportedDegree(f"groupoid cocycles are computed for degrees 1..3, not {n}")
    D = boundary_matrix(Gd, n - 1, field)
    # c o d = 0  <=>  c lies in the kernel of D^T, whose rows are the columns of D
    rows = [c for c in D.cols if c]
    return SubspaceBasis.span(field, D.nrows, elim.kernel_vectors(field, rows, D.nrows))


def cochain_as_array(G, Gd, n, vec, field):
    """A conjugate-groupoid cochain of degree n as an n-dimensional object array
    over group indices (a[x, y] or c[x, y, z])."""
    k = G.order
    out = np.zeros((k,) * n, dtype=object)
    strings = Gd.strings(n - 1)
    for i, v in vec.items():
        s = strings[i]
        key = (s[0],) + tuple(f % k for f in s[1:])
        out[key] = field.norm(v)
    return out


# --- rack / quandle cocycles --------------------------------------------------

def _arr(a):
    return np.asarray(a, dtype=object)


def rack_2cocycle_from(G, a, field):
    """psi = a, after checking a(x,y) + a(x<|y, z) - a(x, yz) = 0."""
    a = _arr(a)
    n, T = G.order, G.table
    for x, y, z in product(range(n), repeat=3):
        if field.norm(a[x, y] + a[G.conj(x, y), z] - a[x, T[y][z]]):
            raise NotACocycle("a fails the conjugate-groupoid cocycle condition",
                              triple=[G.labels[x], G.labels[y], G.labels[z]])
    return np.array(a, dtype=object)


def check_rack_2cocycle(G, psi, field) -> bool:
    psi = _arr(psi)
    n = G.order
    for x, y, z in product(range(n), repeat=3):
        lhs = psi[x, y] + psi[G.conj(x, y), z]
        rhs = psi[x, z] + psi[G.conj(x, z), G.conj(y, z)]
        if field.norm(lhs - rhs):
            return False
    return True


def rack_3cocycle_from(G, c, field):
    """theta(x,y,z) = c(x,y,z) - c(x, z, y<|z), after checking
    c(x,y,z) + c(x,yz,w) = c(x<|y,z,w) + c(x,y,zw)."""
    c = _arr(c)
    n, T = G.order, G.table
    for x, y, z, w in product(range(n), repeat=4):
        if field.norm(c[x, y, z] + c[x, T[y][z], w] - c[G.conj(x, y), z, w] - c[x, y, T[z][w]]):
            raise NotACocycle("c fails the group 3-cocycle condition",
                              quadruple=[G.labels[i] for i in (x, y, z, w)])
    theta = np.zeros((n, n, n), dtype=object)
    for x, y, z in product(range(n), repeat=3):
        theta[x, y, z] = field.norm(c[x, y, z] - c[x, z, G.conj(y, z)])
    return theta


def check_rack_3cocycle(G, theta, field) -> bool:
    th = _arr(theta)
    n = G.order
    cj = G.conj
    for x, y, z, w in product(range(n), repeat=4):
        lhs = th[x, y, z] + th[cj(x, z), cj(y, z), w] + th[x, z, w]
        rhs = th[cj(x, y), z, w] + th[x, y, w] + th[cj(x, w), cj(y, w), cj(z, w)]
        if field.norm(lhs - rhs):
            return False
    return True
