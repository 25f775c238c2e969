"""Built-in groups and Hopf algebras: kG, k^G and the superline bosonization."""

from __future__ import annotations

import json
import os
from itertools import permutations, product

from .errors import CharTwoUnsupported, IndexOutOfRange, NotAGroup, ParseError
from .hopf import HopfAlgebra
from .linalg import LinearMap, covector_map


class FiniteGroup:
    """Group given by a multiplication table of indices; verified on construction."""

    def __init__(self, labels, table, name=None):
        self.labels = [str(l) for l in labels]
        self.order = n = len(self.labels)
        self.table = [list(map(int, row)) for row in table]
        self.name = name or f"G{n}"
        if n == 0:
            raise NotAGroup("empty table")
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise NotAGroup(f"table is not {n}x{n}")
        for row in self.table:
            for v in row:
                if not 0 <= v < n:
                    raise NotAGroup(f"table entry {v} out of range")
        self.identity = self._find_identity()
        self.inverse = self._find_inverses()
        self._check_assoc()

    def _find_identity(self):
        T, n = self.table, self.order
        for e in range(n):
            if all(T[e][x] == x and T[x][e] == x for x in range(n)):
                return e
        raise NotAGroup("no two-sided identity")

    def _find_inverses(self):
        T, n, e = self.table, self.order, self.identity
        inv = []
        for x in range(n):
            ys = [y for y in range(n) if T[x][y] == e and T[y][x] == e]
            if not ys:
                raise NotAGroup(f"{self.labels[x]} has no inverse", element=self.labels[x])
            inv.append(ys[0])
        return inv

    def _check_assoc(self):
        T, n = self.table, self.order
        for x, y, z in product(range(n), repeat=3):
            if T[T[x][y]][z] != T[x][T[y][z]]:
                raise NotAGroup("associativity fails",
                                triple=[self.labels[x], self.labels[y], self.labels[z]])

    def mul(self, x, y):
        return self.table[x][y]

    def conj(self, x, y):
        """x <| y = y^-1 x y."""
        for i in (x, y):
            if not (isinstance(i, int) and 0 <= i < self.order):
                raise IndexOutOfRange(f"element index {i} not in 0..{self.order - 1}")
        return self.table[self.table[self.inverse[y]][x]][y]

    def is_abelian(self):
        T = self.table
        return all(T[x][y] == T[y][x] for x in range(self.order) for y in range(x))

    def index(self, label):
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise IndexOutOfRange(f"unknown element {label!r}") from None

    def to_json(self):
        return {"order": self.order, "labels": self.labels, "table": self.table}

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def cyclic(n):
    labels = ["e"] + [f"a^{i}" if i > 1 else "a" for i in range(1, n)]
    return FiniteGroup(labels, [[(i + j) % n for j in range(n)] for i in range(n)], name=f"c{n}")


def _cycle_label(p):
    seen, cycles = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        c, j = [], i
        while j not in seen:
            seen.add(j)
            c.append(j + 1)
            j = p[j]
        cycles.append("(" + " ".join(map(str, c)) + ")")
    return "".join(cycles) or "()"


def symmetric(n):
    """S_n in lexicographic one-line order; products compose left to right,
    (xy)(i) = y(x(i)), so that y^-1 x y relabels the cycles of x by y."""
    perms = list(permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    table = [[pos[tuple(y[x[i]] for i in range(n))] for y in perms] for x in perms]
    return FiniteGroup([_cycle_label(p) for p in perms], table, name=f"s{n}")


def dihedral(n):
    """Dihedral group of order 2n: r^i s^j with s r = r^-1 s."""
    elems = [(i, j) for j in (0, 1) for i in range(n)]
    pos = {e: k for k, e in enumerate(elems)}

    def mul(a, b):
        (i, j), (k, l) = a, b
        return ((i + (k if j == 0 else -k)) % n, (j + l) % 2)

    def lab(e):
        i, j = e
        r = "" if i == 0 else ("r" if i == 1 else f"r^{i}")
        s = "s" if j else ""
        return (r + s) or "e"

    table = [[pos[mul(a, b)] for b in elems] for a in elems]
    return FiniteGroup([lab(e) for e in elems], table, name=f"d{n}")


def group_from_spec(spec):
    """``"c<n>"``, ``"s<n>"``, ``"d<n>"``, a dict with labels/table, or a JSON path."""
    if isinstance(spec, FiniteGroup):
        return spec
    if isinstance(spec, dict):
        labels = spec.get("labels") or [str(i) for i in range(spec["order"])]
        if "order" in spec and spec["order"] != len(labels):
            raise NotAGroup("order does not match label count")
        pos = {l: i for i, l in enumerate(labels)}
        table = [[pos[v] if isinstance(v, str) else v for v in row] for row in spec["table"]]
        return FiniteGroup(labels, table, name=spec.get("name"))
    s = str(spec).strip()
    kind, num = s[:1].lower(), s[1:]
    if kind in "csd" and num.isdigit() and int(num) >= 1:
        n = int(num)
        if kind == "s" and n > 6:
            raise ParseError(f"symmetric group s{n} is too large")
        return {"c": cyclic, "s": symmetric, "d": dihedral}[kind](n)
    if os.path.exists(s):
        try:
            with open(s) as fh:
                data = json.load(fh)
        except (OSError, ValueError) as exc:
            raise ParseError(f"cannot read group file {s}: {exc}") from exc
        return group_from_spec(data)
    raise ParseError(f"unrecognised group spec {spec!r}")


def conj(G: FiniteGroup, x, y):
    return G.conj(x, y)


def group_algebra(G: FiniteGroup, field, validate=True) -> HopfAlgebra:
    d, T, one = G.order, G.table, field.one
    mu = LinearMap.from_function(field, d, 2, 1, lambda t: {(T[t[0]][t[1]],): one})
    delta = LinearMap.from_function(field, d, 1, 2, lambda t: {(t[0], t[0]): one})
    S = LinearMap.from_function(field, d, 1, 1, lambda t: {(G.inverse[t[0]],): one})
    unit = [one if i == G.identity else 0 for i in range(d)]
    eps = covector_map(field, d, [1] * d)
    return HopfAlgebra(field, G.labels, mu, delta, unit, eps, S,
                       name=f"k{G.name}", validate=validate)


def function_algebra(G: FiniteGroup, field, validate=True) -> HopfAlgebra:
    d, T, one = G.order, G.table, field.one
    mu = LinearMap.from_function(field, d, 2, 1, lambda t: {(t[0],): one} if t[0] == t[1] else {})
    delta = LinearMap.from_function(
        field, d, 1, 2, lambda t: {(u, v): one for u in range(d) for v in range(d) if T[u][v] == t[0]})
    S = LinearMap.from_function(field, d, 1, 1, lambda t: {(G.inverse[t[0]],): one})
    unit = [one] * d
    eps = covector_map(field, d, [1 if i == G.identity else 0 for i in range(d)])
    return HopfAlgebra(field, [f"d_{l}" for l in G.labels], mu, delta, unit, eps, S,
                       name=f"fun{G.name}", validate=validate)


# superline basis: 0 = 1, 1 = g, 2 = x, 3 = gx
_SL_MUL = {
    (1, 1): {0: 1}, (1, 2): {3: 1}, (1, 3): {2: 1},
    (2, 1): {3: -1}, (2, 2): {}, (2, 3): {},
    (3, 1): {2: -1}, (3, 2): {}, (3, 3): {},
}
_SL_DELTA = {
    0: {(0, 0): 1},
    1: {(1, 1): 1},
    2: {(2, 0): 1, (1, 2): 1},
    3: {(3, 1): 1, (0, 3): 1},
}
_SL_S = {0: {0: 1}, 1: {1: 1}, 2: {3: -1}, 3: {2: 1}}


def superline(field, validate=True) -> HopfAlgebra:
    """Bosonization of the superline: x^2 = 0, g^2 = 1, xg = -gx."""
    if field.is_char_two:
        raise CharTwoUnsupported("the superline needs characteristic != 2")

    def m(t):
        a, b = t
        if a == 0:
            return {(b,): 1}
        if b == 0:
            return {(a,): 1}
        return {(k,): c for k, c in _SL_MUL[(a, b)].items()}

    mu = LinearMap.from_function(field, 4, 2, 1, m)
    delta = LinearMap.from_function(field, 4, 1, 2, lambda t: dict(_SL_DELTA[t[0]]))
    S = LinearMap.from_function(field, 4, 1, 1, lambda t: {(k,): c for k, c in _SL_S[t[0]].items()})
    eps = covector_map(field, 4, [1, 1, 0, 0])
    return HopfAlgebra(field, ["1", "g", "x", "gx"], mu, delta, [1, 0, 0, 0], eps, S,
                       name="superline", validate=validate)


def builtin(name, field, validate=True) -> HopfAlgebra:
    """``kg:<group>``, ``fun:<group>`` or ``superline`` (``builtin:`` prefix optional)."""
    if name.startswith("builtin:"):
        name = name[len("builtin:"):]
    if name == "superline":
        return superline(field, validate)
    kind, _, g = name.partition(":")
    if kind == "kg" and g:
        return group_algebra(group_from_spec(g), field, validate)
    if kind == "fun" and g:
        return function_algebra(group_from_spec(g), field, validate)
    raise ParseError(f"unknown builtin algebra {name!r}")
