"""Hopf algebras given by structure constants, the adjoint map and the
R-matrix it induces.

Every composite below is spelled with :func:`~hopfadj.linalg.chain` exactly as
the corresponding formula reads, outermost map first.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import product

from . import linalg as la
from .errors import (AntipodeNotInvertible, ArityMismatch, MalformedAlgebra,
                     NotHopfAlgebra, SingularMatrix)
from .linalg import LinearMap, chain, identity, permutation, swap

AXIOMS = (
    "associativity",
    "coassociativity",
    "unit",
    "counit",
    "coproduct_multiplicative",
    "counit_multiplicative",
    "antipode",
)


class HopfAlgebra:
    """Finite-dimensional Hopf algebra over a FieldSpec.

    ``mu`` is 2->1, ``delta`` 1->2, ``unit`` a coordinate vector (the image
    of 1 under eta), ``counit`` 1->0 and ``antipode`` 1->1.  Structure maps
    are validated on construction unless ``validate=False``.
    """

    def __init__(self, field, labels, mu, delta, unit, counit, antipode, *, name=None, validate=True):
        self.field = field
        self.dim = len(labels)
        self.labels = list(labels)
        self.mu = mu
        self.delta = delta
        self.unit = la.vector_map(field, self.dim, unit) if not isinstance(unit, LinearMap) else unit
        self.counit = counit
        self.antipode = antipode
        self.name = name or f"H{self.dim}"
        self._check_shapes()
        if validate:
            report = check_hopf_axioms(self)
            if not report.ok:
                name, witness = report.first_failure()
                raise NotHopfAlgebra(f"axiom {name!r} fails at {witness}", axiom=name, witness=witness)

    def _check_shapes(self):
        d = self.dim
        want = {"mu": (2, 1), "delta": (1, 2), "unit": (0, 1), "counit": (1, 0), "antipode": (1, 1)}
        for nm, (a, b) in want.items():
            m = getattr(self, nm)
            if not isinstance(m, LinearMap):
                raise MalformedAlgebra(f"{nm} is not a LinearMap")
            if m.field != self.field:
                raise MalformedAlgebra(f"{nm} is over {m.field.descriptor}, algebra over {self.field.descriptor}")
            if m.base_dim != d or (m.in_arity, m.out_arity) != (a, b):
                raise MalformedAlgebra(
                    f"{nm} has shape d={m.base_dim} {m.in_arity}->{m.out_arity}, expected d={d} {a}->{b}")

    def __repr__(self):
        return f"HopfAlgebra({self.name}, dim={self.dim}, {self.field.descriptor})"

    # frequently used maps, built once
    @cached_property
    def I(self):
        return identity(self.field, self.dim)

    @cached_property
    def tau(self):
        return swap(self.field, self.dim)

    def perm(self, *p):
        return permutation(self.field, self.dim, p)

    @cached_property
    def ad(self):
        return adjoint_map(self)

    @cached_property
    def R(self):
        return r_matrix(self)

    @cached_property
    def antipode_inverse(self):
        try:
            return la.inverse(self.antipode)
        except SingularMatrix as exc:
            raise AntipodeNotInvertible("antipode matrix is singular") from exc

    def basis_vector(self, i):
        return {i: self.field.one}

    def label_of(self, idx, arity):
        t = la.tuple_of(idx, self.dim, arity)
        return "⊗".join(self.labels[i] for i in t) if t else "1_k"


@dataclass
class AxiomReport:
    results: dict = dc_field(default_factory=dict)  # axiom -> (ok, witness)

    @property
    def ok(self):
        return all(ok for ok, _ in self.results.values())

    def first_failure(self):
        for name in AXIOMS:
            ok, w = self.results[name]
            if not ok:
                return name, w
        return None, None

    def to_json(self):
        return {k: {"ok": ok, "witness": w} for k, (ok, w) in self.results.items()}


def _first_difference(H, f, g):
    """Label of the first basis input where f and g differ, else None."""
    for j, (a, b) in enumerate(zip(f.cols, g.cols)):
        if a != b:
            return H.label_of(j, f.in_arity)
    return None


def check_hopf_axioms(H: HopfAlgebra) -> AxiomReport:
    H._check_shapes()
    F, d = H.field, H.dim
    mu, De, eta, eps, S, I, tau = H.mu, H.delta, H.unit, H.counit, H.antipode, H.I, H.tau
    k_id = identity(F, d, 0)
    checks = {
        "associativity": [(chain(mu, (mu, I)), chain(mu, (I, mu)))],
        "coassociativity": [(chain((De, I), De), chain((I, De), De))],
        "unit": [(chain(mu, (eta, I)), I), (chain(mu, (I, eta)), I)],
        "counit": [(chain((eps, I), De), I), (chain((I, eps), De), I)],
        "coproduct_multiplicative": [
            (chain(De, mu), chain((mu, mu), (I, tau, I), (De, De))),
            (chain(De, eta), chain((eta, eta))),
        ],
        "counit_multiplicative": [
            (chain(eps, mu), chain((eps, eps))),
            (chain(eps, eta), k_id),
        ],
        "antipode": [
            (chain(mu, (S, I), De), chain(eta, eps)),
            (chain(mu, (I, S), De), chain(eta, eps)),
        ],
    }
    report = AxiomReport()
    for name in AXIOMS:
        result = (True, None)
        for lhs, rhs in checks[name]:
            w = _first_difference(H, lhs, rhs)
            if w is not None:
                result = (False, w)
                break
        report.results[name] = result
    return report


def adjoint_map(H: HopfAlgebra) -> LinearMap:
    """ad(x (x) y) = S(y_(1)) x y_(2)."""
    S, I = H.antipode, H.I
    return chain(H.mu, (H.mu, I), (S, I, I), (H.tau, I), (I, H.delta))


def check_adjoint_conditions(H: HopfAlgebra, ad=None):
    """Both adjoint identities as exact matrix equalities; ``ad`` may be
    overridden to test an impostor map."""
    ad = H.ad if ad is None else ad
    mu, De, I, tau = H.mu, H.delta, H.I, H.tau
    first = chain(ad, (ad, I)) == chain(ad, (I, mu))
    lhs = chain((ad, mu), (I, tau, I), (De, De))
    rhs = chain((I, mu), (tau, I), (I, De), (I, ad), (tau, I), (I, De))
    return first, lhs == rhs


def r_matrix(H: HopfAlgebra, ad=None) -> LinearMap:
    """R_ad = (1 (x) ad)(tau (x) 1)(1 (x) Delta)."""
    ad = H.ad if ad is None else ad
    return chain((H.I, ad), (H.tau, H.I), (H.I, H.delta))


def r_matrix_inverse(H: HopfAlgebra) -> LinearMap:
    """R^{-1}(b (x) a) = b_(3) a S^{-1}(b_(2)) (x) b_(1)."""
    I, mu, De = H.I, H.mu, H.delta
    Sinv = H.antipode_inverse
    # b (x) a -> b1 (x) b2 (x) b3 (x) a -> b3 (x) a (x) b2 (x) b1
    return chain((mu, I), (mu, I, I), (I, I, Sinv, I), H.perm(2, 3, 1, 0), (De, I, I), (De, I))


def check_ybe(R: LinearMap) -> bool:
    if R.in_arity != 2 or R.out_arity != 2:
        raise ArityMismatch(f"R must be 2->2, got {R.in_arity}->{R.out_arity}")
    I = identity(R.field, R.base_dim)
    lhs = chain((R, I), (I, R), (R, I))
    rhs = chain((I, R), (R, I), (I, R))
    return lhs == rhs


def structure_constants_from_tables(field, labels, mul_table, comul_table, unit, counit, antipode, **kw):
    """Build a HopfAlgebra from index-keyed tables:

    ``mul_table[(i, j)] = {k: c}``, ``comul_table[i] = {(j, k): c}``,
    ``antipode[i] = {j: c}``; ``unit``/``counit`` are coordinate lists.
    """
    d = len(labels)
    mu = LinearMap.from_function(field, d, 2, 1,
                                 lambda t: {(k,): field.coerce(c) for k, c in mul_table.get(t, {}).items()})
    delta = LinearMap.from_function(field, d, 1, 2,
                                    lambda t: {jk: field.coerce(c) for jk, c in comul_table.get(t[0], {}).items()})
    S = LinearMap.from_function(field, d, 1, 1,
                                lambda t: {(j,): field.coerce(c) for j, c in antipode.get(t[0], {}).items()})
    eps = la.covector_map(field, d, counit)
    return HopfAlgebra(field, labels, mu, delta, [field.coerce(u) for u in unit], eps, S, **kw)


def table(H: HopfAlgebra, m: LinearMap):
    """Label-indexed 2->1 table: ``rows[x][y]`` is ``m(x (x) y)`` as text."""
    d = H.dim
    out = {}
    for x, y in product(range(d), repeat=2):
        v = m.cols[x * d + y]
        out.setdefault(H.labels[x], {})[H.labels[y]] = vector_str(H, v)
    return out


def vector_str(H: HopfAlgebra, vec, arity=1):
    if not vec:
        return "0"
    parts = []
    for i in sorted(vec):
        c = vec[i]
        lab = H.label_of(i, arity)
        if H.field.p is not None and c > H.field.p // 2 and H.field.p != 2:
            c = c - H.field.p
        if c == 1:
            s = lab
        elif c == -1:
            s = "-" + lab
        else:
            s = f"{c}{lab}" if lab not in ("1", "e") or arity != 1 else f"{c}·{lab}"
        parts.append(s)
    out = parts[0]
    for s in parts[1:]:
        out += (" - " + s[1:]) if s.startswith("-") else (" + " + s)
    return out
