"""First-order deformations ad_t = ad + t phi over k[t]/(t^2).

Deformed maps are evaluated with honest dual-number arithmetic: the structure
maps are reinterpreted over ``DualField`` and the usual composites are formed
there.  The t-coefficients of the adjoint-condition defects are the
obstructions xi1, xi2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArityMismatch, FieldMismatch
from .hopf import check_ybe
from .linalg import LinearMap, chain, identity, swap
from .scalars import DualField, DualScalar


@dataclass
class DeformedMap:
    base: LinearMap
    perturbation: LinearMap

    def __post_init__(self):
        b, p = self.base, self.perturbation
        if b.field != p.field:
            raise FieldMismatch(f"{b.field.descriptor} vs {p.field.descriptor}")
        if (b.base_dim, b.in_arity, b.out_arity) != (p.base_dim, p.in_arity, p.out_arity):
            raise ArityMismatch("base and perturbation shapes differ")

    @property
    def field(self):
        return self.base.field

    def to_dual(self) -> LinearMap:
        """base + t * perturbation as one map over k[t]/(t^2)."""
        return combine_dual(self.base, self.perturbation)


def combine_dual(b: LinearMap, p: LinearMap) -> LinearMap:
    F = b.field
    DF = DualField(F)
    cols = []
    for cb, cp in zip(b.cols, p.cols):
        col = {}
        for r in set(cb) | set(cp):
            col[r] = DualScalar(cb.get(r, 0), cp.get(r, 0), F)
        cols.append(col)
    return LinearMap(DF, b.base_dim, b.in_arity, b.out_arity, cols)


def split_dual(m: LinearMap):
    """Degree-0 and t-parts of a map over k[t]/(t^2)."""
    F = m.field.base
    c0, c1 = [], []
    for col in m.cols:
        c0.append({r: v.a0 for r, v in col.items() if v.a0})
        c1.append({r: v.a1 for r, v in col.items() if v.a1})
    mk = lambda cols: LinearMap(F, m.base_dim, m.in_arity, m.out_arity, cols)
    return mk(c0), mk(c1)


def _check_phi(H, phi):
    if not isinstance(phi, LinearMap) or (phi.in_arity, phi.out_arity) != (2, 1) or phi.base_dim != H.dim:
        shape = (getattr(phi, "in_arity", None), getattr(phi, "out_arity", None))
        raise ArityMismatch(f"phi must be a 2->1 map on d={H.dim}, got {shape}")
    if phi.field != H.field:
        raise FieldMismatch(f"phi over {phi.field.descriptor}, algebra over {H.field.descriptor}")


def deformed_ad(H, phi) -> DeformedMap:
    _check_phi(H, phi)
    return DeformedMap(H.ad, phi)


class _DualStructure:
    """The structure maps of H extended t-linearly to H (x) k[t]/(t^2)."""

    def __init__(self, H):
        DF = DualField(H.field)
        self.field = DF
        self.mu = H.mu.with_field(DF)
        self.delta = H.delta.with_field(DF)
        self.I = identity(DF, H.dim)
        self.tau = swap(DF, H.dim)


def _dual(H):
    s = H.__dict__.get("_dual_structure")
    if s is None:
        s = H.__dict__["_dual_structure"] = _DualStructure(H)
    return s


@dataclass
class Residuals:
    xi1: LinearMap
    xi2: LinearMap

    def is_zero(self):
        return self.xi1.is_zero() and self.xi2.is_zero()

    def norms(self):
        return [self.xi1.nnz, self.xi2.nnz]


def adjoint_defects(mu, delta, I, tau, ad):
    """Left minus right side of both adjoint conditions for a given ad."""
    first = chain(ad, (ad, I)) - chain(ad, (I, mu))
    second = (chain((ad, mu), (I, tau, I), (delta, delta))
              - chain((I, mu), (tau, I), (I, delta), (I, ad), (tau, I), (I, delta)))
    return first, second


def residuals(H, phi) -> Residuals:
    """t-coefficients of the adjoint-condition defects of ad + t phi."""
    _check_phi(H, phi)
    D = _dual(H)
    adt = combine_dual(H.ad, phi)
    e1, e2 = adjoint_defects(D.mu, D.delta, D.I, D.tau, adt)
    z1, xi1 = split_dual(e1)
    z2, xi2 = split_dual(e2)
    assert z1.is_zero() and z2.is_zero(), "ad itself violates the adjoint conditions"
    return Residuals(xi1, xi2)


def truncated_defects(H, ads):
    """Coefficientwise defects of ad + t ad_1 + ... + t^n ad_n.

    Returns ``[(k, xi1_k, xi2_k)]`` for k = 1..n+1, where the pair is the t^k
    coefficient of both adjoint-condition defects.  The deformation satisfies
    the conditions mod t^{n+1} iff all pairs with k <= n vanish; the k = n+1
    pair is the obstruction to extending by a further ad_{n+1}.
    """
    ads = list(ads)
    for a in ads:
        _check_phi(H, a)
    n = len(ads)
    seq = [H.ad] + ads
    mu, De, I, tau = H.mu, H.delta, H.I, H.tau
    out = []
    for k in range(1, n + 2):
        xi1 = None
        for i in range(0, k + 1):
            j = k - i
            if i > n or j > n:
                continue
            term = chain(seq[i], (seq[j], I))
            xi1 = term if xi1 is None else xi1 + term
        if k <= n:
            a = seq[k]
            xi1 = xi1 - chain(a, (I, mu))
            xi2 = (chain((a, mu), (I, tau, I), (De, De))
                   - chain((I, mu), (tau, I), (I, De), (I, a), (tau, I), (I, De)))
        else:
            xi2 = LinearMap(H.field, H.dim, 2, 2, [dict() for _ in range(H.dim**2)])
        out.append((k, xi1, xi2))
    return out


def deformed_r_matrix(H, phi) -> LinearMap:
    """R_{ad + t phi} = (1 (x) ad_t)(tau (x) 1)(1 (x) Delta) over k[t]/(t^2)."""
    _check_phi(H, phi)
    D = _dual(H)
    adt = combine_dual(H.ad, phi)
    return chain((D.I, adt), (D.tau, D.I), (D.I, D.delta))


def check_deformed_ybe(H, phi) -> bool:
    return check_ybe(deformed_r_matrix(H, phi))
