"""The adjoint cochain complex C^1 -> C^2 -> C^3 -> C^4 and its cohomology.

Every differential component is a sum of terms of the shape

    coeff * A o (X (x) xi (x) Y) o B

where xi is one block of the input cochain and A, B, X, Y are composites of
the structure maps.  ``TERMS`` lists them verbatim; the engine below turns a
term into matrix columns (assembly) or applies it to a concrete cochain
(matrix-free), using the same cached images of B and A.

Cochain coordinates: block b of C^n is Hom(H^a, H^c); the elementary map
E_{out,in} has coordinate ``offset_b + out * d^a + in``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from . import elim
from .errors import (ArityMismatch, CharTwoUnsupported, NotInC1, TooLarge,
                     UnsupportedDegree)
from .linalg import (LinearMap, Matrix, SubspaceBasis, apply_chain, chain,
                     identity, quotient_dim)

# (in_arity, out_arity) of the blocks of C^n
BLOCKS = {
    1: [(1, 1)],
    2: [(2, 1)],
    3: [(3, 1), (2, 2)],
    4: [(4, 1), (3, 2), (2, 3)],
}


@dataclass
class Term:
    name: str
    target: int  # block of C^{n+1}
    source: int  # block of C^n
    coeff: int
    # build(H) -> (A stages, X or None, Y or None, B stages)
    build: Callable


def _terms_d1():
    return [
        Term("ad(1⊗f)", 0, 0, 1, lambda H: ([H.ad], H.I, None, [])),
        Term("f·ad", 0, 0, -1, lambda H: ([], None, None, [H.ad])),
        Term("ad(f⊗1)", 0, 0, 1, lambda H: ([H.ad], None, H.I, [])),
    ]


def _terms_d2():
    return [
        Term("d21:ad(φ⊗1)", 0, 0, 1, lambda H: ([H.ad], None, H.I, [])),
        Term("d21:φ(ad⊗1)", 0, 0, 1, lambda H: ([], None, None, [(H.ad, H.I)])),
        Term("d21:φ(1⊗μ)", 0, 0, -1, lambda H: ([], None, None, [(H.I, H.mu)])),
        Term("d22:(φ⊗μ)(1⊗τ⊗1)(Δ⊗Δ)", 1, 0, 1,
             lambda H: ([], None, H.mu, [(H.I, H.tau, H.I), (H.delta, H.delta)])),
        Term("d22:(1⊗μ)(τ⊗1)(1⊗Δ)(1⊗φ)(τ⊗1)(1⊗Δ)", 1, 0, -1,
             lambda H: ([(H.I, H.mu), (H.tau, H.I), (H.I, H.delta)], H.I, None,
                        [(H.tau, H.I), (H.I, H.delta)])),
    ]


def _terms_d3():
    def t3(H):
        I, tau, De, mu = H.I, H.tau, H.delta, H.mu
        A = [(I, mu), (I, I, mu), (tau, I, I), (I, tau, I), (I, I, De)]
        B = [(I, tau, I, I), (tau, I, I, I), (I, I, tau, I), (I, De, De)]
        return A, identity(H.field, H.dim, 2), None, B

    def t4(H):
        I, tau, De, mu = H.I, H.tau, H.delta, H.mu
        B = [(I, I, tau, I), (I, I, mu, I, I), (I, tau, I, I, I), (De, De, De)]
        return [], None, mu, B

    return [
        Term("d31:ad(ξ1⊗1)", 0, 0, 1, lambda H: ([H.ad], None, H.I, [])),
        Term("d31:ξ1(1⊗μ⊗1)", 0, 0, 1, lambda H: ([], None, None, [(H.I, H.mu, H.I)])),
        Term("d31:ξ1(ad⊗1⊗1)", 0, 0, -1, lambda H: ([], None, None, [(H.ad, H.I, H.I)])),
        Term("d31:ξ1(1⊗1⊗μ)", 0, 0, -1, lambda H: ([], None, None, [(H.I, H.I, H.mu)])),
        Term("d32:(ad⊗μ)(1⊗τ⊗1)(1²⊗Δ)(ξ2⊗1)", 1, 1, 1,
             lambda H: ([(H.ad, H.mu), (H.I, H.tau, H.I), (H.I, H.I, H.delta)], None, H.I, [])),
        Term("d32:(1⊗μ)(τ⊗1)(1⊗ξ2)(R_ad⊗1)", 1, 1, 1,
             lambda H: ([(H.I, H.mu), (H.tau, H.I)], H.I, None, [(H.R, H.I)])),
        Term("d32:(1⊗μ)(1²⊗μ)(τ⊗1²)(1⊗τ⊗1)(1²⊗Δ)(1²⊗ξ1)(1⊗τ⊗1²)(τ⊗1³)(1²⊗τ⊗1)(1⊗Δ⊗Δ)",
             1, 0, 1, t3),
        Term("d32:(ξ1⊗μ)(1²⊗τ⊗1)(1²⊗μ⊗1²)(1⊗τ⊗1³)(Δ⊗Δ⊗Δ)", 1, 0, -1, t4),
        Term("d32:ξ2(1⊗μ)", 1, 1, -1, lambda H: ([], None, None, [(H.I, H.mu)])),
        Term("d33:(1⊗μ⊗1)(τ⊗1²)(1⊗Δ⊗1)(1⊗ξ2)(τ⊗1)(1⊗Δ)", 2, 1, 1,
             lambda H: ([(H.I, H.mu, H.I), (H.tau, H.I, H.I), (H.I, H.delta, H.I)], H.I, None,
                        [(H.tau, H.I), (H.I, H.delta)])),
        Term("d33:(ξ2⊗μ)(1⊗τ⊗1)(Δ⊗Δ)", 2, 1, 1,
             lambda H: ([], None, H.mu, [(H.I, H.tau, H.I), (H.delta, H.delta)])),
        Term("d33:(1⊗Δ)ξ2", 2, 1, -1, lambda H: ([(H.I, H.delta)], None, None, [])),
    ]


# degree -> list of terms of D_n : C^n -> C^{n+1}; tests may edit these lists
TERMS = {1: _terms_d1(), 2: _terms_d2(), 3: _terms_d3()}


def _require_field(H):
    if H.field.is_char_two:
        raise CharTwoUnsupported("adjoint cohomology needs characteristic != 2")


def block_offsets(n, d):
    offs, o = [], 0
    for a, c in BLOCKS[n]:
        offs.append(o)
        o += d ** (a + c)
    return offs, o


def cochain_dim(n, d):
    return block_offsets(n, d)[1]


# --- prepared terms ----------------------------------------------------------

class _Prepared:
    """A term specialised to one algebra, with memoised images."""

    def __init__(self, H, term, n):
        self.H, self.term = H, term
        F, d = H.field, H.dim
        A, X, Y, B = term.build(H)
        src_in, src_out = BLOCKS[n][term.source]
        tgt_in, tgt_out = BLOCKS[n + 1][term.target]
        self.xa = (X.in_arity, X.out_arity) if X is not None else (0, 0)
        self.ya = (Y.in_arity, Y.out_arity) if Y is not None else (0, 0)
        self.X, self.Y = X, Y
        self.src = (src_in, src_out)
        self.tgt = (tgt_in, tgt_out)
        in_ar = self.xa[0] + src_in + self.ya[0]
        self.B = chain(*B) if B else identity(F, d, in_ar)
        if self.B.in_arity != tgt_in or self.B.out_arity != in_ar:
            raise ArityMismatch(f"term {term.name}: B has shape {self.B.in_arity}->{self.B.out_arity}")
        self.A = A
        mid = self.xa[1] + src_out + self.ya[1]
        if A:
            a_in = sum(f.in_arity for f in (A[-1] if isinstance(A[-1], tuple) else (A[-1],)))
            a_out = sum(f.out_arity for f in (A[0] if isinstance(A[0], tuple) else (A[0],)))
        else:
            a_in = a_out = mid
        if a_in != mid or a_out != tgt_out:
            raise ArityMismatch(f"term {term.name}: A has shape {a_in}->{a_out}, expected {mid}->{tgt_out}")
        self._acache = {}
        self.s_in = d ** src_in
        self.y_in = d ** self.ya[0]
        self.s_out = d ** src_out
        self.y_out = d ** self.ya[1]

    def a_image(self, idx):
        v = self._acache.get(idx)
        if v is None:
            F = self.H.field
            v = apply_chain(self.A, {idx: F.one}, F) if self.A else {idx: F.one}
            self._acache[idx] = v
        return v

    def split(self, idx):
        idx, s = divmod(idx, self.y_in)
        p, q = divmod(idx, self.s_in)
        return p, q, s

    def side(self, M, i):
        if M is None or M.is_identity:
            return ((i, 1),)
        return tuple(M.cols[i].items())

    def mid_index(self, xo, o, yo):
        return (xo * self.s_out + o) * self.y_out + yo


def _prepared(H, n):
    cache = H.__dict__.setdefault("_cohom_terms", {})
    key = (n, tuple(id(t) for t in TERMS[n]))
    if key not in cache:
        cache[key] = [_Prepared(H, t, n) for t in TERMS[n]]
    return cache[key]


# --- assembly ---------------------------------------------------------------

def differential_matrix(H, n) -> Matrix:
    """Matrix of D_n on the full coordinate space of C^n (for n = 1 this is
    all of Hom(H,H); restrict with ``c1_basis``)."""
    if n not in TERMS:
        raise UnsupportedDegree(f"no differential D_{n}")
    _require_field(H)
    F, d = H.field, H.dim
    src_offs, ncols = block_offsets(n, d)
    tgt_offs, nrows = block_offsets(n + 1, d)
    cols = [dict() for _ in range(ncols)]
    for P in _prepared(H, n):
        t = P.term
        so, to = src_offs[t.source], tgt_offs[t.target]
        tgt_in = d ** P.tgt[0]
        for j, bcol in enumerate(P.B.cols):
            for idx, c in bcol.items():
                p, q, s = P.split(idx)
                xs, ys = P.side(P.X, p), P.side(P.Y, s)
                for o in range(P.s_out):
                    col = cols[so + o * P.s_in + q]
                    for xo, xv in xs:
                        for yo, yv in ys:
                            k = t.coeff * c * xv * yv
                            for r, w in P.a_image(P.mid_index(xo, o, yo)).items():
                                row = to + r * tgt_in + j
                                col[row] = col.get(row, 0) + k * w
    cols = [{r: v for r, v in ((r, F.norm(v)) for r, v in c.items()) if v} for c in cols]
    return Matrix(F, nrows, ncols, cols)


# --- cochains ----------------------------------------------------------------

def cochain_from_vector(H, n, vec):
    """Split a coordinate vector of C^n into its block LinearMaps."""
    F, d = H.field, H.dim
    offs, _ = block_offsets(n, d)
    out = []
    for (a, c), o in zip(BLOCKS[n], offs):
        cols = [dict() for _ in range(d**a)]
        size = d ** (a + c)
        for k, v in vec.items():
            if o <= k < o + size:
                r, i = divmod(k - o, d**a)
                cols[i][r] = F.norm(v)
        out.append(LinearMap(F, d, a, c, cols))
    return out


def cochain_to_vector(H, n, blocks):
    d = H.dim
    offs, _ = block_offsets(n, d)
    _check_blocks(H, n, blocks)
    vec = {}
    for (a, _c), o, m in zip(BLOCKS[n], offs, blocks):
        for i, col in enumerate(m.cols):
            for r, v in col.items():
                vec[o + r * d**a + i] = v
    return vec


def _check_blocks(H, n, blocks):
    if isinstance(blocks, LinearMap):
        blocks = [blocks]
    if len(blocks) != len(BLOCKS[n]):
        raise ArityMismatch(f"degree-{n} cochain has {len(BLOCKS[n])} block(s), got {len(blocks)}")
    for (a, c), m in zip(BLOCKS[n], blocks):
        if (m.in_arity, m.out_arity) != (a, c) or m.base_dim != H.dim:
            raise ArityMismatch(f"block must be {a}->{c} on d={H.dim}, got {m.in_arity}->{m.out_arity}")
        if m.field != H.field:
            from .errors import FieldMismatch
            raise FieldMismatch(f"cochain over {m.field.descriptor}, algebra over {H.field.descriptor}")
    return list(blocks)


def apply_differential(H, n, blocks):
    """Matrix-free D_n: evaluate every term on the given cochain blocks."""
    _require_field(H)
    blocks = _check_blocks(H, n, [blocks] if isinstance(blocks, LinearMap) else blocks)
    F, d = H.field, H.dim
    outs = [dict() for _ in BLOCKS[n + 1]]  # block -> {(row, j): v}
    for P in _prepared(H, n):
        t = P.term
        xi = blocks[t.source]
        acc = outs[t.target]
        for j, bcol in enumerate(P.B.cols):
            for idx, c in bcol.items():
                p, q, s = P.split(idx)
                xcol = xi.cols[q]
                if not xcol:
                    continue
                xs, ys = P.side(P.X, p), P.side(P.Y, s)
                for o, ov in xcol.items():
                    for xo, xv in xs:
                        for yo, yv in ys:
                            k = t.coeff * c * ov * xv * yv
                            for r, w in P.a_image(P.mid_index(xo, o, yo)).items():
                                acc[(r, j)] = acc.get((r, j), 0) + k * w
    res = []
    for (a, c), acc in zip(BLOCKS[n + 1], outs):
        cols = [dict() for _ in range(d**a)]
        for (r, j), v in acc.items():
            v = F.norm(v)
            if v:
                cols[j][r] = v
        res.append(LinearMap(F, d, a, c, cols))
    return res


# --- degree one ---------------------------------------------------------------

def c1_constraints(H):
    """Rows (over Hom(H,H) coordinates) of the two linear conditions on f."""
    F, d = H.field, H.dim
    mu, De, I = H.mu, H.delta, H.I
    rows = {}
    # f mu - mu(f (x) 1) - mu(1 (x) f) and Delta f - (f (x) 1)Delta - (1 (x) f)Delta,
    # written out per elementary map E_{o,i}
    for o in range(d):
        for i in range(d):
            col = o * d + i
            E = LinearMap(F, d, 1, 1, [({o: F.one} if k == i else {}) for k in range(d)])
            parts = [
                (0, chain(E, mu) - chain(mu, (E, I)) - chain(mu, (I, E))),
                (1, chain(De, E) - chain((E, I), De) - chain((I, E), De)),
            ]
            for tag, m in parts:
                for j, c in enumerate(m.cols):
                    for r, v in c.items():
                        rows.setdefault((tag, r, j), {})[col] = v
    return [rows[k] for k in sorted(rows)]


def c1_basis(H) -> SubspaceBasis:
    F, d = H.field, H.dim
    cache = H.__dict__
    if "_c1" not in cache:
        vecs = elim.kernel_vectors(F, c1_constraints(H), d * d)
        cache["_c1"] = SubspaceBasis.span(F, d * d, vecs)
    return cache["_c1"]


def in_c1(H, f: LinearMap):
    vec = cochain_to_vector(H, 1, [f])
    return c1_basis(H).contains(vec)


def d1(H, f):
    f = _check_blocks(H, 1, [f] if isinstance(f, LinearMap) else f)[0]
    if not in_c1(H, f):
        raise NotInC1("map does not satisfy the derivation/coderivation conditions")
    return apply_differential(H, 1, [f])[0]


def d2(H, phi):
    phi = _check_blocks(H, 2, [phi] if isinstance(phi, LinearMap) else phi)[0]
    return tuple(apply_differential(H, 2, [phi]))


def d3(H, xi):
    return tuple(apply_differential(H, 3, list(xi)))


# --- cohomology ----------------------------------------------------------------

@dataclass
class CohomologyReport:
    degree: int
    field: str
    dimC: int
    dimZ: int
    dimB: int
    dimH: int
    basis: list | None = None  # cocycle basis as coordinate dicts
    shapes: dict = dc_field(default_factory=dict)

    def to_json(self, H=None, with_basis=False):
        out = {"degree": self.degree, "field": self.field, "dimC": self.dimC,
               "dimZ": self.dimZ, "dimB": self.dimB, "dimH": self.dimH}
        if with_basis and self.basis is not None and H is not None:
            out["basis"] = [cochain_json(H, self.degree, v) for v in self.basis]
        return out


LIMITS_Q = {3: 4}
LIMITS_FP = {3: 6}


def _check_size(H, n, allow_large):
    if allow_large:
        return
    lim = (LIMITS_Q if H.field.is_rational else LIMITS_FP).get(n)
    if lim is not None and H.dim > lim:
        d = H.dim
        raise TooLarge(f"D_{n} for d={d} over {H.field.descriptor} exceeds the default size policy",
                       shape=[cochain_dim(n + 1, d), cochain_dim(n, d)], limit_dim=lim)


def _image_vectors(H, n_prev, vectors):
    """D_{n_prev} applied to coordinate vectors (matrix-free)."""
    out = []
    for v in vectors:
        blocks = cochain_from_vector(H, n_prev, v)
        out.append(cochain_to_vector(H, n_prev + 1, apply_differential(H, n_prev, blocks)))
    return out


def cohomology(H, n, *, basis=False, allow_large=False) -> CohomologyReport:
    if n not in (1, 2, 3):
        raise UnsupportedDegree(f"cohomology is defined here for n = 1, 2, 3, not {n}")
    _require_field(H)
    _check_size(H, n, allow_large)
    F, d = H.field, H.dim
    if n == 1:
        C = c1_basis(H)
        imgs = _image_vectors(H, 1, C.vectors)
        # kernel of f -> D1 f restricted to C^1, in C^1-basis coordinates
        k = len(C.vectors)
        rows = {}
        for c, v in enumerate(imgs):
            for r, x in v.items():
                rows.setdefault(r, {})[c] = x
        kv = elim.kernel_vectors(F, list(rows.values()), k)
        Z = [_combine(F, C.vectors, w) for w in kv]
        Zb = SubspaceBasis.span(F, d * d, Z)
        return CohomologyReport(1, F.descriptor, k, Zb.dim, 0, Zb.dim,
                                basis=Zb.vectors if basis else None)
    D = differential_matrix(H, n)
    dimC = D.ncols
    prev = c1_basis(H).vectors if n == 2 else [{i: F.one} for i in range(cochain_dim(n - 1, d))]
    if n == 2:
        Bvecs = _image_vectors(H, 1, prev)
    else:
        Dp = differential_matrix(H, n - 1)
        Bvecs = [c for c in Dp.cols if c]
    Bsp = SubspaceBasis.span(F, dimC, Bvecs)
    rows = D.rows()
    if basis:
        Zsp = SubspaceBasis.span(F, dimC, elim.kernel_vectors(F, rows, dimC))
        dimH = quotient_dim(Zsp, Bsp)
        dimZ = Zsp.dim
        zb = Zsp.vectors
    else:
        dimZ = dimC - elim.rank(F, rows, dimC)
        dimH = dimZ - Bsp.dim
        zb = None
    return CohomologyReport(n, F.descriptor, dimC, dimZ, Bsp.dim, dimH, basis=zb,
                            shapes={"D": [D.nrows, D.ncols]})


def _combine(F, vectors, w):
    out = {}
    for i, c in w.items():
        for k, v in vectors[i].items():
            out[k] = F.norm(out.get(k, 0) + c * v)
    return {k: v for k, v in out.items() if v}


def cochain_json(H, n, vec):
    """Label-indexed table of a cochain: block -> input label -> output text."""
    from .hopf import vector_str
    out = []
    for m in cochain_from_vector(H, n, vec):
        tab = {}
        for i, col in enumerate(m.cols):
            if col:
                tab[H.label_of(i, m.in_arity)] = vector_str(H, col, m.out_arity)
        out.append(tab)
    return out


# --- complex checks --------------------------------------------------------

def check_d2d1(H):
    """D2 D1 = 0 on the C^1 basis; returns the number of failing vectors."""
    bad = 0
    for v in c1_basis(H).vectors:
        f = cochain_from_vector(H, 1, v)
        phi = apply_differential(H, 1, f)
        if any(not m.is_zero() for m in apply_differential(H, 2, phi)):
            bad += 1
    return bad


def check_d3d2(H, columns=None):
    """D3 D2 = 0 column by column on elementary 2-cochains (matrix-free)."""
    F, d = H.field, H.dim
    n2 = cochain_dim(2, d)
    bad = 0
    for k in (range(n2) if columns is None else columns):
        phi = cochain_from_vector(H, 2, {k: F.one})
        xi = apply_differential(H, 2, phi)
        if any(not m.is_zero() for m in apply_differential(H, 3, xi)):
            bad += 1
    return bad


# --- group algebras: the diagonal system --------------------------------------

def _require_odd(field):
    if field.is_char_two:
        raise CharTwoUnsupported("adjoint cohomology needs characteristic != 2")


def diagonal_system(G):
    """Rows of a(x,y) + a(x<|y, z) - a(x, yz) = 0 over unknowns x*n + y."""
    n, T = G.order, G.table
    rows = []
    for x in range(n):
        for y in range(n):
            xy = G.conj(x, y)
            for z in range(n):
                r = {}
                for k, v in ((x * n + y, 1), (xy * n + z, 1), (x * n + T[y][z], -1)):
                    r[k] = r.get(k, 0) + v
                rows.append({k: v for k, v in r.items() if v})
    return rows


def diagonal_2cocycles(G, field) -> SubspaceBasis:
    _require_odd(field)
    n = G.order
    rows = [{k: field.norm(v) for k, v in r.items()} for r in diagonal_system(G)]
    return SubspaceBasis.span(field, n * n, elim.kernel_vectors(field, rows, n * n))


def as_table(G, vec, field):
    """Coordinate dict over x*n + y -> n x n object array."""
    n = G.order
    a = np.zeros((n, n), dtype=object)
    for k, v in vec.items():
        a[divmod(k, n)] = field.norm(v)
    return a


def lift_diagonal(H, G, a):
    """phi(x (x) y) = a(x,y) (x <| y) on the group basis of kG."""
    F, n = H.field, G.order
    if H.dim != n:
        raise ArityMismatch("algebra and group sizes differ")
    a = np.asarray(a, dtype=object)
    return LinearMap.from_function(F, n, 2, 1, lambda t: {(G.conj(*t),): F.norm(a[t])})


def check_group_3cocycle(G, c, field) -> bool:
    """c(x,y,z) + c(x,yz,w) = c(x<|y,z,w) + c(x,y,zw) for all quadruples."""
    n, T = G.order, G.table
    c = np.asarray(c, dtype=object)
    for x in range(n):
        for y in range(n):
            xy = G.conj(x, y)
            for z in range(n):
                yz = T[y][z]
                for w in range(n):
                    if field.norm(c[x, y, z] + c[x, yz, w] - c[xy, z, w] - c[x, y, T[z][w]]):
                        return False
    return True


def group_3coboundary(G, a, field):
    """c(x,y,z) = a(x,y) + a(x<|y, z) - a(x, yz)."""
    n, T = G.order, G.table
    a = np.asarray(a, dtype=object)
    c = np.zeros((n, n, n), dtype=object)
    for x in range(n):
        for y in range(n):
            xy = G.conj(x, y)
            for z in range(n):
                c[x, y, z] = field.norm(a[x, y] + a[xy, z] - a[x, T[y][z]])
    return c
