"""Exact linear maps between tensor powers of a finite-dimensional space.

Matrices are stored column-sparse: ``cols[j]`` is a ``{row: value}`` dict
holding the image of the j-th basis vector.  A basis vector of H^{(x)k} is a
tuple ``(i_1, ..., i_k)`` linearised big-endian, so ``index = sum i_m d^(k-m)``
and ``np.kron`` conventions apply: ``(f (x) g)(e_i (x) e_j) = f(e_i) (x) g(e_j)``.

Composites of structure maps are written as *stages*: a stage is either one
map or a tuple of maps standing for their tensor product.  ``chain(s1, s2,
s3)`` denotes ``s1 o s2 o s3`` (rightmost applied first), so formulas can be
transcribed left to right as they are printed.
"""

from __future__ import annotations

from itertools import product

from .errors import ArityMismatch, FieldMismatch, NotContained, NotSquare, SingularMatrix


class Matrix:
    """Column-sparse exact matrix over a FieldSpec (or DualField)."""

    __slots__ = ("field", "nrows", "ncols", "cols")

    def __init__(self, field, nrows, ncols, cols):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.cols = cols

    @classmethod
    def from_dense(cls, field, rows):
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        cols = [dict() for _ in range(ncols)]
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            for c, v in enumerate(row):
                v = field.coerce(v)
                if v:
                    cols[c][r] = v
        return cls(field, nrows, ncols, cols)

    @classmethod
    def from_columns(cls, field, nrows, columns):
        return cls(field, nrows, len(columns), [_clean(field, c) for c in columns])

    def to_dense(self):
        out = [[self.field.zero] * self.ncols for _ in range(self.nrows)]
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                out[r][c] = v
        return out

    def rows(self):
        """Row dicts ``{col: value}``."""
        rows = [dict() for _ in range(self.nrows)]
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                rows[r][c] = v
        return rows

    def to_triples(self):
        trip = [(r, c, v) for c, col in enumerate(self.cols) for r, v in col.items()]
        trip.sort()
        return trip

    @property
    def nnz(self):
        return sum(len(c) for c in self.cols)

    @property
    def density(self):
        total = self.nrows * self.ncols
        return self.nnz / total if total else 0.0

    def is_zero(self):
        return all(not c for c in self.cols)

    def transpose(self):
        return Matrix(self.field, self.ncols, self.nrows, self.rows())

    def apply(self, vec):
        out = {}
        cols = self.cols
        for j, v in vec.items():
            for r, w in cols[j].items():
                out[r] = out.get(r, 0) + w * v
        return _clean(self.field, out)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and all(
            a == b for a, b in zip(self.cols, other.cols)
        )

    __hash__ = None

    def __repr__(self):
        return f"{type(self).__name__}({self.nrows}x{self.ncols}, nnz={self.nnz}, {self.field.descriptor})"


class LinearMap(Matrix):
    """Linear map H^{(x)in_arity} -> H^{(x)out_arity}, dim H = base_dim."""

    __slots__ = ("base_dim", "in_arity", "out_arity", "is_identity")

    def __init__(self, field, base_dim, in_arity, out_arity, cols, *, is_identity=False):
        super().__init__(field, base_dim**out_arity, base_dim**in_arity, cols)
        if len(cols) != self.ncols:
            raise ValueError(f"expected {self.ncols} columns, got {len(cols)}")
        self.base_dim = base_dim
        self.in_arity = in_arity
        self.out_arity = out_arity
        self.is_identity = is_identity

    @classmethod
    def from_dense(cls, field, base_dim, in_arity, out_arity, rows):
        m = Matrix.from_dense(field, rows)
        if (m.nrows, m.ncols) != (base_dim**out_arity, base_dim**in_arity):
            raise ArityMismatch(f"matrix shape {(m.nrows, m.ncols)} does not fit {in_arity}->{out_arity} on d={base_dim}")
        return cls(field, base_dim, in_arity, out_arity, m.cols)

    @classmethod
    def from_function(cls, field, base_dim, in_arity, out_arity, fn):
        """Build from ``fn(in_tuple) -> {out_tuple: value}``."""
        cols = []
        for t in product(range(base_dim), repeat=in_arity):
            img = fn(t)
            cols.append(_clean(field, {index_of(o, base_dim): v for o, v in img.items()}))
        return cls(field, base_dim, in_arity, out_arity, cols)

    def with_field(self, field):
        """Reinterpret entries in another coefficient ring (e.g. k -> k[t]/(t^2))."""
        return LinearMap(field, self.base_dim, self.in_arity, self.out_arity,
                         [{r: field.norm(v) for r, v in c.items()} for c in self.cols],
                         is_identity=self.is_identity)

    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field.descriptor} vs {other.field.descriptor}")
        if self.base_dim != other.base_dim:
            raise ArityMismatch(f"base dimension {self.base_dim} vs {other.base_dim}")

    def _same_shape(self, other):
        self._check(other)
        if (self.in_arity, self.out_arity) != (other.in_arity, other.out_arity):
            raise ArityMismatch(
                f"{self.in_arity}->{self.out_arity} vs {other.in_arity}->{other.out_arity}")

    def __add__(self, other):
        self._same_shape(other)
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for r, v in b.items():
                c[r] = c.get(r, 0) + v
            cols.append(_clean(self.field, c))
        return LinearMap(self.field, self.base_dim, self.in_arity, self.out_arity, cols)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        cols = [_clean(self.field, {r: c * v for r, v in col.items()}) for col in self.cols]
        return LinearMap(self.field, self.base_dim, self.in_arity, self.out_arity, cols)

    def __matmul__(self, other):
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.base_dim, self.in_arity, self.out_arity) == (
            other.base_dim, other.in_arity, other.out_arity) and super().__eq__(other)

    __hash__ = None

    def __repr__(self):
        return (f"LinearMap(d={self.base_dim}, {self.in_arity}->{self.out_arity}, "
                f"nnz={self.nnz}, {self.field.descriptor})")

    def entry(self, out_tuple, in_tuple):
        d = self.base_dim
        return self.cols[index_of(in_tuple, d)].get(index_of(out_tuple, d), self.field.zero)


def _clean(field, vec):
    out = {}
    for k, v in vec.items():
        v = field.norm(v)
        if v:
            out[k] = v
    return out


def index_of(t, d):
    i = 0
    for x in t:
        i = i * d + x
    return i


def tuple_of(i, d, k):
    out = [0] * k
    for m in range(k - 1, -1, -1):
        i, out[m] = divmod(i, d)
    return tuple(out)


# --- constructors ---------------------------------------------------------

def identity(field, d, arity=1):
    n = d**arity
    return LinearMap(field, d, arity, arity, [{i: 1} for i in range(n)], is_identity=True)


def zero_map(field, d, in_arity, out_arity):
    return LinearMap(field, d, in_arity, out_arity, [dict() for _ in range(d**in_arity)])


def permutation(field, d, perm):
    """Slot permutation on H^{(x)k}: output slot m carries input slot perm[m]."""
    k = len(perm)
    if sorted(perm) != list(range(k)):
        raise ValueError(f"not a permutation: {perm}")
    cols = []
    for t in product(range(d), repeat=k):
        cols.append({index_of(tuple(t[perm[m]] for m in range(k)), d): 1})
    return LinearMap(field, d, k, k, cols, is_identity=list(perm) == list(range(k)))


def swap(field, d):
    """The transposition tau(x (x) y) = y (x) x."""
    return permutation(field, d, (1, 0))


def vector_map(field, d, vec):
    """The map k -> H sending 1 to ``vec`` (a coordinate list)."""
    return LinearMap(field, d, 0, 1, [_clean(field, {i: field.coerce(v) for i, v in enumerate(vec)})])


def covector_map(field, d, vec):
    """The map H -> k with e_i -> vec[i]."""
    return LinearMap(field, d, 1, 0, [_clean(field, {0: field.coerce(v)}) for v in vec])


# --- composition and tensor ----------------------------------------------

def compose(g: LinearMap, f: LinearMap) -> LinearMap:
    """g o f."""
    g._check(f)
    if f.out_arity != g.in_arity:
        raise ArityMismatch(f"cannot compose {g.in_arity}->{g.out_arity} after {f.in_arity}->{f.out_arity}")
    if g.is_identity:
        return f
    if f.is_identity:
        return g
    field = f.field
    gcols = g.cols
    cols = []
    for col in f.cols:
        out = {}
        for r, v in col.items():
            for s, w in gcols[r].items():
                out[s] = out.get(s, 0) + w * v
        cols.append(_clean(field, out))
    return LinearMap(field, f.base_dim, f.in_arity, g.out_arity, cols)


def tensor(f: LinearMap, g: LinearMap) -> LinearMap:
    f._check(g)
    d = f.base_dim
    gb = d**g.out_arity
    field = f.field
    cols = []
    for fc in f.cols:
        for gc in g.cols:
            out = {}
            for r1, v1 in fc.items():
                base = r1 * gb
                for r2, v2 in gc.items():
                    out[base + r2] = v1 * v2
            cols.append(_clean(field, out))
    return LinearMap(field, d, f.in_arity + g.in_arity, f.out_arity + g.out_arity, cols,
                     is_identity=f.is_identity and g.is_identity)


def tensor_all(*maps):
    out = maps[0]
    for m in maps[1:]:
        out = tensor(out, m)
    return out


# --- lazy stage evaluation ------------------------------------------------

def _as_stage(stage):
    return stage if isinstance(stage, tuple) else (stage,)


def stage_arity(stage):
    stage = _as_stage(stage)
    return sum(f.in_arity for f in stage), sum(f.out_arity for f in stage)


def apply_stage(stage, vec, field):
    """Apply the tensor product of the factors in ``stage`` to a sparse vector
    without materialising it."""
    stage = _as_stage(stage)
    if len(stage) == 1:
        f = stage[0]
        if f.is_identity:
            return vec
        out = {}
        cols = f.cols
        for i, v in vec.items():
            for r, w in cols[i].items():
                out[r] = out.get(r, 0) + w * v
        return _clean(field, out)
    if all(f.is_identity for f in stage):
        return vec
    d = stage[0].base_dim
    in_sizes = [d**f.in_arity for f in stage]
    out_sizes = [d**f.out_arity for f in stage]
    nf = len(stage)
    out = {}
    for i, v in vec.items():
        parts = [0] * nf
        for j in range(nf - 1, -1, -1):
            i, parts[j] = divmod(i, in_sizes[j])
        terms = {0: v}
        for j in range(nf):
            f = stage[j]
            osz = out_sizes[j]
            if f.is_identity:
                p = parts[j]
                terms = {idx * osz + p: c for idx, c in terms.items()}
                continue
            col = f.cols[parts[j]]
            if not col:
                terms = None
                break
            new = {}
            for idx, c in terms.items():
                base = idx * osz
                for r, w in col.items():
                    new[base + r] = c * w
            terms = new
        if terms:
            for idx, c in terms.items():
                out[idx] = out.get(idx, 0) + c
    return _clean(field, out)


def apply_chain(stages, vec, field):
    for stage in reversed(stages):
        if not vec:
            return vec
        vec = apply_stage(stage, vec, field)
    return vec


def chain(*stages):
    """Materialise ``stages[0] o stages[1] o ... o stages[-1]``."""
    first = _as_stage(stages[0])
    last = _as_stage(stages[-1])
    f0 = first[0]
    field, d = f0.field, f0.base_dim
    in_ar = stage_arity(last)[0]
    out_ar = stage_arity(first)[1]
    prev_in = None
    for st in reversed(stages):
        a, b = stage_arity(st)
        for f in _as_stage(st):
            if f.field != field:
                raise FieldMismatch(f"{f.field.descriptor} vs {field.descriptor}")
            if f.base_dim != d:
                raise ArityMismatch("base dimension mismatch in chain")
        if prev_in is not None and a != prev_in:
            raise ArityMismatch(f"stage expects arity {a}, receives {prev_in}")
        prev_in = b
    cols = [apply_chain(stages, {j: field.one}, field) for j in range(d**in_ar)]
    return LinearMap(field, d, in_ar, out_ar, cols)


# --- subspaces ------------------------------------------------------------

class SubspaceBasis:
    """Subspace of k^n given by a basis in reduced row-echelon form."""

    __slots__ = ("field", "ambient_dim", "vectors", "pivots")

    def __init__(self, field, ambient_dim, vectors, pivots):
        self.field = field
        self.ambient_dim = ambient_dim
        self.vectors = vectors
        self.pivots = pivots

    @classmethod
    def span(cls, field, ambient_dim, vectors):
        from .elim import rref
        pivots, rows = rref(field, [dict(v) for v in vectors], ambient_dim)
        return cls(field, ambient_dim, rows, pivots)

    @property
    def dim(self):
        return len(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def reduce(self, vec):
        """Remainder of ``vec`` after subtracting its projection on the pivots."""
        field = self.field
        out = dict(vec)
        for p, row in zip(self.pivots, self.vectors):
            c = out.get(p)
            if c:
                for k, v in row.items():
                    out[k] = out.get(k, 0) - c * v
        return _clean(field, out)

    def contains(self, vec):
        return not self.reduce(vec)

    def dense(self):
        z = self.field.zero
        return [[row.get(i, z) for i in range(self.ambient_dim)] for row in self.vectors]

    def __eq__(self, other):
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return (self.field == other.field and self.ambient_dim == other.ambient_dim
                and self.pivots == other.pivots and self.vectors == other.vectors)

    __hash__ = None

    def __repr__(self):
        return f"SubspaceBasis(dim={self.dim} in k^{self.ambient_dim}, {self.field.descriptor})"


def kernel_basis(f: Matrix) -> SubspaceBasis:
    from .elim import kernel_vectors
    vecs = kernel_vectors(f.field, f.rows(), f.ncols)
    return SubspaceBasis.span(f.field, f.ncols, vecs)


def image_basis(f: Matrix) -> SubspaceBasis:
    return SubspaceBasis.span(f.field, f.nrows, [c for c in f.cols if c])


def rank(f: Matrix) -> int:
    from .elim import rank as _rank
    return _rank(f.field, f.rows(), f.ncols)


def quotient_dim(Z: SubspaceBasis, B: SubspaceBasis) -> int:
    if Z.field != B.field or Z.ambient_dim != B.ambient_dim:
        raise FieldMismatch("subspaces live in different spaces")
    for i, b in enumerate(B.vectors):
        if not Z.contains(b):
            raise NotContained(f"basis vector {i} of B is not in Z", index=i)
    return Z.dim - B.dim


# --- square-matrix invariants ----------------------------------------------

def _square_dense(f: Matrix):
    if f.nrows != f.ncols or (isinstance(f, LinearMap) and f.in_arity != f.out_arity):
        raise NotSquare(f"{f.nrows}x{f.ncols} matrix is not square")
    return f.to_dense()


def determinant(f: Matrix):
    A = _square_dense(f)
    field = f.field
    n = len(A)
    det = field.one
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        pv = A[c][c]
        det = field.norm(det * pv)
        inv = field.inv(pv)
        for r in range(c + 1, n):
            if A[r][c]:
                m = field.norm(A[r][c] * inv)
                A[r] = [field.norm(x - m * y) for x, y in zip(A[r], A[c])]
    return field.norm(det)


def inverse(f: LinearMap) -> LinearMap:
    A = _square_dense(f)
    field = f.field
    n = len(A)
    aug = [row + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c]), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = field.inv(aug[c][c])
        aug[c] = [field.norm(x * inv) for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                m = aug[r][c]
                aug[r] = [field.norm(x - m * y) for x, y in zip(aug[r], aug[c])]
    rows = [row[n:] for row in aug]
    return LinearMap.from_dense(field, f.base_dim, f.in_arity, f.out_arity, rows)


def char_poly(f: Matrix):
    """Monic characteristic polynomial, coefficients from constant term up.

    Hessenberg reduction followed by the usual recurrence; exact in any field.
    """
    A = _square_dense(f)
    field = f.field
    n = len(A)
    nm = field.norm
    # similarity transform to upper Hessenberg form
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if A[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            A[m], A[piv] = A[piv], A[m]
            for row in A:
                row[m], row[piv] = row[piv], row[m]
        inv = field.inv(A[m][m - 1])
        for i in range(m + 1, n):
            u = nm(A[i][m - 1] * inv)
            if not u:
                continue
            A[i] = [nm(x - u * y) for x, y in zip(A[i], A[m])]
            for row in A:
                row[m] = nm(row[m] + u * row[i])
    # p_k(x) = char poly of leading k x k block
    polys = [[field.one]]
    for k in range(1, n + 1):
        prev = polys[-1]
        p = [field.zero] + prev  # x * p_{k-1}
        for i in range(len(prev)):
            p[i] = nm(p[i] - A[k - 1][k - 1] * prev[i])
        t = field.one
        for i in range(1, k):
            t = nm(t * A[k - i][k - i - 1])
            coef = nm(t * A[k - i - 1][k - 1])
            q = polys[k - i - 1]
            for j in range(len(q)):
                p[j] = nm(p[j] - coef * q[j])
        polys.append(p)
    return polys[-1]


def min_poly(f: Matrix):
    """Monic minimal polynomial via Krylov sequences of the standard basis
    vectors, combined by lcm."""
    from . import poly as P
    A = _square_dense(f)
    field = f.field
    n = len(A)
    result = [field.one]
    for i in range(n):
        v = {i: field.one}
        local = _krylov_annihilator(field, f, v, n)
        result = P.lcm(field, result, local)
    return result


def _krylov_annihilator(field, f, v, n):
    """Least-degree monic p with p(f) v = 0."""
    from .elim import IncrementalSpan
    span = IncrementalSpan(field, n)
    w = v
    k = 0
    while True:
        combo = span.express(w)
        if combo is not None:
            # w = sum combo[j] * f^j v  =>  x^k - sum combo[j] x^j
            p = [field.norm(-combo.get(j, 0)) for j in range(k)] + [field.one]
            return p
        span.add(w, k)
        w = f.apply(w)
        k += 1
