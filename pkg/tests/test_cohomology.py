import random
from functools import reduce

import numpy as np
import pytest

from hopfadj import cohomology as co
from hopfadj.acceptance import run_suite, superline_table_cocycles
from hopfadj.constructions import builtin, cyclic, group_from_spec, symmetric
from hopfadj.errors import (ArityMismatch, CharTwoUnsupported, NotInC1, TooLarge, UnsupportedDegree)
from hopfadj.linalg import LinearMap, SubspaceBasis, identity
from hopfadj.scalars import QQ, FieldSpec

F3, F5 = FieldSpec(3), FieldSpec(5)


# --- dense oracle: numpy kron over object arrays, independent of the sparse engine

def dense(m):
    out = np.zeros((m.nrows, m.ncols), dtype=object)
    for c, col in enumerate(m.cols):
        for r, v in col.items():
            out[r, c] = v
    return out


def dense_stage(stage):
    if isinstance(stage, tuple):
        return reduce(np.kron, [dense(f) for f in stage])
    return dense(stage)


def dense_chain(stages, size):
    if not stages:
        return np.identity(size, dtype=object)
    return reduce(lambda a, b: a.dot(b), [dense_stage(s) for s in stages])


def oracle_column(H, n, k):
    """D_n applied to the k-th elementary cochain, term by term with dense matrices."""
    F, d = H.field, H.dim
    src_offs, _ = co.block_offsets(n, d)
    tgt_offs, nrows = co.block_offsets(n + 1, d)
    blocks = co.cochain_from_vector(H, n, {k: 1})
    out = np.zeros(nrows, dtype=object)
    for t in co.TERMS[n]:
        A, X, Y, B = t.build(H)
        xi = dense(blocks[t.source])
        mid = reduce(np.kron, [m for m in (dense(X) if X is not None else None, xi,
                                            dense(Y) if Y is not None else None) if m is not None])
        res = dense_chain(A, mid.shape[0]).dot(mid).dot(dense_chain(B, mid.shape[1]))
        res = t.coeff * res
        o = tgt_offs[t.target]
        a = co.BLOCKS[n + 1][t.target][0]
        for r in range(res.shape[0]):
            for j in range(res.shape[1]):
                out[o + r * d**a + j] += res[r, j]
    return {i: F.norm(v) for i, v in enumerate(out) if F.norm(v)}


@pytest.mark.parametrize("name,F,n", [("superline", QQ, 1), ("superline", F5, 2), ("kg:c2", QQ, 3),
                                      ("kg:c3", F5, 2), ("fun:c2", QQ, 3), ("fun:c3", F3, 2)])
def test_assembly_matches_dense_oracle(name, F, n):
    H = builtin(name, F)
    D = co.differential_matrix(H, n)
    rng = random.Random(5)
    cols = range(D.ncols) if D.ncols <= 64 else rng.sample(range(D.ncols), 48)
    for k in cols:
        assert D.cols[k] == oracle_column(H, n, k), k


@pytest.mark.parametrize("name,n", [("superline", 2), ("superline", 3), ("kg:s3", 2), ("fun:c3", 3)])
def test_matrix_free_matches_assembly(name, n):
    H = builtin(name, F5)
    D = co.differential_matrix(H, n)
    rng = random.Random(17)
    for _ in range(5):
        v = {k: rng.randint(1, 4) for k in rng.sample(range(D.ncols), 6)}
        blocks = co.cochain_from_vector(H, n, v)
        got = co.cochain_to_vector(H, n + 1, co.apply_differential(H, n, blocks))
        assert got == D.apply(v)


def test_cochain_vector_roundtrip(superline):
    rng = random.Random(3)
    v = {k: rng.randint(-3, 3) or 1 for k in rng.sample(range(co.cochain_dim(3, 4)), 20)}
    assert co.cochain_to_vector(superline, 3, co.cochain_from_vector(superline, 3, v)) == v
    assert co.cochain_dim(3, 4) == 4**4 + 4**4


# --- superline values

def test_superline_c1_and_h1(superline):
    C = co.c1_basis(superline)
    # C^1 is spanned by the single map x -> x, gx -> gx (coordinates out*d + in)
    assert C == SubspaceBasis.span(QQ, 16, [{2 * 4 + 2: 1, 3 * 4 + 3: 1}])
    r = co.cohomology(superline, 1)
    assert (r.dimC, r.dimZ, r.dimH) == (1, 1, 1)


@pytest.mark.parametrize("F", [QQ, F5, FieldSpec(7)])
def test_superline_h2_is_table(F):
    H = builtin("superline", F)
    r = co.cohomology(H, 2, basis=True)
    assert (r.dimZ, r.dimB, r.dimH) == (3, 0, 3)
    table = [co.cochain_to_vector(H, 2, [p]) for p in superline_table_cocycles(F)]
    assert SubspaceBasis.span(F, r.dimC, r.basis) == SubspaceBasis.span(F, r.dimC, table)
    for p in superline_table_cocycles(F):
        assert all(m.is_zero() for m in co.d2(H, p))


def test_superline_h3(superline):
    r = co.cohomology(superline, 3)
    assert (r.dimC, r.dimZ, r.dimB, r.dimH) == (512, 62, 61, 1)
    rb = co.cohomology(superline, 3, basis=True)
    assert (rb.dimZ, rb.dimB, rb.dimH) == (62, 61, 1)


# --- complex property and the mutation that breaks it

@pytest.mark.parametrize("name,F", [("superline", QQ), ("kg:c2", QQ), ("kg:c3", F5),
                                    ("kg:c4", QQ), ("fun:c2", QQ), ("kg:s3", F3), ("fun:s3", F5)])
def test_complex_squares_to_zero(name, F):
    H = builtin(name, F)
    assert co.check_d2d1(H) == 0
    cols = None if H.dim <= 4 else random.Random(0).sample(range(co.cochain_dim(2, H.dim)), 60)
    assert co.check_d3d2(H, cols) == 0


def test_product_of_matrices_is_zero():
    H = builtin("kg:c3", F3)
    D2, D3 = co.differential_matrix(H, 2), co.differential_matrix(H, 3)
    for c in D2.cols:
        assert not D3.apply(c)


def _drop_r_term(monkeypatch):
    terms = [t for t in co.TERMS[3] if "R_ad" not in t.name]
    assert len(terms) == len(co.TERMS[3]) - 1
    monkeypatch.setitem(co.TERMS, 3, terms)


def test_dropping_r_term_breaks_d3d2(monkeypatch):
    _drop_r_term(monkeypatch)
    H = builtin("superline", QQ)
    assert co.check_d3d2(H) > 0


def test_dropping_r_term_fails_complex_suite(monkeypatch):
    _drop_r_term(monkeypatch)
    out = run_suite("complex")
    assert [o.passed for o in out] == [False]


# --- group and function algebras

@pytest.mark.parametrize("g", ["c2", "c3", "s3"])
@pytest.mark.parametrize("F", [QQ, F5])
def test_function_algebras_are_rigid(g, F):
    H = builtin(f"fun:{g}", F)
    assert co.cohomology(H, 1).dimH == 0
    assert co.cohomology(H, 2).dimH == 0


@pytest.mark.parametrize("F", [QQ, F3])
def test_ks3_c1_is_zero(F):
    H = builtin("kg:s3", F)
    assert co.c1_basis(H).dim == 0
    assert co.cohomology(H, 1).dimH == 0


# diagonal a-system dimension and the general Z^2 of kG (computed independently)
DIAG = {("c2", QQ): 0, ("c3", QQ): 0, ("c3", F3): 3, ("c4", QQ): 0, ("c4", F3): 0,
        ("s3", QQ): 3, ("s3", F3): 4, ("s3", F5): 3}


@pytest.mark.parametrize("g,F", list(DIAG))
def test_diagonal_system_matches_general_z2(g, F):
    G = group_from_spec(g)
    a = co.diagonal_2cocycles(G, F)
    assert a.dim == DIAG[(g, F)]
    H = builtin(f"kg:{g}", F)
    r = co.cohomology(H, 2, basis=True)
    assert r.dimZ == a.dim and r.dimB == 0
    lifts = [co.cochain_to_vector(H, 2, [co.lift_diagonal(H, G, co.as_table(G, v, F))]) for v in a.vectors]
    assert SubspaceBasis.span(F, r.dimC, lifts) == SubspaceBasis.span(F, r.dimC, r.basis)


def test_s3_diagonal_over_f3_has_extra_solution():
    # over F_3 the a-system picks up one solution beyond the three rational ones
    G = symmetric(3)
    assert co.diagonal_2cocycles(G, QQ).dim == 3
    assert co.diagonal_2cocycles(G, F3).dim == 4


def test_ks3_h3_over_f3():
    r = co.cohomology(builtin("kg:s3", F3), 3)
    assert (r.dimZ, r.dimB, r.dimH) == (213, 212, 1)


def test_group_3coboundary_is_cocycle():
    G = symmetric(3)
    rng = random.Random(8)
    for F in (QQ, F5):
        a = np.array([[F.norm(rng.randint(-4, 4)) for _ in range(6)] for _ in range(6)], dtype=object)
        assert co.check_group_3cocycle(G, co.group_3coboundary(G, a, F), F)
    c = np.zeros((6, 6, 6), dtype=object)
    c[1, 2, 3] = 1
    assert not co.check_group_3cocycle(G, c, QQ)


# --- errors

def test_errors(superline):
    with pytest.raises(UnsupportedDegree):
        co.cohomology(superline, 4)
    with pytest.raises(UnsupportedDegree):
        co.differential_matrix(superline, 5)
    with pytest.raises(CharTwoUnsupported):
        co.cohomology(builtin("kg:c3", FieldSpec(2)), 2)
    with pytest.raises(CharTwoUnsupported):
        co.diagonal_2cocycles(cyclic(3), FieldSpec(2))
    g_to_1 = LinearMap(QQ, 4, 1, 1, [{}, {0: 1}, {}, {}])
    with pytest.raises(NotInC1):
        co.d1(superline, g_to_1)
    with pytest.raises(ArityMismatch):
        co.d2(superline, identity(QQ, 4))
    with pytest.raises(TooLarge) as e:
        co.cohomology(builtin("kg:s3", QQ), 3)
    assert e.value.details["shape"][1] == co.cochain_dim(3, 6)


def test_d1_of_c1_element(superline):
    f = LinearMap(QQ, 4, 1, 1, [{}, {}, {2: 1}, {3: 1}])
    assert co.d1(superline, f).is_zero()
    with pytest.raises(NotInC1):
        co.d1(superline, LinearMap(QQ, 4, 1, 1, [{}, {}, {2: 1}, {}]))


@pytest.mark.parametrize("g,p", [("s3", None), ("s3", 3), ("s3", 5), ("c3", 3), ("d4", None), ("d4", 3)])
def test_diagonal_dimension_against_sympy_nullity(g, p):
    import sympy
    from conftest import sympy_rank
    G = group_from_spec(g)
    n = G.order
    rows = co.diagonal_system(G)
    M = sympy.Matrix(len(rows), n * n, lambda i, j: rows[i].get(j, 0))
    F = FieldSpec(p) if p else QQ
    assert co.diagonal_2cocycles(G, F).dim == n * n - sympy_rank(M, p)
