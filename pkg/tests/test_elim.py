import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hopfadj import _elim_py, elim
from hopfadj.scalars import QQ, FieldSpec

from conftest import random_dense

compiled = pytest.mark.skipif(elim._elim_c is None, reason="compiled kernel not built")


def test_backend_selected_at_import():
    assert elim.BACKEND in ("cython", "python")


@compiled
@given(st.sampled_from([2, 3, 5, 7, 31]), st.integers(1, 30), st.integers(1, 30), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_compiled_matches_python(p, m, n, seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(-p, p, size=(m, n), dtype=np.int64)
    A[rng.random((m, n)) < 0.5] = 0
    B, C = A.copy(), A.copy()
    assert _elim_py.rref_modp_dense(B, p) == elim._elim_c.rref_modp_dense(C, p)
    assert (B == C).all()


@given(st.sampled_from([QQ, FieldSpec(3), FieldSpec(5)]), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_sparse_and_dense_paths_agree(F, seed):
    rng = random.Random(seed)
    dense = random_dense(rng, 12, 10, F, 0.3)
    rows = [{j: v for j, v in enumerate(r) if v} for r in dense]
    piv, red = elim.rref(F, rows, 10)
    # canonical: each row has a unit pivot, zero in other pivot columns
    for i, (pc, r) in enumerate(zip(piv, red)):
        assert r[pc] == 1 and min(r) == pc
        for pc2 in piv[:i] + piv[i + 1:]:
            assert pc2 not in r
    if F.p:
        A = np.array(dense, dtype=np.int64)
        assert _elim_py.rref_modp_dense(A, F.p) == piv
        sp, _ = _elim_py.rref_modp_sparse([dict(r) for r in rows], F.p)
        assert sorted(sp) == piv


def test_rank_with_block_split_matches_whole():
    F = FieldSpec(7)
    rows = [{0: 1, 1: 2}, {0: 2, 1: 4}, {5: 1, 6: 3}, {6: 1}, {}]
    assert elim.rank(F, rows, 8) == 3


def test_kernel_vectors():
    F = QQ
    rows = [{0: 1, 1: 1}, {1: 1, 2: -1}]
    ker = elim.kernel_vectors(F, rows, 3)
    assert len(ker) == 1
    v = ker[0]
    assert all(sum(r.get(k, 0) * x for k, x in v.items()) == 0 for r in rows)


def test_use_backend_roundtrip():
    before = elim.BACKEND
    try:
        elim.use_backend("python")
        assert elim.rref(FieldSpec(3), [{0: 1, 1: 1}] * 40, 2)[0] == [0]
    finally:
        elim.use_backend(before)
    with pytest.raises(ValueError):
        elim.use_backend("fortran")


def test_incremental_span_tracks_combinations():
    F = FieldSpec(5)
    sp = elim.IncrementalSpan(F, 3)
    vs = [{0: 1, 1: 2}, {1: 1, 2: 1}, {0: 1, 1: 3, 2: 1}]
    sp.add(vs[0], "a")
    sp.add(vs[1], "b")
    assert sp.express(vs[2]) == {"a": 1, "b": 1}
    assert sp.express({2: 1}) is None
    with pytest.raises(ValueError):
        sp.add(vs[2], "c")
