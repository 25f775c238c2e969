import random
from itertools import product

import numpy as np
import pytest

from hopfadj import cohomology as co
from hopfadj.constructions import cyclic, group_from_spec, symmetric
from hopfadj.errors import NotACocycle, NotAGroupoid, UnsupportedDegree
from hopfadj.groupoid import (FiniteGroupoid, boundary_matrix, check_rack_2cocycle, check_rack_3cocycle,
                              cochain_as_array, conjugate_groupoid, groupoid_cocycle_space, rack_2cocycle_from,
                              rack_3cocycle_from)
from hopfadj.scalars import QQ, FieldSpec

FIELDS = {"Q": QQ, "F2": FieldSpec(2), "F3": FieldSpec(3), "F5": FieldSpec(5), "F7": FieldSpec(7)}


def matmul_zero(A, B):
    return all(not A.apply(c) for c in B.cols)


@pytest.mark.parametrize("g", ["c2", "c3", "c4", "s3"])
@pytest.mark.parametrize("F", [QQ, FieldSpec(2), FieldSpec(3)])
def test_boundary_squares_to_zero(g, F):
    Gd = conjugate_groupoid(group_from_spec(g))
    for n in range(3):
        assert matmul_zero(boundary_matrix(Gd, n, F), boundary_matrix(Gd, n + 1, F))


@pytest.mark.parametrize("fname,dims", [("Q", [3, 3, 33]), ("F2", [3, 5, 33]), ("F3", [3, 4, 33]),
                                        ("F5", [3, 3, 33]), ("F7", [3, 3, 33])])
def test_s3_cocycle_dimensions(fname, dims):
    Gd = conjugate_groupoid(symmetric(3))
    assert [groupoid_cocycle_space(Gd, n, FIELDS[fname]).dim for n in (1, 2, 3)] == dims


@pytest.mark.parametrize("g", ["c3", "s3", "d4"])
@pytest.mark.parametrize("F", [QQ, FieldSpec(3), FieldSpec(5)])
def test_degree2_space_is_diagonal_system(g, F):
    G = group_from_spec(g)
    sp = groupoid_cocycle_space(conjugate_groupoid(G), 2, F)
    assert sp == co.diagonal_2cocycles(G, F)


def test_conjugate_groupoid_structure():
    G = symmetric(3)
    Gd = conjugate_groupoid(G)
    assert len(Gd.objects) == 6 and Gd.n_morphisms == 36
    for x, y in product(range(6), repeat=2):
        f = x * 6 + y
        assert Gd.source[f] == x and Gd.target[f] == G.conj(x, y)
        assert Gd.inverse[f] == G.conj(x, y) * 6 + G.inverse[y]
    assert len(Gd.strings(2)) == 6 * 6 * 6


def test_bad_groupoids():
    with pytest.raises(NotAGroupoid):
        FiniteGroupoid(["a"], [0, 0], [0, 0], {(0, 0): 0, (0, 1): 1, (1, 0): 1})  # missing (1,1)
    with pytest.raises(NotAGroupoid):
        FiniteGroupoid(["a"], [0], [1], {})
    # a monoid that is not a group: {1, z} with z z = z
    with pytest.raises(NotAGroupoid):
        FiniteGroupoid(["a"], [0, 0], [0, 0], {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1})
    with pytest.raises(UnsupportedDegree):
        boundary_matrix(conjugate_groupoid(cyclic(2)), 4, QQ)
    with pytest.raises(UnsupportedDegree):
        groupoid_cocycle_space(conjugate_groupoid(cyclic(2)), 4, QQ)


def _extension_associative(Gd, F, c):
    """(f0, a)(f1, b) = (f0 f1, a + b + c(f0, f1)); associativity reduces to the scalar parts."""
    for f in range(Gd.n_morphisms):
        for g in Gd.out_of[Gd.target[f]]:
            for h in Gd.out_of[Gd.target[g]]:
                fg, gh = Gd.comp[(f, g)], Gd.comp[(g, h)]
                if F.norm(c(f, g) + c(fg, h) - c(g, h) - c(f, gh)):
                    return False
    return True


def test_extension_by_degree3_cocycle_is_associative():
    F = FieldSpec(3)
    Gd = conjugate_groupoid(cyclic(3))
    sp = groupoid_cocycle_space(Gd, 3, F)
    assert sp.dim > 0
    idx = Gd.string_index(2)
    for v in sp.vectors:
        assert _extension_associative(Gd, F, lambda f0, f1: v.get(idx[(Gd.source[f0], f0, f1)], 0))


def test_extension_fails_for_non_cocycle():
    F = FieldSpec(3)
    Gd = conjugate_groupoid(cyclic(3))
    idx = Gd.string_index(2)
    sp = groupoid_cocycle_space(Gd, 3, F)
    k = next(k for k in range(len(idx)) if not sp.contains({k: 1}))
    assert not _extension_associative(Gd, F, lambda f0, f1: 1 if idx[(Gd.source[f0], f0, f1)] == k else 0)


def test_one_cocycles_are_additive_functions():
    # a(x0, f) := alpha(f) is a degree-2 cocycle iff alpha(fg) = alpha(f) + alpha(g) on composable pairs
    F = FieldSpec(2)
    G = cyclic(4)
    Gd = conjugate_groupoid(G)
    sp = groupoid_cocycle_space(Gd, 2, F)
    n = G.order
    # G abelian: every morphism (x, a^y) is a loop at x and composes by adding y
    parity = {x * n + y: y % 2 for x in range(n) for y in range(n)}
    parity_at_0 = {f: v if f // n == 0 else 0 for f, v in parity.items()}
    indicator = {x * n + y: int(y == 1) for x in range(n) for y in range(n)}
    seen = set()
    for alpha in (parity, parity_at_0, indicator):
        is_add = all(F.norm(alpha[Gd.comp[(f, g)]] - alpha[f] - alpha[g]) == 0
                     for f in range(Gd.n_morphisms) for g in Gd.out_of[Gd.target[f]])
        assert sp.contains({f: v for f, v in alpha.items() if v}) == is_add
        seen.add(is_add)
    assert seen == {True, False}


def test_rack_2cocycles_from_diagonal_solutions():
    G = symmetric(3)
    for F in (QQ, FieldSpec(3), FieldSpec(5)):
        for v in co.diagonal_2cocycles(G, F).vectors:
            psi = rack_2cocycle_from(G, co.as_table(G, v, F), F)
            assert check_rack_2cocycle(G, psi, F)
    zero = np.zeros((6, 6), dtype=object)
    assert check_rack_2cocycle(G, rack_2cocycle_from(G, zero, QQ), QQ)


def test_rack_2cocycle_rejects_bad_input():
    G = symmetric(3)
    a = np.zeros((6, 6), dtype=object)
    a[1, 2] = 1
    with pytest.raises(NotACocycle) as e:
        rack_2cocycle_from(G, a, QQ)
    assert len(e.value.details["triple"]) == 3


def test_random_psi_fails_rack_check():
    G = symmetric(3)
    F = FieldSpec(7)
    rng = random.Random(4)
    fails = 0
    for _ in range(10):
        psi = np.array([[rng.randrange(7) for _ in range(6)] for _ in range(6)], dtype=object)
        brute = all(F.norm(psi[x, y] + psi[G.conj(x, y), z] - psi[x, z] - psi[G.conj(x, z), G.conj(y, z)]) == 0
                    for x, y, z in product(range(6), repeat=3))
        assert check_rack_2cocycle(G, psi, F) == brute
        fails += not brute
    assert fails == 10


def test_rack_3cocycles():
    G = symmetric(3)
    rng = random.Random(6)
    for F in (QQ, FieldSpec(5)):
        for _ in range(3):
            a = np.array([[F.norm(rng.randint(-5, 5)) for _ in range(6)] for _ in range(6)], dtype=object)
            theta = rack_3cocycle_from(G, co.group_3coboundary(G, a, F), F)
            assert check_rack_3cocycle(G, theta, F)
    const = np.full((6, 6, 6), 7, dtype=object)
    assert not rack_3cocycle_from(G, const, QQ).any()
    bad = np.zeros((6, 6, 6), dtype=object)
    bad[1, 2, 3] = 1
    with pytest.raises(NotACocycle) as e:
        rack_3cocycle_from(G, bad, QQ)
    assert len(e.value.details["quadruple"]) == 4


def test_degree3_cocycles_give_rack_3cocycles():
    G = symmetric(3)
    F = FieldSpec(3)
    Gd = conjugate_groupoid(G)
    for v in groupoid_cocycle_space(Gd, 3, F).vectors[:8]:
        c = cochain_as_array(G, Gd, 3, v, F)
        assert check_rack_3cocycle(G, rack_3cocycle_from(G, c, F), F)
