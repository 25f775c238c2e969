import random

import pytest
import sympy

from hopfadj.constructions import builtin
from hopfadj.scalars import QQ, FieldSpec

F3, F5, F7 = FieldSpec(3), FieldSpec(5), FieldSpec(7)


def to_sympy(m):
    """Dense sympy Matrix of a hopfadj Matrix (entries as Rationals / ints)."""
    return sympy.Matrix(m.nrows, m.ncols, lambda r, c: sympy.Rational(m.cols[c].get(r, 0)))


def sympy_rank(M, p=None):
    """Rank over Q (p None) or GF(p) via sympy's domain matrices."""
    from sympy import GF
    from sympy.polys.matrices import DomainMatrix
    dm = DomainMatrix.from_Matrix(M)
    return dm.convert_to(GF(p)).rank() if p else dm.to_field().rank()


def random_dense(rng, m, n, field, density=0.5, lo=-3, hi=3):
    rows = []
    for _ in range(m):
        rows.append([field.norm(rng.randint(lo, hi)) if rng.random() < density else 0 for _ in range(n)])
    return rows


@pytest.fixture(scope="session")
def superline():
    return builtin("superline", QQ)


@pytest.fixture(scope="session")
def superline_f5():
    return builtin("superline", F5)


@pytest.fixture
def rng():
    return random.Random(1234)
