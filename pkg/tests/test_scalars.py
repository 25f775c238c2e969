from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hopfadj.errors import FieldMismatch, NotPrime, ParseError
from hopfadj.scalars import QQ, DualField, DualScalar, FieldSpec, dual_mul, field_from_spec, parse_rational

primes = st.sampled_from([2, 3, 5, 7, 11, 13, 101])
rats = st.fractions(max_denominator=50)


def test_descriptors_roundtrip():
    assert field_from_spec("Q") is QQ
    assert field_from_spec("Fp:7") == FieldSpec(7)
    assert FieldSpec(7).descriptor == "Fp:7"
    assert str(QQ) == "Q"


@pytest.mark.parametrize("bad", ["F7", "Fp:", "Fp:x", "Q2", "", 7])
def test_bad_descriptors(bad):
    with pytest.raises(ParseError):
        field_from_spec(bad)


@pytest.mark.parametrize("n", [1, 4, 9, 15])
def test_not_prime(n):
    with pytest.raises(NotPrime) as e:
        FieldSpec(n)
    assert e.value.code == "NotPrime"


def test_parse_rational():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational(" 5 ") == 5
    for bad in ["1/0", "a", "1//2", "1.5"]:
        with pytest.raises(ParseError):
            parse_rational(bad)


def test_coerce_into_fp():
    F = FieldSpec(7)
    assert F.coerce("1/2") == 4
    assert F.coerce(-1) == 6
    with pytest.raises(ParseError):
        F.coerce("1/7")


def test_rational_json():
    assert QQ.to_json(3) == "3/1"
    assert QQ.to_json(Fraction(-1, 2)) == "-1/2"
    assert FieldSpec(5).to_json(7) == 7
    assert QQ.from_json("6/4") == Fraction(3, 2)


@given(rats, rats)
def test_q_field_axioms(a, b):
    F = QQ
    a, b = F.norm(a), F.norm(b)
    assert F.norm(a + b) == F.norm(b + a)
    if b:
        assert F.norm(F.div(a, b) * b) == a
    assert F.from_json(F.to_json(a)) == a


@given(primes, st.integers(-1000, 1000))
def test_fp_inverse(p, a):
    F = FieldSpec(p)
    a = F.norm(a)
    if a:
        assert F.norm(a * F.inv(a)) == 1
    else:
        with pytest.raises(ZeroDivisionError):
            F.inv(a)


@given(rats, rats, rats, rats, rats, rats)
def test_dual_numbers_ring(a0, a1, b0, b1, c0, c1):
    x, y, z = DualScalar(a0, a1), DualScalar(b0, b1), DualScalar(c0, c1)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert dual_mul(x, y) == y * x


def test_t_squared_is_zero():
    t = DualScalar(0, 1)
    assert not (t * t)
    assert t * 3 == DualScalar(0, 3)


def test_dual_field_mismatch():
    with pytest.raises(FieldMismatch):
        DualScalar(1, 1, FieldSpec(3)) + DualScalar(1, 1, FieldSpec(5))


def test_dual_field_json():
    D = DualField(FieldSpec(5))
    x = DualScalar(2, 3, FieldSpec(5))
    assert D.from_json(D.to_json(x)) == x
    assert D.norm(4) == DualScalar(4, 0, FieldSpec(5))
