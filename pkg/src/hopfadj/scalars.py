"""Exact scalars: the rationals, prime fields, and dual numbers over either.

Scalars are plain Python numbers: ``int``/``Fraction`` over Q and ``int``
residues in ``0..p-1`` over F_p.  A :class:`FieldSpec` supplies the
normalisation and inversion rules.  Dual numbers ``a0 + a1 t`` with
``t**2 = 0`` are :class:`DualScalar` instances.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import FieldMismatch, NotPrime, ParseError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Q (``p is None``) or the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime", n=self.p)

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def is_char_two(self) -> bool:
        return self.p == 2

    @property
    def descriptor(self) -> str:
        return "Q" if self.p is None else f"Fp:{self.p}"

    def __str__(self):
        return self.descriptor

    zero = 0
    one = 1

    def norm(self, x):
        if self.p is not None:
            return int(x) % self.p
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, int):
            return x
        raise TypeError(f"not a rational scalar: {x!r}")

    def coerce(self, x):
        """Map an int, Fraction or ``"num/den"`` string into the field."""
        if isinstance(x, str):
            x = parse_rational(x)
        if isinstance(x, bool):
            x = int(x)
        if self.p is None:
            return self.norm(Fraction(x))
        x = Fraction(x)
        num = x.numerator % self.p
        den = x.denominator % self.p
        if den == 0:
            raise ParseError(f"{x} has no image in F_{self.p}")
        return num * pow(den, -1, self.p) % self.p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p is not None:
            return pow(x, -1, self.p)
        return self.norm(1 / Fraction(x))

    def div(self, x, y):
        return self.norm(x * self.inv(y))

    def to_json(self, x):
        if self.p is not None:
            return int(x)
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"

    def from_json(self, v):
        return self.coerce(v)


QQ = FieldSpec()


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
        raise ParseError(f"malformed rational {s!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError as exc:
        raise ParseError(f"zero denominator in {s!r}") from exc


_FP = re.compile(r"Fp:(\d+)")


def field_from_spec(spec) -> FieldSpec:
    """Parse ``"Q"`` or ``"Fp:<p>"``; FieldSpec instances pass through."""
    if isinstance(spec, FieldSpec):
        return spec
    if not isinstance(spec, str):
        raise ParseError(f"field descriptor must be a string, got {spec!r}")
    s = spec.strip()
    if s == "Q":
        return QQ
    m = _FP.fullmatch(s)
    if not m:
        raise ParseError(f"malformed field descriptor {spec!r}; expected 'Q' or 'Fp:<p>'")
    return FieldSpec(int(m.group(1)))


@dataclass(frozen=True, eq=False)
class DualScalar:
    """``a0 + a1 t`` in k[t]/(t^2)."""

    a0: object
    a1: object
    field: FieldSpec = QQ

    def __post_init__(self):
        object.__setattr__(self, "a0", self.field.norm(self.a0))
        object.__setattr__(self, "a1", self.field.norm(self.a1))

    def _lift(self, y):
        if isinstance(y, DualScalar):
            if y.field != self.field:
                raise FieldMismatch(f"{self.field} vs {y.field}")
            return y
        if isinstance(y, (int, Fraction)):
            return DualScalar(y, 0, self.field)
        return NotImplemented

    def __add__(self, y):
        y = self._lift(y)
        if y is NotImplemented:
            return y
        return DualScalar(self.a0 + y.a0, self.a1 + y.a1, self.field)

    __radd__ = __add__

    def __neg__(self):
        return DualScalar(-self.a0, -self.a1, self.field)

    def __sub__(self, y):
        y = self._lift(y)
        if y is NotImplemented:
            return y
        return DualScalar(self.a0 - y.a0, self.a1 - y.a1, self.field)

    def __rsub__(self, y):
        return (-self) + y

    def __mul__(self, y):
        y = self._lift(y)
        if y is NotImplemented:
            return y
        return DualScalar(self.a0 * y.a0, self.a0 * y.a1 + self.a1 * y.a0, self.field)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.a0) or bool(self.a1)

    def __eq__(self, y):
        y = self._lift(y) if not isinstance(y, DualScalar) else y
        if y is NotImplemented:
            return False
        return self.field == y.field and self.a0 == y.a0 and self.a1 == y.a1

    def __hash__(self):
        return hash((self.a0, self.a1, self.field))

    def __repr__(self):
        return f"DualScalar({self.a0}, {self.a1}, {self.field})"

    def __str__(self):
        return f"{self.a0} + {self.a1}t"


def dual_mul(x: DualScalar, y: DualScalar) -> DualScalar:
    if x.field != y.field:
        raise FieldMismatch(f"{x.field} vs {y.field}")
    return x * y


@dataclass(frozen=True)
class DualField:
    """k[t]/(t^2) over a base field, with the same interface as FieldSpec
    where linear maps need it (no inversion: it is not a field)."""

    base: FieldSpec

    @property
    def zero(self):
        return DualScalar(0, 0, self.base)

    @property
    def one(self):
        return DualScalar(1, 0, self.base)

    @property
    def descriptor(self):
        return f"{self.base.descriptor}[t]/(t^2)"

    def norm(self, x):
        if isinstance(x, DualScalar):
            return x
        return DualScalar(x, 0, self.base)

    def coerce(self, x):
        if isinstance(x, DualScalar):
            return x
        return DualScalar(self.base.coerce(x), 0, self.base)

    def to_json(self, x):
        return [self.base.to_json(x.a0), self.base.to_json(x.a1)]

    def from_json(self, v):
        return DualScalar(self.base.coerce(v[0]), self.base.coerce(v[1]), self.base)
